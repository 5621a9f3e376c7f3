//! KS and Anderson–Darling goodness-of-fit of one chaotic run against the
//! exact q-Gaussian, with Monte-Carlo p-values.
//!
//! ```text
//! cargo run --release --example gof_check -- [q'] [count] [n_null]
//! ```

use qchaos::stats::{gof_test, GofKind};
use qchaos::{ChaoticGenerator, MapConfig, QSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: f64 = args.first().map_or(Ok(1.5), |s| s.parse())?;
    let count: usize = args.get(1).map_or(Ok(10_000), |s| s.parse())?;
    let n_null: usize = args.get(2).map_or(Ok(999), |s| s.parse())?;

    let spec = QSpec::new(q)?;
    let mut gen = ChaoticGenerator::new(spec, MapConfig::default(), 0.1, 1.0, 1)?;
    let xs: Vec<f64> = (0..count).map(|_| gen.step().0).collect();
    let (ks, ad) = gof_test(&xs, q, n_null, 20_240_601)?;
    for r in [ks, ad] {
        println!(
            "{}: statistic {:.4}  p = {:.4}  pass at 0.05: {}",
            if r.kind == GofKind::Ks { "KS" } else { "AD" },
            r.statistic, r.p_value, r.passes(0.05)
        );
    }
    Ok(())
}
