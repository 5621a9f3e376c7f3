//! Generate q-Gaussian pairs with the chaotic generator and print summary
//! statistics next to the exact values.
//!
//! ```text
//! cargo run --release --example gen_samples -- [q'] [count]
//! ```

use qchaos::distribution::summary;
use qchaos::stats::mean_variance;
use qchaos::{ChaoticGenerator, MapConfig, QSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: f64 = args.first().map_or(Ok(1.5), |s| s.parse())?;
    let count: usize = args.get(1).map_or(Ok(100_000), |s| s.parse())?;

    let spec = QSpec::new(q)?;
    let mut gen = ChaoticGenerator::new(spec, MapConfig::default(), 0.1, 1.0, 1)?;
    let batch = gen.batch(count);

    println!("q' = {q}  (internal q = {:.6})", spec.q_int);
    println!("first pairs:");
    for (x, y) in batch.xi.iter().zip(&batch.eta).take(5) {
        println!("  {x:>22.16e} {y:>22.16e}");
    }

    let exact = summary(q)?;
    let (mean, var) = mean_variance(&batch.xi)?;
    println!("support     [{}, {}]", exact.support_lo, exact.support_hi);
    println!("nu          {}", exact.nu.map_or("inf".into(), |v| format!("{v:.4}")));
    println!("sample mean {mean:.5}");
    match exact.variance {
        Some(v) => println!("variance    {var:.5} (exact {v:.5})"),
        None => println!("variance    {var:.5} (exact: infinite)"),
    }
    Ok(())
}
