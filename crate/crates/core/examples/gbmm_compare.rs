//! Compare the chaotic generator with the generalized Box–Muller reference
//! sampler through a two-sample KS test at several q' values.
//!
//! ```text
//! cargo run --release --example gbmm_compare -- [count]
//! ```

use qchaos::stats::two_sample_ks;
use qchaos::{ChaoticGenerator, Gbmm, MapConfig, QSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count: usize = std::env::args().nth(1).map_or(Ok(20_000), |s| s.parse())?;
    println!("q'     D          p");
    for &q in &[-0.9, 0.1, 1.1, 1.6, 2.1, 2.6] {
        let spec = QSpec::new(q)?;
        let chaotic = ChaoticGenerator::new(spec, MapConfig::default(), 0.1, 1.0, 1)?.batch(count);
        let gbmm = Gbmm::seeded(spec, 42).batch(count);
        let (d, p) = two_sample_ks(&chaotic.xi, &gbmm.xi)?;
        println!("{q:<6} {d:<10.6} {p:.4}");
    }
    Ok(())
}
