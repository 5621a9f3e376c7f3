//! Dynamical diagnostics of the radial map: Lyapunov exponent against
//! c·ln l, and normalized autocorrelations of the output sequence.
//!
//! ```text
//! cargo run --release --example diagnostics -- [q'] [count]
//! ```

use qchaos::stats::{lyapunov, normalized_autocorrelations};
use qchaos::{ChaoticGenerator, MapConfig, QSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: f64 = args.first().map_or(Ok(0.6), |s| s.parse())?;
    let count: usize = args.get(1).map_or(Ok(1_000_000), |s| s.parse())?;
    let spec = QSpec::new(q)?;

    println!("Lyapunov exponent after 10^6 steps");
    for &(l, c) in &[(2u32, 1u32), (3, 1), (2, 6)] {
        let cfg = MapConfig::new(8, l, c, 5e-6)?;
        let lambda = lyapunov(spec.q_int, &cfg, 1.0, 1_000_000)?;
        let expected = c as f64 * (l as f64).ln();
        println!("  l={l} c={c}: {lambda:.5}  (c ln l = {expected:.5})");
    }

    let mut gen = ChaoticGenerator::new(spec, MapConfig::default(), 0.1, 1.0, 1)?;
    let xs: Vec<f64> = (0..count).map(|_| gen.step().0).collect();
    match normalized_autocorrelations(&xs, q, 10) {
        Ok(rho) => {
            println!("C(m)/C(0), N = {count}  (1/sqrt(N) = {:.1e})", 1.0 / (count as f64).sqrt());
            for (m, r) in rho.iter().enumerate().skip(1) {
                println!("  m={m:<2} {r:+.2e}");
            }
        }
        Err(e) => println!("autocorrelation not normalizable: {e}"),
    }
    Ok(())
}
