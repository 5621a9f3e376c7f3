//! Fit the power-law tail of a heavy-tailed run and compare the slope of
//! ln P(|X| > x) with -nu.
//!
//! ```text
//! cargo run --release --example tail_index -- [q'] [count]
//! ```

use qchaos::distribution::ccdf;
use qchaos::stats::tail_slope;
use qchaos::{ChaoticGenerator, MapConfig, QSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: f64 = args.first().map_or(Ok(1.9), |s| s.parse())?;
    let count: usize = args.get(1).map_or(Ok(2_000_000), |s| s.parse())?;
    let spec = QSpec::new(q)?;
    let nu = spec.nu.filter(|v| v.is_finite()).ok_or("tail index needs 1 < q' < 3")?;

    let mut gen = ChaoticGenerator::new(spec, MapConfig::default(), 0.1, 1.0, 1)?;
    let xs: Vec<f64> = (0..count).map(|_| gen.step().0).collect();
    let slope = tail_slope(&xs, 1e-4, 1e-2)?;
    println!("q' = {q}: fitted slope {slope:.4}, -nu = {:.4}", -nu);

    println!("     x   empirical P(|X|>x)   exact");
    for &x in &[2.0, 5.0, 10.0, 20.0, 50.0] {
        let emp = xs.iter().filter(|v| v.abs() > x).count() as f64 / count as f64;
        println!("{x:>6}   {emp:<20.3e} {:.3e}", 2.0 * ccdf(q, x)?);
    }
    Ok(())
}
