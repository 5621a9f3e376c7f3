//! Throughput of the chaotic generator against the Box–Muller reference.
//!
//! ```text
//! cargo run --release --example bench -- [q'] [count]
//! ```

use std::time::Instant;

use qchaos::{ChaoticGenerator, Gbmm, MapConfig, QSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: f64 = args.first().map_or(Ok(1.5), |s| s.parse())?;
    let count: usize = args.get(1).map_or(Ok(10_000_000), |s| s.parse())?;
    let spec = QSpec::new(q)?;

    let mut gen = ChaoticGenerator::new(spec, MapConfig::default(), 0.1, 1.0, 1)?;
    let start = Instant::now();
    let mut acc = 0.0;
    for _ in 0..count {
        acc += gen.step().0;
    }
    let chaotic = count as f64 / start.elapsed().as_secs_f64();

    let mut gbmm = Gbmm::seeded(spec, 1);
    let start = Instant::now();
    for _ in 0..count {
        acc += gbmm.next_pair().map_or(0.0, |p| p.0);
    }
    let reference = count as f64 / start.elapsed().as_secs_f64();

    println!("chaotic {:.3e} pairs/s", chaotic);
    println!("gbmm    {:.3e} pairs/s", reference);
    println!("ratio   {:.2}", chaotic / reference);
    std::hint::black_box(acc);
    Ok(())
}
