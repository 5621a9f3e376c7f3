//! Best-of-trials KS/AD table over a grid of q' values.
//!
//! ```text
//! cargo run --release --example trial_table -- [d l c] [trials] [samples]
//! ```

use qchaos::stats::{run_trial_table, TrialOptions};
use qchaos::MapConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, default: usize| -> usize {
        args.get(i).and_then(|s| s.parse().ok()).unwrap_or(default)
    };
    let cfg = MapConfig::new(num(0, 8) as u32, num(1, 2) as u32, num(2, 1) as u32, 5e-6)?;
    let opts = TrialOptions {
        trials: num(3, 100),
        samples_per_trial: num(4, 10_000),
        ..TrialOptions::default()
    };
    let q_list = [-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.3, 2.4, 2.5, 2.6, 2.7, 2.8, 2.9];
    let start = std::time::Instant::now();
    let table = run_trial_table(&q_list, &cfg, &opts)?;
    println!("q'     nu        best p(AD)  best p(KS)  mean p(AD)  mean p(KS)");
    for r in &table.rows {
        let nu = r.nu.map_or("inf".to_string(), |v| format!("{v:.3}"));
        println!(
            "{:<6} {:<9} {:<11.6} {:<11.6} {:<11.6} {:.6}",
            r.q_out, nu, r.best_p_ad, r.best_p_ks, r.mean_p_ad, r.mean_p_ks
        );
    }
    eprintln!("{} trials x {} samples in {:.1?}", table.trials, table.samples_per_trial, start.elapsed());
    Ok(())
}
