//! Goodness-of-fit and dynamical diagnostics.
//!
//! The goodness-of-fit statistic is the sup-weighted EDF distance
//!
//! ```text
//! Z = sqrt(M) * max_n max(|n/M - F(x_(n))|, |F(x_(n)) - (n-1)/M|) * sqrt(psi(F(x_(n))))
//! ```
//!
//! with `psi = 1` (Kolmogorov-Smirnov) or `psi(u) = 1/(u(1-u))` (the
//! Anderson-Darling weight, with `u` clamped to `[1/(2M), 1 - 1/(2M)]`).
//! P-values come from Monte-Carlo null simulation with the add-one estimator
//! `(1 + #{null >= observed}) / (n_null + 1)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::{cdf, quantile, variance};
use crate::generator::{substream_seed, ChaoticGenerator, Gbmm, QSpec, Seeds, UniformStream};
use crate::maps::{log_abs_derivative, z_map_derivative, z_map_unchecked, MapConfig};
use crate::{Error, Result};

/// Default number of null replications.
pub const DEFAULT_N_NULL: usize = 999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GofKind {
    #[serde(rename = "KS")]
    Ks,
    #[serde(rename = "AD")]
    Ad,
}

impl GofKind {
    pub fn weight(self) -> Weight {
        match self {
            GofKind::Ks => Weight::One,
            GofKind::Ad => Weight::Anderson,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `psi(u) = 1`
    One,
    /// `psi(u) = 1 / (u (1 - u))`
    Anderson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    pub kind: GofKind,
    pub statistic: f64,
    pub p_value: f64,
    pub n_samples: usize,
    pub n_null: usize,
}

impl GofResult {
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value > alpha
    }
}

/// Sup-weighted EDF statistic of `sorted` against `cdf_fn`.
pub fn sup_weighted_statistic<F>(sorted: &[f64], cdf_fn: F, weight: Weight) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if sorted.is_empty() {
        return Err(Error::EmptySample);
    }
    let u: Vec<f64> = sorted.iter().map(|&x| cdf_fn(x)).collect();
    Ok(statistic_from_uniforms(&u, weight))
}

/// The statistic for ascending probability-integral-transformed values
/// `u_(n) = F(x_(n))`.
pub fn statistic_from_uniforms(sorted_u: &[f64], weight: Weight) -> f64 {
    let (ks, ad) = both_statistics(sorted_u);
    match weight {
        Weight::One => ks,
        Weight::Anderson => ad,
    }
}

/// `(KS, AD)` statistics computed in one pass.
pub fn both_statistics(sorted_u: &[f64]) -> (f64, f64) {
    let m = sorted_u.len();
    if m == 0 {
        return (0.0, 0.0);
    }
    let mf = m as f64;
    let floor = 0.5 / mf;
    let mut ks = 0.0f64;
    let mut ad = 0.0f64;
    for (i, &u) in sorted_u.iter().enumerate() {
        let above = (i + 1) as f64 / mf - u;
        let below = u - i as f64 / mf;
        let dev = above.abs().max(below.abs());
        ks = ks.max(dev);
        let uc = u.clamp(floor, 1.0 - floor);
        ad = ad.max(dev / (uc * (1.0 - uc)).sqrt());
    }
    let root = mf.sqrt();
    (root * ks, root * ad)
}

fn sort_floats(v: &mut [f64]) {
    v.sort_unstable_by(f64::total_cmp);
}

/// Sorted null statistics for samples of size `m` from a continuous law.
///
/// Both statistics depend on the data only through `F(x)`, which is uniform
/// under the null whatever the q-Gaussian parameter, so the null sets are
/// drawn directly as uniforms. Replication `r` uses its own substream of
/// `seed`, which keeps the result independent of thread scheduling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullDistribution {
    pub m: usize,
    pub ks: Vec<f64>,
    pub ad: Vec<f64>,
}

/// Keeps null replications apart from trial streams sharing a master seed.
const NULL_DOMAIN: u64 = 0x6E75_6C6C_6469_7374;

fn replication_seed(seed: u64, r: u64) -> u64 {
    substream_seed(seed ^ NULL_DOMAIN, r)
}

impl NullDistribution {
    pub fn simulate(m: usize, n_null: usize, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptySample);
        }
        let pairs: Vec<(f64, f64)> = (0..n_null as u64)
            .into_par_iter()
            .map(|r| {
                let mut u: Vec<f64> = UniformStream::new(replication_seed(seed, r)).take(m).collect();
                sort_floats(&mut u);
                both_statistics(&u)
            })
            .collect();
        let (mut ks, mut ad): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        sort_floats(&mut ks);
        sort_floats(&mut ad);
        Ok(NullDistribution { m, ks, ad })
    }

    pub fn n_null(&self) -> usize {
        self.ks.len()
    }

    pub fn p_value(&self, kind: GofKind, observed: f64) -> f64 {
        let null = match kind {
            GofKind::Ks => &self.ks,
            GofKind::Ad => &self.ad,
        };
        let below = null.partition_point(|&s| s < observed);
        (1 + null.len() - below) as f64 / (null.len() + 1) as f64
    }

    /// Tests already-sorted probability-integral-transformed values.
    pub fn test_uniforms(&self, sorted_u: &[f64]) -> (GofResult, GofResult) {
        let (ks, ad) = both_statistics(sorted_u);
        let mk = |kind, statistic| GofResult {
            kind,
            statistic,
            p_value: self.p_value(kind, statistic),
            n_samples: sorted_u.len(),
            n_null: self.n_null(),
        };
        (mk(GofKind::Ks, ks), mk(GofKind::Ad, ad))
    }
}

/// Probability-integral transform against the q-Gaussian, sorted.
pub fn pit_sorted(q_out: f64, samples: &[f64]) -> Result<Vec<f64>> {
    let mut u = samples.iter().map(|&x| cdf(q_out, x)).collect::<Result<Vec<_>>>()?;
    sort_floats(&mut u);
    Ok(u)
}

/// KS and AD tests of `samples` against the q-Gaussian with Monte-Carlo
/// p-values from `n_null` replications.
pub fn gof_test(samples: &[f64], q_out: f64, n_null: usize, seed: u64) -> Result<(GofResult, GofResult)> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let null = NullDistribution::simulate(samples.len(), n_null, seed)?;
    Ok(null.test_uniforms(&pit_sorted(q_out, samples)?))
}

/// Monte-Carlo p-value of `observed` for samples of size `m` from the
/// q-Gaussian `spec`.
///
/// Each of the `n_null` null sets is drawn through the q-Gaussian quantile
/// function applied to a [`UniformStream`], transformed back through the CDF
/// and scored with the same statistic.
pub fn mc_p_value(
    spec: &QSpec,
    m: usize,
    observed: f64,
    kind: GofKind,
    n_null: usize,
    seed: u64,
) -> Result<f64> {
    if n_null < 99 {
        return Err(Error::domain(format!("n_null must be >= 99, got {n_null}")));
    }
    if m == 0 {
        return Err(Error::EmptySample);
    }
    let q_out = spec.q_out;
    let stats = (0..n_null as u64)
        .into_par_iter()
        .map(|r| {
            let mut xs = UniformStream::new(replication_seed(seed, r))
                .take(m)
                .map(|u| quantile(q_out, u))
                .collect::<Result<Vec<_>>>()?;
            sort_floats(&mut xs);
            sup_weighted_statistic(&xs, |x| cdf(q_out, x).unwrap_or(f64::NAN), kind.weight())
        })
        .collect::<Result<Vec<_>>>()?;
    let exceed = stats.iter().filter(|&&s| s >= observed).count();
    Ok((1 + exceed) as f64 / (n_null + 1) as f64)
}

/// Asymptotic Kolmogorov survival function `Q(λ) = 2 Σ (-1)^{k-1} e^{-2k²λ²}`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=200 {
        let k = k as f64;
        let term = (-2.0 * k * k * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-17 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Asymptotic p-value of an unweighted (KS) statistic `Z = sqrt(M) D`.
pub fn ks_asymptotic_p(statistic: f64) -> f64 {
    kolmogorov_survival(statistic)
}

/// Two-sample Kolmogorov-Smirnov test; returns `(D, p)` with the asymptotic
/// p-value at effective size `n1 n2/(n1 + n2)` (Stephens' small-sample
/// correction applied to the argument).
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    sort_floats(&mut a);
    sort_floats(&mut b);
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n1 - j as f64 / n2).abs());
    }
    let ne = (n1 * n2 / (n1 + n2)).sqrt();
    Ok((d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)))
}

/// Empirical autocovariance at lag `m`:
/// `(1/(N-m)) Σ x_n x_{n+m} - mean²`. At `m = 0` this is the biased sample
/// variance.
pub fn autocorrelation(samples: &[f64], m: usize) -> Result<f64> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if m >= n {
        return Err(Error::LagTooLarge { lag: m, len: n });
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let cross: f64 = samples.iter().zip(&samples[m..]).map(|(a, b)| a * b).sum();
    Ok(cross / (n - m) as f64 - mean * mean)
}

/// `C(m)/C(0)` for lags `1..=max_lag`. Refused for `q' >= 5/3`, where the
/// variance of the q-Gaussian diverges.
pub fn normalized_autocorrelations(samples: &[f64], q_out: f64, max_lag: usize) -> Result<Vec<f64>> {
    variance(q_out)?;
    let c0 = autocorrelation(samples, 0)?;
    (1..=max_lag).map(|m| autocorrelation(samples, m).map(|c| c / c0)).collect()
}

/// Sample mean and the unbiased sample variance.
pub fn mean_variance(samples: &[f64]) -> Result<(f64, f64)> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::EmptySample);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
    Ok((mean, ss / (n - 1) as f64))
}

/// Minimum orbit length accepted by [`lyapunov`].
pub const MIN_LYAPUNOV_STEPS: u64 = 10_000;

/// Orbit-average of `ln |f'(z_n)|` along `t` steps of the z-map.
///
/// For `l = 2, c = 1` the analytic derivative of `f_{2,1}` is used (points
/// within the kink tolerance are skipped); otherwise the derivative is
/// assembled by the chain rule through the conjugacy.
pub fn lyapunov(q_int: f64, cfg: &MapConfig, z0: f64, t: u64) -> Result<f64> {
    lyapunov_trace(q_int, cfg, z0, t, t).map(|trace| trace.last().map_or(f64::NAN, |p| p.1))
}

/// Running Lyapunov average, sampled every `every` steps: `(step, average)`.
pub fn lyapunov_trace(q_int: f64, cfg: &MapConfig, z0: f64, t: u64, every: u64) -> Result<Vec<(u64, f64)>> {
    cfg.validate()?;
    if t < MIN_LYAPUNOV_STEPS {
        return Err(Error::domain(format!("lyapunov requires t >= {MIN_LYAPUNOV_STEPS}, got {t}")));
    }
    crate::maps::z_map(q_int, cfg, z0)?;
    let analytic = cfg.order == 2 && cfg.iterations == 1;
    let slope = cfg.slope();
    let every = every.max(1);
    let mut z = z0;
    let mut sum = 0.0;
    let mut used = 0u64;
    let mut trace = Vec::with_capacity((t / every) as usize + 1);
    for n in 1..=t {
        let term = if analytic {
            z_map_derivative(q_int, z).ok().map(|d| d.abs().ln())
        } else {
            log_abs_derivative(q_int, cfg, z)
        };
        if let Some(v) = term.filter(|v| v.is_finite()) {
            sum += v;
            used += 1;
        }
        z = z_map_unchecked(q_int, slope, cfg.iterations, z);
        if n % every == 0 || n == t {
            trace.push((n, sum / used.max(1) as f64));
        }
    }
    Ok(trace)
}

/// Least-squares slope of `ln CCDF` against `ln |x|` over the order
/// statistics of `|x|` whose exceedance fraction lies in `[lo_frac, hi_frac]`.
pub fn tail_slope(samples: &[f64], lo_frac: f64, hi_frac: f64) -> Result<f64> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let mut mags: Vec<f64> = samples.iter().map(|x| x.abs()).collect();
    mags.sort_unstable_by(|a, b| b.total_cmp(a));
    let k_lo = ((lo_frac * n as f64).ceil() as usize).max(1);
    let k_hi = ((hi_frac * n as f64).floor() as usize).min(n);
    if k_hi <= k_lo + 1 {
        return Err(Error::domain("tail fit range holds fewer than two points"));
    }
    let pts: Vec<(f64, f64)> = (k_lo..=k_hi)
        .map(|k| (mags[k - 1].ln(), (k as f64 / n as f64).ln()))
        .collect();
    let np = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / np;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / np;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    Chaotic,
    Gbmm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOptions {
    pub trials: usize,
    pub samples_per_trial: usize,
    pub n_null: usize,
    pub seed: u64,
    pub sampler: SamplerKind,
    /// Worker threads; `0` uses all available cores.
    pub jobs: usize,
}

impl Default for TrialOptions {
    fn default() -> Self {
        TrialOptions {
            trials: 100,
            samples_per_trial: 10_000,
            n_null: DEFAULT_N_NULL,
            seed: 20_240_601,
            sampler: SamplerKind::Chaotic,
            jobs: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub q_out: f64,
    pub nu: Option<f64>,
    pub best_p_ks: f64,
    pub best_p_ad: f64,
    pub mean_p_ks: f64,
    pub mean_p_ad: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialTable {
    pub rows: Vec<TrialRow>,
    pub trials: usize,
    pub samples_per_trial: usize,
    pub n_null: usize,
    pub cfg: MapConfig,
    pub sampler: SamplerKind,
    pub seed: u64,
}

impl TrialTable {
    pub fn row(&self, q_out: f64) -> Option<&TrialRow> {
        self.rows.iter().find(|r| (r.q_out - q_out).abs() < 1e-9)
    }
}

/// Runs `trials` independent generators per `q'`, tests each trial's `xi`
/// sequence with KS and AD, and keeps the best (largest) p-value.
///
/// Trial `i` of parameter `q'` is seeded by [`Seeds::derive`]`(spec, seed, i)`
/// (chaotic) or the uniform substream `i` of `seed` (GBMM). One null distribution
/// of size `samples_per_trial` is shared by every trial.
pub fn run_trial_table(q_list: &[f64], cfg: &MapConfig, opts: &TrialOptions) -> Result<TrialTable> {
    cfg.validate()?;
    if opts.trials == 0 {
        return Err(Error::domain("trials must be >= 1"));
    }
    if opts.samples_per_trial == 0 {
        return Err(Error::EmptySample);
    }
    let specs = q_list.iter().map(|&q| QSpec::new(q)).collect::<Result<Vec<_>>>()?;
    let run = || -> Result<TrialTable> {
        let null = NullDistribution::simulate(opts.samples_per_trial, opts.n_null, opts.seed)?;
        let jobs: Vec<(usize, usize)> = (0..specs.len())
            .flat_map(|qi| (0..opts.trials).map(move |t| (qi, t)))
            .collect();
        let results = jobs
            .par_iter()
            .map(|&(qi, t)| {
                let spec = specs[qi];
                let xs = trial_samples(&spec, cfg, opts, t as u64)?;
                let (ks, ad) = null.test_uniforms(&pit_sorted(spec.q_out, &xs)?);
                Ok((ks.p_value, ad.p_value))
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = specs
            .iter()
            .enumerate()
            .map(|(qi, spec)| {
                let ps = &results[qi * opts.trials..(qi + 1) * opts.trials];
                let n = ps.len() as f64;
                TrialRow {
                    q_out: spec.q_out,
                    nu: spec.nu,
                    best_p_ks: ps.iter().map(|p| p.0).fold(0.0, f64::max),
                    best_p_ad: ps.iter().map(|p| p.1).fold(0.0, f64::max),
                    mean_p_ks: ps.iter().map(|p| p.0).sum::<f64>() / n,
                    mean_p_ad: ps.iter().map(|p| p.1).sum::<f64>() / n,
                }
            })
            .collect();
        Ok(TrialTable {
            rows,
            trials: opts.trials,
            samples_per_trial: opts.samples_per_trial,
            n_null: opts.n_null,
            cfg: *cfg,
            sampler: opts.sampler,
            seed: opts.seed,
        })
    };
    with_jobs(opts.jobs, run)
}

/// The `xi` sequence of one trial.
pub fn trial_samples(spec: &QSpec, cfg: &MapConfig, opts: &TrialOptions, trial: u64) -> Result<Vec<f64>> {
    let m = opts.samples_per_trial;
    Ok(match opts.sampler {
        SamplerKind::Chaotic => {
            let seeds = Seeds::derive(spec, opts.seed, trial);
            let mut gen = ChaoticGenerator::from_seeds(*spec, *cfg, seeds)?;
            let mut xs = vec![0.0; m];
            gen.fill_xi(&mut xs);
            xs
        }
        SamplerKind::Gbmm => Gbmm::seeded(*spec, substream_seed(opts.seed, trial)).batch(m).xi,
    })
}

/// Runs `f` on a pool of `jobs` threads (`0` = the global pool).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_statistic() {
        let s = sup_weighted_statistic(&[0.0], |_| 0.5, Weight::One).unwrap();
        assert_eq!(s, 0.5);
        assert_eq!(sup_weighted_statistic(&[], |_| 0.5, Weight::One), Err(Error::EmptySample));
    }

    #[test]
    fn equioscillating_sample() {
        let m = 200;
        let xs: Vec<f64> = (1..=m).map(|n| (n as f64 - 0.5) / m as f64).collect();
        let ks = sup_weighted_statistic(&xs, |x| x, Weight::One).unwrap();
        assert!((ks - (m as f64).sqrt() * 0.5 / m as f64).abs() < 1e-12);
        let ad = sup_weighted_statistic(&xs, |x| x, Weight::Anderson).unwrap();
        assert!(ad >= 2.0 * ks - 1e-12);
    }

    #[test]
    fn anderson_weight_is_clamped() {
        // F = 0 at the smallest point would give an infinite weight unclamped
        let s = statistic_from_uniforms(&[0.0, 0.5], Weight::Anderson);
        assert!(s.is_finite());
        let floor: f64 = 0.25;
        let expect = 2f64.sqrt() * 0.5 / (floor * (1.0 - floor)).sqrt();
        assert!((s - expect).abs() < 1e-12, "{s} vs {expect}");
    }

    #[test]
    fn null_p_value_convention() {
        let null = NullDistribution::simulate(50, 199, 1).unwrap();
        assert_eq!(null.p_value(GofKind::Ks, 0.0), 1.0);
        assert_eq!(null.p_value(GofKind::Ad, 1e9), 1.0 / 200.0);
        let median = null.ks[99];
        let p = null.p_value(GofKind::Ks, median);
        assert!((p - 0.5).abs() < 2.0 / (199f64).sqrt());
    }

    #[test]
    fn null_is_deterministic() {
        let a = NullDistribution::simulate(100, 99, 5).unwrap();
        let b = NullDistribution::simulate(100, 99, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mc_p_value_extremes() {
        let spec = QSpec::new(1.3).unwrap();
        assert_eq!(mc_p_value(&spec, 20, 0.0, GofKind::Ks, 99, 3).unwrap(), 1.0);
        assert_eq!(mc_p_value(&spec, 20, 1e6, GofKind::Ad, 99, 3).unwrap(), 0.01);
        assert!(mc_p_value(&spec, 20, 1.0, GofKind::Ks, 50, 3).is_err());
    }

    #[test]
    fn autocorrelation_examples() {
        let c = vec![2.0; 64];
        for m in 0..10 {
            assert_eq!(autocorrelation(&c, m).unwrap(), 0.0);
        }
        let alt: Vec<f64> = (0..100).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        assert_eq!(autocorrelation(&alt, 1).unwrap(), -1.0);
        assert_eq!(autocorrelation(&alt, 0).unwrap(), 1.0);
        assert_eq!(autocorrelation(&alt, 100), Err(Error::LagTooLarge { lag: 100, len: 100 }));
        assert!(normalized_autocorrelations(&alt, 1.8, 3).is_err());
    }

    #[test]
    fn kolmogorov_survival_values() {
        // reference values of the Kolmogorov distribution
        assert!((kolmogorov_survival(1.0) - 0.269_999_671_677_355_5).abs() < 1e-12);
        assert!((kolmogorov_survival(1.358_098_8) - 0.05).abs() < 1e-6);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
    }

    #[test]
    fn two_sample_identical() {
        let a: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let (d, p) = two_sample_ks(&a, &a).unwrap();
        assert_eq!(d, 0.0);
        assert_eq!(p, 1.0);
        let b: Vec<f64> = a.iter().map(|x| x + 1000.0).collect();
        let (d, p) = two_sample_ks(&a, &b).unwrap();
        assert_eq!(d, 1.0);
        assert!(p < 1e-10);
    }

    #[test]
    fn tail_slope_of_pareto() {
        // exact Pareto(α=2) quantiles
        let n = 100_000;
        let xs: Vec<f64> = (1..=n).map(|k| (k as f64 / n as f64).powf(-0.5)).collect();
        let s = tail_slope(&xs, 0.001, 0.01).unwrap();
        assert!((s + 2.0).abs() < 1e-3, "{s}");
    }

    #[test]
    fn lyapunov_rejects_short_orbits() {
        assert!(lyapunov(1.0, &MapConfig::default(), 1.0, 100).is_err());
    }
}
