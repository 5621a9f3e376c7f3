//! q-Gaussian variate generators.
//!
//! [`ChaoticGenerator`] advances the state `(w, v, z)` by the Chebyshev pair
//! map and the z-map and emits `(xi, eta) = (z w, z v)`. [`Gbmm`] is the
//! generalized Box-Muller transform driven by an injectable uniform source.
//!
//! # Evaluation order
//!
//! A step computes, in order: `Q_d(w, v)` and `P_d(w)` from the old point,
//! the optional renormalization, `u = exp_q(-z*z*0.5)`, `c` applications of
//! the triangular map, `z = sqrt(-2 ln_q u)`, and finally `xi = z*w`,
//! `eta = z*v` from the updated state. No fused multiply-add is used, so the
//! stream is bit-reproducible on any IEEE-754 double platform with a
//! correctly behaving `exp`/`ln`.

use std::f64::consts::TAU;

use rand_xoshiro::rand_core::RngCore;
use rand_xoshiro::SplitMix64;
use rand_xoshiro::rand_core::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::maps::{chebyshev_step, g, z_map_unchecked, z_support_bound, CirclePoint, MapConfig};
use crate::specfun::{is_unity, q_ln_unchecked};
use crate::{Error, Result};

/// Which of the three q-Gaussian regimes a parameter falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `q' < 1`: compact support.
    Compact,
    /// `q' = 1`: standard normal.
    Gaussian,
    /// `1 < q' < 3`: Student-t with `nu` degrees of freedom.
    HeavyTail,
}

/// Output parameter `q'` together with the derived map parameter
/// `q = (q' + 1)/(3 - q')` and, for `q' > 1`, the tail index
/// `nu = (3 - q')/(q' - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QSpec {
    pub q_out: f64,
    pub q_int: f64,
    pub nu: Option<f64>,
}

impl QSpec {
    pub fn new(q_out: f64) -> Result<Self> {
        if !q_out.is_finite() || q_out >= 3.0 {
            return Err(Error::domain(format!("q_out must be < 3, got {q_out}")));
        }
        let q_int = (q_out + 1.0) / (3.0 - q_out);
        let nu = (q_out > 1.0 && !is_unity(q_out)).then(|| (3.0 - q_out) / (q_out - 1.0));
        Ok(QSpec { q_out, q_int, nu })
    }

    pub fn regime(&self) -> Regime {
        if is_unity(self.q_out) {
            Regime::Gaussian
        } else if self.q_out < 1.0 {
            Regime::Compact
        } else {
            Regime::HeavyTail
        }
    }

    /// Largest attainable radius `z` (infinite unless `q' < 1`).
    pub fn z_bound(&self) -> f64 {
        z_support_bound(self.q_int)
    }
}

/// Alias for [`QSpec::new`].
pub fn make_spec(q_out: f64) -> Result<QSpec> {
    QSpec::new(q_out)
}

/// Seeds of the chaotic generator: `v0`, `z0` and the sign of `w0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Seeds {
    pub v0: f64,
    pub z0: f64,
    pub w0_sign: i8,
}

impl Default for Seeds {
    fn default() -> Self {
        Seeds { v0: 0.1, z0: 1.0, w0_sign: 1 }
    }
}

impl Seeds {
    /// Deterministic per-trial seeds: `v0` uniform on (0,1), `z0` drawn from
    /// the invariant radial law `g(U)`, and a random sign for `w0`.
    pub fn derive(spec: &QSpec, master: u64, index: u64) -> Seeds {
        let mut stream = UniformStream::new(substream_seed(master, index));
        let v0 = stream.next_open();
        let mut z0 = g(spec.q_int, stream.next_open());
        let bound = spec.z_bound();
        if !(z0 > 0.0) {
            z0 = f64::MIN_POSITIVE;
        }
        if z0 > bound {
            z0 = bound;
        }
        let w0_sign = if stream.next_u64() & 1 == 0 { 1 } else { -1 };
        Seeds { v0, z0, w0_sign }
    }
}

/// How a [`SampleBatch`] was produced; enough to regenerate it exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Provenance {
    Chaotic { cfg: MapConfig, seeds: Seeds, burn_in: u64 },
    Gbmm { uniform_seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
    pub spec: QSpec,
    pub provenance: Provenance,
    pub count: usize,
}

impl SampleBatch {
    /// Re-runs the generator described by the provenance.
    pub fn regenerate(&self) -> Result<SampleBatch> {
        match self.provenance {
            Provenance::Chaotic { cfg, seeds, burn_in } => {
                let mut gen = ChaoticGenerator::from_seeds(self.spec, cfg, seeds)?;
                gen.burn_in(burn_in);
                Ok(gen.batch(self.count))
            }
            Provenance::Gbmm { uniform_seed } => {
                Ok(Gbmm::seeded(self.spec, uniform_seed).batch(self.count))
            }
        }
    }
}

/// State `(w, v, z)` of the chaotic generator plus its configuration.
#[derive(Debug, Clone)]
pub struct ChaoticGenerator {
    point: CirclePoint,
    z: f64,
    spec: QSpec,
    cfg: MapConfig,
    seeds: Seeds,
    slope: f64,
    step_count: u64,
    burned: u64,
}

impl ChaoticGenerator {
    /// Seeds the state with `w0 = sign * sqrt(1 - v0²)`, `v = v0`, `z = z0`.
    pub fn new(spec: QSpec, cfg: MapConfig, v0: f64, z0: f64, w0_sign: i8) -> Result<Self> {
        Self::from_seeds(spec, cfg, Seeds { v0, z0, w0_sign })
    }

    pub fn from_seeds(spec: QSpec, cfg: MapConfig, seeds: Seeds) -> Result<Self> {
        cfg.validate()?;
        let Seeds { v0, z0, w0_sign } = seeds;
        if !(v0 > 0.0 && v0 < 1.0) {
            return Err(Error::Seed(format!("v0 must satisfy 0 < v0 < 1, got {v0}")));
        }
        if !(z0 > 0.0) || !z0.is_finite() {
            return Err(Error::Seed(format!("z0 must satisfy z0 > 0, got {z0}")));
        }
        let bound = spec.z_bound();
        if z0 > bound {
            return Err(Error::Seed(format!(
                "z0 must satisfy z0 <= {bound} (z support for q_out = {}), got {z0}",
                spec.q_out
            )));
        }
        if w0_sign != 1 && w0_sign != -1 {
            return Err(Error::Seed(format!("w0_sign must be +1 or -1, got {w0_sign}")));
        }
        let w0 = f64::from(w0_sign) * (1.0 - v0 * v0).sqrt();
        Ok(ChaoticGenerator {
            point: CirclePoint { w: w0, v: v0 },
            z: z0,
            spec,
            cfg,
            seeds,
            slope: cfg.slope(),
            step_count: 0,
            burned: 0,
        })
    }

    /// Advances the state once and returns `(z w, z v)` of the new state.
    #[inline]
    pub fn step(&mut self) -> (f64, f64) {
        self.point = chebyshev_step(self.cfg.degree, self.point);
        self.z = z_map_unchecked(self.spec.q_int, self.slope, self.cfg.iterations, self.z);
        self.step_count += 1;
        (self.z * self.point.w, self.z * self.point.v)
    }

    /// Discards `n` steps.
    pub fn burn_in(&mut self, n: u64) {
        for _ in 0..n {
            self.step();
        }
        self.burned += n;
    }

    pub fn batch(&mut self, count: usize) -> SampleBatch {
        let provenance = Provenance::Chaotic { cfg: self.cfg, seeds: self.seeds, burn_in: self.burned };
        let mut xi = Vec::with_capacity(count);
        let mut eta = Vec::with_capacity(count);
        for _ in 0..count {
            let (x, e) = self.step();
            xi.push(x);
            eta.push(e);
        }
        SampleBatch { xi, eta, spec: self.spec, provenance, count }
    }

    /// Fills `out` with successive `xi` values.
    pub fn fill_xi(&mut self, out: &mut [f64]) {
        for slot in out {
            *slot = self.step().0;
        }
    }

    pub fn point(&self) -> CirclePoint {
        self.point
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn spec(&self) -> &QSpec {
        &self.spec
    }

    pub fn config(&self) -> &MapConfig {
        &self.cfg
    }

    pub fn seeds(&self) -> Seeds {
        self.seeds
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }
}

impl Iterator for ChaoticGenerator {
    type Item = (f64, f64);

    fn next(&mut self) -> Option<(f64, f64)> {
        Some(self.step())
    }
}

/// Deterministic uniform stream on the open interval (0, 1).
///
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of substream `index` of `master`.
///
/// SplitMix64 walks a single Weyl sequence, so seeds that differ by a
/// multiple of its increment give shifted copies of one stream. Passing the
/// pair through the (bijective) SplitMix64 finalizer places distinct indices
/// at unrelated points of the period.
pub fn substream_seed(master: u64, index: u64) -> u64 {
    mix64(mix64(master) ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// The state is SplitMix64 (Weyl increment `0x9E3779B97F4A7C15` followed by
/// a 64-bit mixing function, period 2⁶⁴). Each output keeps the top 52 bits
/// `k` of a 64-bit word and returns `(k + 0.5) / 2⁵²`, which is exactly
/// representable and never 0 or 1.
#[derive(Debug, Clone)]
pub struct UniformStream {
    rng: SplitMix64,
}

const INV_2_52: f64 = 1.0 / (1u64 << 52) as f64;

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        UniformStream { rng: SplitMix64::seed_from_u64(seed) }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    #[inline]
    pub fn next_open(&mut self) -> f64 {
        ((self.next_u64() >> 12) as f64 + 0.5) * INV_2_52
    }
}

impl Iterator for UniformStream {
    type Item = f64;

    #[inline]
    fn next(&mut self) -> Option<f64> {
        Some(self.next_open())
    }
}

/// Alias for [`UniformStream::new`].
pub fn uniform_stream(seed: u64) -> UniformStream {
    UniformStream::new(seed)
}

/// One generalized Box-Muller pair from two uniforms in (0, 1):
/// `r = sqrt(-2 ln_q u1)`, `(r cos 2πu2, r sin 2πu2)` with `q` the map
/// parameter of `spec`.
pub fn gbmm_sample(spec: &QSpec, u1: f64, u2: f64) -> Result<(f64, f64)> {
    if !(u1 > 0.0 && u1 < 1.0) || !(u2 > 0.0 && u2 < 1.0) {
        return Err(Error::domain(format!(
            "gbmm_sample requires 0 < u1, u2 < 1, got ({u1}, {u2})"
        )));
    }
    Ok(gbmm_pair(spec.q_int, u1, u2))
}

#[inline]
fn gbmm_pair(q: f64, u1: f64, u2: f64) -> (f64, f64) {
    let r = (-2.0 * q_ln_unchecked(q, u1)).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    (r * c, r * s)
}

/// Generalized Box-Muller sampler over any source of uniforms in (0, 1).
#[derive(Debug, Clone)]
pub struct Gbmm<U> {
    spec: QSpec,
    uniforms: U,
    seed: Option<u64>,
}

impl Gbmm<UniformStream> {
    pub fn seeded(spec: QSpec, seed: u64) -> Self {
        Gbmm { spec, uniforms: UniformStream::new(seed), seed: Some(seed) }
    }
}

impl<U: Iterator<Item = f64>> Gbmm<U> {
    /// Wraps an arbitrary uniform source. Values must lie in (0, 1).
    pub fn with_source(spec: QSpec, uniforms: U) -> Self {
        Gbmm { spec, uniforms, seed: None }
    }

    /// Next pair, or `None` when the uniform source is exhausted.
    pub fn next_pair(&mut self) -> Option<(f64, f64)> {
        let u1 = self.uniforms.next()?;
        let u2 = self.uniforms.next()?;
        Some(gbmm_pair(self.spec.q_int, u1, u2))
    }

    pub fn batch(&mut self, count: usize) -> SampleBatch {
        let mut xi = Vec::with_capacity(count);
        let mut eta = Vec::with_capacity(count);
        while xi.len() < count {
            let Some((x, y)) = self.next_pair() else { break };
            xi.push(x);
            eta.push(y);
        }
        let count = xi.len();
        SampleBatch {
            xi,
            eta,
            spec: self.spec,
            provenance: Provenance::Gbmm { uniform_seed: self.seed.unwrap_or(0) },
            count,
        }
    }
}
