//! Map dynamics: the Chebyshev pair map on the unit circle, the
//! piecewise-linear (triangular) map on `[0, 1]`, and the z-map
//! `f_{l,c} = g ∘ T_l^c ∘ g⁻¹` with `g(u) = sqrt(-2 ln_q u)` and
//! `g⁻¹(z) = exp_q(-z²/2)`.

use serde::{Deserialize, Serialize};

use crate::specfun::{is_unity, q_exp, q_ln_unchecked};
use crate::{Error, Result};

/// Largest supported Chebyshev degree.
pub const MAX_DEGREE: u32 = 8;

/// Default slope correction; `2 * (1 - 5e-6)` is exactly `1.99999`.
pub const DEFAULT_EPSILON: f64 = 5e-6;

/// Circle points whose squared modulus drifts further than this from 1 are
/// projected back onto the circle.
pub const RENORM_TOL: f64 = 1e-10;

/// Floor applied to `u` before `ln_q` when `q >= 1`.
pub const U_FLOOR: f64 = 1e-300;

/// Distance from the l=2, c=1 kink inside which the derivative is refused.
pub const KINK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapConfig {
    /// Chebyshev degree `d`.
    pub degree: u32,
    /// Piecewise-linear order `l`.
    pub order: u32,
    /// Number of `T_l` applications per step, `c`.
    pub iterations: u32,
    /// Slope correction: each linear piece has slope `l (1 - epsilon)`.
    pub epsilon: f64,
}

impl Default for MapConfig {
    fn default() -> Self {
        MapConfig { degree: 8, order: 2, iterations: 1, epsilon: DEFAULT_EPSILON }
    }
}

impl MapConfig {
    pub fn new(degree: u32, order: u32, iterations: u32, epsilon: f64) -> Result<Self> {
        let cfg = MapConfig { degree, order, iterations, epsilon };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_DEGREE).contains(&self.degree) {
            return Err(Error::Config(format!("degree d must be in 2..=8, got {}", self.degree)));
        }
        if self.order < 2 {
            return Err(Error::Config(format!("order l must be >= 2, got {}", self.order)));
        }
        if self.iterations < 1 {
            return Err(Error::Config(format!(
                "iterations c must be >= 1, got {}",
                self.iterations
            )));
        }
        if !(0.0..1e-3).contains(&self.epsilon) {
            return Err(Error::Config(format!(
                "epsilon must be in [0, 1e-3), got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    /// Slope magnitude of each linear piece.
    #[inline]
    pub fn slope(&self) -> f64 {
        self.order as f64 * (1.0 - self.epsilon)
    }
}

/// A point `(w, v)` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CirclePoint {
    pub w: f64,
    pub v: f64,
}

impl CirclePoint {
    pub fn from_angle(theta: f64) -> Self {
        let (v, w) = theta.sin_cos();
        CirclePoint { w, v }
    }

    #[inline]
    pub fn modulus_defect(&self) -> f64 {
        (self.w * self.w + self.v * self.v - 1.0).abs()
    }
}

/// `(P_d(w), Q_d(w, v))`, the real and imaginary parts of `(w + iv)^d`,
/// without any projection back onto the circle.
///
/// The polynomials are evaluated in Horner form in `w²`; the degree-8 pair
/// follows the exact operation order of the reference C implementation.
#[inline]
pub fn chebyshev_raw(d: u32, w: f64, v: f64) -> Result<(f64, f64)> {
    if !(1..=MAX_DEGREE).contains(&d) {
        return Err(Error::UnsupportedDegree(d));
    }
    Ok(eval_pair(d, w, v))
}

#[inline]
pub(crate) fn eval_pair(d: u32, w: f64, v: f64) -> (f64, f64) {
    let w2 = w * w;
    match d {
        1 => (w, v),
        2 => (2.0 * w2 - 1.0, 2.0 * w * v),
        3 => ((4.0 * w2 - 3.0) * w, v * (4.0 * w2 - 1.0)),
        4 => ((8.0 * w2 - 8.0) * w2 + 1.0, 4.0 * w * v * (2.0 * w2 - 1.0)),
        5 => (((16.0 * w2 - 20.0) * w2 + 5.0) * w, v * ((16.0 * w2 - 12.0) * w2 + 1.0)),
        6 => (
            ((32.0 * w2 - 48.0) * w2 + 18.0) * w2 - 1.0,
            2.0 * w * v * ((16.0 * w2 - 16.0) * w2 + 3.0),
        ),
        7 => (
            (((64.0 * w2 - 112.0) * w2 + 56.0) * w2 - 7.0) * w,
            v * (((64.0 * w2 - 80.0) * w2 + 24.0) * w2 - 1.0),
        ),
        8 => (p8(w), q8(w, v)),
        _ => unreachable!("degree validated by caller"),
    }
}

// Written as `(c*w)*w` chains, not via `w2`, to reproduce the reference
// evaluation order bit for bit.
#[inline]
fn p8(w: f64) -> f64 {
    (((128.0 * w * w - 256.0) * w * w + 160.0) * w * w - 32.0) * w * w + 1.0
}

#[inline]
fn q8(w: f64, v: f64) -> f64 {
    8.0 * w * v * (((16.0 * w * w - 24.0) * w * w + 10.0) * w * w - 1.0)
}

/// One application of the Chebyshev pair map, projected back onto the unit
/// circle whenever `|w² + v² - 1|` exceeds [`RENORM_TOL`].
#[inline]
pub fn chebyshev_pair(d: u32, p: CirclePoint) -> Result<CirclePoint> {
    let (w, v) = chebyshev_raw(d, p.w, p.v)?;
    Ok(renormalize(CirclePoint { w, v }))
}

#[inline]
pub(crate) fn chebyshev_step(d: u32, p: CirclePoint) -> CirclePoint {
    let (w, v) = eval_pair(d, p.w, p.v);
    renormalize(CirclePoint { w, v })
}

#[inline]
pub(crate) fn renormalize(p: CirclePoint) -> CirclePoint {
    let m2 = p.w * p.w + p.v * p.v;
    if (m2 - 1.0).abs() > RENORM_TOL {
        let m = m2.sqrt();
        CirclePoint { w: p.w / m, v: p.v / m }
    } else {
        p
    }
}

/// Order-`l` triangular map with slope `l (1 - epsilon)`.
///
/// With `y = l (1 - epsilon) u`, the result is `1 - |1 - (y mod 2)|`: the
/// rising pieces `y - k` for even `k = floor(y)` and the falling pieces
/// `(k + 1) - y` for odd `k`. For `l = 2` this is literally
/// `1 - |1 - 1.99999 u|`.
pub fn tri_map(l: u32, epsilon: f64, u: f64) -> Result<f64> {
    if l < 2 {
        return Err(Error::Config(format!("order l must be >= 2, got {l}")));
    }
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::domain(format!("tri_map requires u in [0, 1], got {u}")));
    }
    Ok(tri_map_slope(l as f64 * (1.0 - epsilon), u))
}

#[inline]
pub(crate) fn tri_map_slope(slope: f64, u: f64) -> f64 {
    let y = slope * u;
    let t = if y < 2.0 { y } else { y - 2.0 * (0.5 * y).floor() };
    (1.0 - (1.0 - t).abs()).clamp(0.0, 1.0)
}

/// Upper end of the z support for `q < 1`; infinite otherwise.
pub fn z_support_bound(q: f64) -> f64 {
    if q < 1.0 && !is_unity(q) {
        (2.0 / (1.0 - q)).sqrt()
    } else {
        f64::INFINITY
    }
}

/// `g⁻¹(z) = exp_q(-z²/2)`.
#[inline]
pub fn g_inv(q: f64, z: f64) -> f64 {
    q_exp(q, -z * z * 0.5)
}

/// `g(u) = sqrt(-2 ln_q u)`, with `u` floored at [`U_FLOOR`] when `q >= 1`.
#[inline]
pub fn g(q: f64, u: f64) -> f64 {
    let u = if q >= 1.0 || is_unity(q) { u.max(U_FLOOR) } else { u };
    let r = -2.0 * q_ln_unchecked(q, u);
    if r > 0.0 { r.sqrt() } else { 0.0 }
}

fn check_z(q: f64, z: f64) -> Result<()> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("z must be finite and >= 0, got {z}")));
    }
    let bound = z_support_bound(q);
    if z > bound * (1.0 + 1e-12) {
        return Err(Error::domain(format!(
            "z = {z} outside the support [0, {bound}] for q = {q}"
        )));
    }
    Ok(())
}

/// The conjugated map `f_{l,c}(z) = g(T_l^c(g⁻¹(z)))`.
pub fn z_map(q: f64, cfg: &MapConfig, z: f64) -> Result<f64> {
    cfg.validate()?;
    check_z(q, z)?;
    Ok(z_map_unchecked(q, cfg.slope(), cfg.iterations, z))
}

#[inline]
pub(crate) fn z_map_unchecked(q: f64, slope: f64, iterations: u32, z: f64) -> f64 {
    let mut u = g_inv(q, z);
    for _ in 0..iterations {
        u = tri_map_slope(slope, u);
    }
    g(q, u)
}

/// The fixed point of `T_2` preimage structure: `f_{2,1}` vanishes at
/// `sqrt(-2 ln_q(1/2))`, where `g⁻¹(z) = 1/2`.
pub fn kink_point(q: f64) -> f64 {
    (-2.0 * q_ln_unchecked(q, 0.5)).sqrt()
}

/// Analytic derivative of `f_{2,1}` (exact slope 2).
///
/// Negative below the kink `sqrt(-2 ln_q(1/2))`, positive above it.
pub fn z_map_derivative(q: f64, z: f64) -> Result<f64> {
    check_z(q, z)?;
    if z == 0.0 {
        return Err(Error::domain("z_map_derivative requires z > 0"));
    }
    let kink = kink_point(q);
    if (z - kink).abs() <= KINK_TOL {
        return Err(Error::AtKink { kink, tol: KINK_TOL });
    }
    let u = g_inv(q, z);
    let scale = 2f64.powf(1.0 - q);
    if z > kink {
        Ok(scale * z / g(q, 2.0 * u))
    } else {
        let one_minus_u = 1.0 - u;
        Ok(-scale * one_minus_u.powf(-q) * u.powf(q) * z / g(q, 2.0 * one_minus_u))
    }
}

/// `ln |f'_{l,c}(z)|` by the chain rule through the conjugacy:
/// `|g⁻¹'(z)| = z u₀^q`, each `T_l` contributes its slope, and
/// `|g'(u_c)| = u_c^{-q} / g(u_c)`. Returns `None` where a factor vanishes
/// or is undefined.
pub fn log_abs_derivative(q: f64, cfg: &MapConfig, z: f64) -> Option<f64> {
    let slope = cfg.slope();
    let u0 = g_inv(q, z);
    let mut u = u0;
    for _ in 0..cfg.iterations {
        u = tri_map_slope(slope, u);
    }
    let z_next = g(q, u);
    if !(z > 0.0 && u0 > 0.0 && u > 0.0 && z_next > 0.0) {
        return None;
    }
    let u_c = if q >= 1.0 { u.max(U_FLOOR) } else { u };
    Some(
        cfg.iterations as f64 * slope.ln() + z.ln() + q * u0.ln() - q * u_c.ln() - z_next.ln(),
    )
}
