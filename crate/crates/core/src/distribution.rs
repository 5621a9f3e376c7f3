//! Closed-form zero-mean q-Gaussian: density, CDF/CCDF, moments, quantile.
//!
//! All functions take the output parameter `q' < 3`:
//!
//! * `q' < 1`: `sqrt(k)/B((2-q')/(1-q'), 1/2) [1 - k x²]^{1/(1-q')}` on
//!   `|x| <= 1/sqrt(k)` with `k = (1-q')/(3-q')`,
//! * `q' = 1`: standard normal,
//! * `1 < q' < 3`: `sqrt(k)/B(nu/2, 1/2) [1 + k x²]^{-1/(q'-1)}` with
//!   `k = (q'-1)/(3-q')`. Since `k nu = 1` this is exactly the standard
//!   Student-t with `nu = (3-q')/(q'-1)` degrees of freedom.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::generator::{QSpec, Regime};
use crate::specfun::{erfc, inc_beta_pair, is_unity, log_beta, q_exp};
use crate::{Error, Result};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistSummary {
    pub q_out: f64,
    pub regime: Regime,
    pub support_lo: f64,
    pub support_hi: f64,
    pub nu: Option<f64>,
    pub variance: Option<f64>,
}

/// Support, tail index and (when finite) variance of the q-Gaussian.
pub fn summary(q_out: f64) -> Result<DistSummary> {
    let spec = QSpec::new(q_out)?;
    let hi = support_bound(q_out);
    Ok(DistSummary {
        q_out,
        regime: spec.regime(),
        support_lo: -hi,
        support_hi: hi,
        nu: spec.nu,
        variance: variance(q_out).ok(),
    })
}

/// `sqrt((3-q')/(1-q'))` for `q' < 1`, infinite otherwise.
pub fn support_bound(q_out: f64) -> f64 {
    if q_out < 1.0 && !is_unity(q_out) {
        ((3.0 - q_out) / (1.0 - q_out)).sqrt()
    } else {
        f64::INFINITY
    }
}

fn check(q_out: f64) -> Result<Regime> {
    QSpec::new(q_out).map(|s| s.regime())
}

// Shape constants per regime: (k, beta-parameter, log normalization).
fn compact_consts(q: f64) -> (f64, f64, f64) {
    let k = (1.0 - q) / (3.0 - q);
    let a = (2.0 - q) / (1.0 - q);
    let ln_norm = 0.5 * k.ln() - log_beta(a, 0.5).expect("positive beta arguments");
    (k, a, ln_norm)
}

fn heavy_consts(q: f64) -> (f64, f64, f64) {
    let k = (q - 1.0) / (3.0 - q);
    let b = 1.0 / (q - 1.0) - 0.5;
    let ln_norm = 0.5 * k.ln() - log_beta(b, 0.5).expect("positive beta arguments");
    (k, b, ln_norm)
}

/// `ln(1 + k x²)` without overflow for huge `|x|`.
fn ln1p_kx2(k: f64, x: f64) -> f64 {
    let kx2 = k * x * x;
    if kx2.is_finite() && kx2 < 1e300 {
        kx2.ln_1p()
    } else {
        k.ln() + 2.0 * x.abs().ln()
    }
}

/// Probability density at `x`.
pub fn pdf(q_out: f64, x: f64) -> Result<f64> {
    Ok(match check(q_out)? {
        Regime::Gaussian => FRAC_1_SQRT_2PI * (-0.5 * x * x).exp(),
        Regime::Compact => {
            let (k, _, ln_norm) = compact_consts(q_out);
            let base = 1.0 - k * x * x;
            if base <= 0.0 {
                0.0
            } else {
                (ln_norm + base.ln() / (1.0 - q_out)).exp()
            }
        }
        Regime::HeavyTail => {
            let (k, _, ln_norm) = heavy_consts(q_out);
            (ln_norm - ln1p_kx2(k, x) / (q_out - 1.0)).exp()
        }
    })
}

/// Joint density of the planar pair `(xi, eta)`:
/// `[exp_q(-(x² + y²)/2)]^q / 2π` with `q = (q'+1)/(3-q')`.
pub fn joint_pdf(q_out: f64, x: f64, y: f64) -> Result<f64> {
    let spec = QSpec::new(q_out)?;
    let e = q_exp(spec.q_int, -0.5 * (x * x + y * y));
    if e <= 0.0 {
        return Ok(0.0);
    }
    Ok(e.powf(spec.q_int) / (2.0 * PI))
}

/// Cumulative distribution `Pr(X <= x)`.
///
/// Uses `I_t(1/2, ·)` of the regularized incomplete beta function with
/// `t = k x²` (compact) or `t = k x²/(1 + k x²)` (heavy tail), and `erfc`
/// for the normal case. Negative arguments evaluate the lower tail directly.
pub fn cdf(q_out: f64, x: f64) -> Result<f64> {
    let regime = check(q_out)?;
    if x.is_nan() {
        return Err(Error::domain("cdf of NaN"));
    }
    if x == 0.0 {
        return Ok(0.5);
    }
    let (lower_of_abs, upper_of_abs) = tails(q_out, regime, x.abs());
    Ok(if x > 0.0 { 0.5 + 0.5 * lower_of_abs } else { 0.5 * upper_of_abs })
}

/// Complementary distribution `Pr(X >= x) = 1 - cdf`, evaluated without
/// cancellation in the upper tail.
pub fn ccdf(q_out: f64, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("ccdf of NaN"));
    }
    cdf(q_out, -x)
}

// For a >= 0 returns (Pr(|X| <= a), Pr(|X| > a)).
fn tails(q_out: f64, regime: Regime, a: f64) -> (f64, f64) {
    match regime {
        Regime::Gaussian => {
            let upper = erfc(a * FRAC_1_SQRT_2);
            (1.0 - upper, upper)
        }
        Regime::Compact => {
            let (k, shape, _) = compact_consts(q_out);
            let t = k * a * a;
            if t >= 1.0 {
                return (1.0, 0.0);
            }
            inc_beta_pair(t, 1.0 - t, 0.5, shape)
        }
        Regime::HeavyTail => {
            let (k, shape, _) = heavy_consts(q_out);
            let kx2 = k * a * a;
            if a.is_infinite() {
                return (1.0, 0.0);
            }
            if kx2.is_finite() && kx2 < 1e300 {
                let one_minus_t = 1.0 / (1.0 + kx2);
                inc_beta_pair(kx2 * one_minus_t, one_minus_t, 0.5, shape)
            } else {
                let ln_one_minus_t = -k.ln() - 2.0 * a.ln();
                if ln_one_minus_t > -700.0 {
                    let one_minus_t = ln_one_minus_t.exp();
                    inc_beta_pair(1.0 - one_minus_t, one_minus_t, 0.5, shape)
                } else {
                    // I_y(b, 1/2) = y^b / (b B(b, 1/2)) (1 + O(y)) as y -> 0
                    let ln_beta = log_beta(shape, 0.5).expect("positive beta arguments");
                    let upper = (shape * ln_one_minus_t - ln_beta).exp() / shape;
                    (1.0 - upper, upper)
                }
            }
        }
    }
}

/// Variance `(3-q')/(5-3q')`, finite only for `q' < 5/3`.
pub fn variance(q_out: f64) -> Result<f64> {
    check(q_out)?;
    if q_out >= 5.0 / 3.0 {
        return Err(Error::DivergentMoment(q_out));
    }
    Ok((3.0 - q_out) / (5.0 - 3.0 * q_out))
}

/// Inverse CDF by safeguarded Newton iteration on the upper tail.
///
/// For `p > 1/2` the root of `ccdf(x) = 1 - p` is bracketed (by the support
/// edge, or by doubling for unbounded support) and refined with Newton steps
/// that fall back to bisection whenever a step leaves the bracket. Lower
/// quantiles follow from symmetry.
pub fn quantile(q_out: f64, p: f64) -> Result<f64> {
    let regime = check(q_out)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("quantile requires 0 < p < 1, got {p}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let (target, sign) = if p > 0.5 { (1.0 - p, 1.0) } else { (p, -1.0) };
    let upper = |x: f64| tails(q_out, regime, x).1 * 0.5;

    let mut lo = 0.0;
    let mut hi = support_bound(q_out);
    if !hi.is_finite() {
        hi = 1.0;
        while upper(hi) > target {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return Ok(sign * f64::MAX);
            }
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..400 {
        let f = upper(x) - target;
        if f.abs() <= 1e-15 * target {
            break;
        }
        if f > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let density = pdf(q_out, x)?;
        let newton = x + f / density;
        let next = if density > 0.0 && newton > lo && newton < hi {
            newton
        } else if lo > 0.0 && hi / lo > 4.0 {
            (lo * hi).sqrt()
        } else {
            0.5 * (lo + hi)
        };
        if next == x || hi - lo <= 4.0 * f64::EPSILON * hi {
            x = next;
            break;
        }
        x = next;
    }
    Ok(sign * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pdf_examples() {
        assert_relative_eq!(pdf(1.0, 0.0).unwrap(), 0.398_942_280_401_432_7, epsilon = 1e-15);
        assert_relative_eq!(pdf(2.0, 0.0).unwrap(), 1.0 / PI, max_relative = 1e-13);
        for &x in &[0.5, 3.0, 40.0] {
            assert_relative_eq!(pdf(2.0, x).unwrap(), 1.0 / (PI * (1.0 + x * x)), max_relative = 1e-12);
        }
        assert_relative_eq!(pdf(-1.0, 0.0).unwrap(), 2f64.sqrt() / PI, max_relative = 1e-13);
        assert_eq!(pdf(-1.0, 1.5).unwrap(), 0.0);
        assert!(pdf(3.0, 0.0).is_err());
        // semicircle: (1/π) sqrt(2 - x²)
        assert_relative_eq!(pdf(-1.0, 0.7).unwrap(), (2.0f64 - 0.49).sqrt() / PI, max_relative = 1e-13);
    }

    #[test]
    fn pdf_huge_arguments() {
        let v = pdf(2.9, 1e200).unwrap();
        assert!(v > 0.0 && v.is_finite());
        assert_eq!(pdf(1.0, 1e200).unwrap(), 0.0);
    }

    #[test]
    fn cdf_examples() {
        for &q in &[-1.0, 0.3, 1.0, 2.0, 2.9] {
            assert_eq!(cdf(q, 0.0).unwrap(), 0.5);
            assert_eq!(ccdf(q, 0.0).unwrap(), 0.5);
        }
        assert_relative_eq!(cdf(2.0, 1.0).unwrap(), 0.75, epsilon = 1e-14);
        assert_relative_eq!(ccdf(2.0, 1.0).unwrap(), 0.25, epsilon = 1e-14);
        assert_eq!(cdf(-1.0, 2f64.sqrt()).unwrap(), 1.0);
        assert_eq!(cdf(-1.0, -5.0).unwrap(), 0.0);
        assert!(cdf(3.5, 0.0).is_err());
        // Cauchy tail
        assert_relative_eq!(ccdf(2.0, 1e6).unwrap(), (1e-6f64).atan() / PI, max_relative = 1e-10);
    }

    #[test]
    fn cdf_gaussian_values() {
        assert_relative_eq!(cdf(1.0, 1.959_963_984_540_054).unwrap(), 0.975, epsilon = 1e-14);
        assert_relative_eq!(cdf(1.0, -1.0).unwrap(), 0.158_655_253_931_457_05, epsilon = 1e-15);
    }

    #[test]
    fn variance_examples() {
        assert_eq!(variance(1.0).unwrap(), 1.0);
        assert_relative_eq!(variance(-1.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(variance(1.4).unwrap(), 2.0, epsilon = 1e-14);
        assert_eq!(variance(5.0 / 3.0), Err(Error::DivergentMoment(5.0 / 3.0)));
        assert!(variance(2.5).is_err());
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(quantile(1.3, 0.5).unwrap(), 0.0);
        assert_relative_eq!(quantile(2.0, 0.75).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(quantile(1.0, 0.975).unwrap(), 1.959_963_984_540_054, max_relative = 1e-12);
        assert!(quantile(1.0, 0.0).is_err());
        assert!(quantile(1.0, 1.0).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &q in &[-2.0, -0.5, 0.0, 0.7, 1.0, 1.2, 1.6, 2.0, 2.5, 2.9] {
            for &p in &[1e-9, 1e-4, 0.01, 0.2, 0.49, 0.51, 0.8, 0.99, 1.0 - 1e-6] {
                let x = quantile(q, p).unwrap();
                let back = cdf(q, x).unwrap();
                assert!((back - p).abs() <= 1e-10, "q={q} p={p} x={x} back={back}");
            }
        }
    }

    #[test]
    fn summary_regimes() {
        let s = summary(0.5).unwrap();
        assert!(s.support_hi.is_finite() && s.variance.is_some() && s.nu.is_none());
        let s = summary(1.8).unwrap();
        assert!(s.support_hi.is_infinite() && s.variance.is_none());
        assert_relative_eq!(s.nu.unwrap(), 1.5, epsilon = 1e-14);
    }

    #[test]
    fn joint_density_examples() {
        // q' = -1 is the uniform disk of radius sqrt(2)
        assert_relative_eq!(joint_pdf(-1.0, 0.3, 0.4).unwrap(), 1.0 / (2.0 * PI), epsilon = 1e-15);
        assert_eq!(joint_pdf(-1.0, 1.0, 1.1).unwrap(), 0.0);
        assert_relative_eq!(
            joint_pdf(1.0, 1.0, 0.5).unwrap(),
            (-0.625f64).exp() / (2.0 * PI),
            max_relative = 1e-14
        );
    }
}
