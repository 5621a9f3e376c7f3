//! q-Gaussian random variates from deterministic chaos.
//!
//! The chaotic generator couples a Chebyshev pair map on the unit circle,
//! `(w, v) -> (P_d(w), Q_d(w, v))`, with a piecewise-linear map on `[0, 1]`
//! conjugated onto the half line by `g(u) = sqrt(-2 ln_q u)`. The products
//! `xi = z w` and `eta = z v` are distributed as a q-Gaussian with parameter
//! `q' = (3q - 1)/(q + 1)` under the map's invariant measure, which covers
//! the compact-support family (`q' < 1`), the normal law (`q' = 1`) and the
//! Student-t family (`1 < q' < 3`).
//!
//! Alongside the generator the crate ships
//!
//! * [`generator::Gbmm`], the generalized Box-Muller transform used as a
//!   reference sampler,
//! * [`distribution`], closed-form pdf/cdf/quantile of the q-Gaussian,
//! * [`stats`], sup-weighted KS/AD statistics with Monte-Carlo p-values,
//!   Lyapunov and autocorrelation diagnostics and the best-of-trials table
//!   runner,
//! * [`cli`], the command implementations behind the `qchaos` binary.
//!
//! ```
//! use qchaos::{ChaoticGenerator, MapConfig, QSpec};
//!
//! let spec = QSpec::new(1.5).unwrap();
//! let mut gen = ChaoticGenerator::new(spec, MapConfig::default(), 0.1, 1.0, 1).unwrap();
//! let (xi, eta) = gen.step();
//! assert!(xi.is_finite() && eta.is_finite());
//! ```

pub mod cli;
pub mod distribution;
pub mod generator;
pub mod maps;
pub mod quadrature;
pub mod specfun;
pub mod stats;

pub use distribution::DistSummary;
pub use generator::{ChaoticGenerator, Gbmm, QSpec, SampleBatch, Seeds, UniformStream};
pub use maps::{CirclePoint, MapConfig};
pub use stats::{GofKind, GofResult, TrialTable};


use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported Chebyshev degree {0} (expected 1..=8)")]
    UnsupportedDegree(u32),
    #[error("invalid map configuration: {0}")]
    Config(String),
    #[error("seed out of domain: {0}")]
    Seed(String),
    #[error("derivative undefined within {tol:e} of the kink at z = {kink}")]
    AtKink { kink: f64, tol: f64 },
    #[error("moment diverges for q_out = {0} (requires q_out < 5/3)")]
    DivergentMoment(f64),
    #[error("empty sample")]
    EmptySample,
    #[error("lag {lag} too large for {len} samples")]
    LagTooLarge { lag: usize, len: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
