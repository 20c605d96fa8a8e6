//! Special functions and quadrature used by every analytical path.
//!
//! Everything here is implemented from series, continued fractions,
//! rational approximations or asymptotic expansions; no external math
//! library is consulted. All functions are pure.

// coefficient tables are kept as published
#[allow(clippy::excessive_precision)]
mod bessel;
mod gamma;
#[allow(clippy::excessive_precision)]
mod hypergeometric;
#[allow(clippy::excessive_precision)]
mod quadrature;
mod series;

pub use bessel::{bessel_j, bessel_j0, bessel_j1, bessel_zero, BesselOrder};
pub use gamma::{
    erfc, exp_e1, gamma, gauss_q, ln_gamma, lower_regularized_gamma, pochhammer, rgamma,
    upper_incomplete_gamma, EULER_GAMMA,
};
pub use hypergeometric::{hyp1f1, hyp2f1, hyp2f1_real};
pub use quadrature::{
    integrate, integrate_semi_infinite, integrate_semi_infinite_scaled, Oscillation, Quadrature,
    QuadratureSpec,
};
pub use series::{euler_transform, taylor_coefficients_product, wynn_epsilon};

use thiserror::Error;

/// Complex number with `re`/`im` parts.
pub type ComplexValue = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("{function}: argument {value} outside the domain ({reason})")]
    Domain {
        function: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("{function}: invalid parameters ({reason})")]
    Parameter {
        function: &'static str,
        reason: String,
    },
    #[error("{function}: no convergent representation for {detail}")]
    Convergence {
        function: &'static str,
        detail: String,
    },
    #[error("quadrature did not converge: best estimate {estimate:e}, error bound {error:e}")]
    NonConvergence { estimate: f64, error: f64 },
    #[error("coefficient sequence {index} has {len} terms, need {needed}")]
    LengthMismatch {
        index: usize,
        len: usize,
        needed: usize,
    },
}

pub type Result<T> = std::result::Result<T, NumericsError>;
