//! Outage probability, bit error rate and ergodic capacity of links assisted
//! by a reconfigurable intelligent surface (RIS) over Nakagami-m fading.
//!
//! - [`numerics`]: special functions and quadrature.
//! - [`scenario`]: geometry, pathloss and fading parameters.
//! - [`rps`] / [`ops`]: exact statistics under random and coherent phase shifting.
//! - [`asymptotic`]: large-N closed forms.
//! - [`montecarlo`]: the simulation oracle.
//! - [`cli`]: config files, sweeps, CSV tables and figure presets.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotic;
pub mod cli;
pub mod modulation;
pub mod montecarlo;
pub mod numerics;
pub mod ops;
pub mod rps;
pub mod scenario;
mod trap;

pub use modulation::Modulation;
pub use numerics::{ComplexValue, QuadratureSpec};
pub use scenario::{LinkGeometry, LinkModel, NakagamiParams, PhaseDesign, ScenarioConfig};

use thiserror::Error;

/// Errors of the analytical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] numerics::NumericsError),
    #[error(transparent)]
    Scenario(#[from] scenario::ScenarioError),
    #[error("integral diverges: {0}")]
    NotIntegrable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
