//! Large-N models. Under random phases the received sum is approximately
//! circular Gaussian, so γ_R is exponential; under coherent phases the
//! amplitude sum is approximately Gaussian with a large mean, so γ_C is a
//! scaled noncentral χ² with one degree of freedom.

use std::f64::consts::{LN_2, PI};

use crate::modulation::Modulation;
use crate::numerics::{
    exp_e1, gauss_q, integrate_semi_infinite_scaled, ComplexValue, Oscillation, QuadratureSpec, EULER_GAMMA,
};
use crate::rps::{x_moment, DoubleNakagami};
use crate::scenario::LinkModel;
use crate::{Error, Result};

/// Per-element mean and variance of X = |h||g|.
pub fn zt_stats(dn: &DoubleNakagami) -> (f64, f64) {
    let m1 = x_moment(dn, 1);
    (m1, (x_moment(dn, 2) - m1 * m1).max(0.0))
}

fn reject_direct(link: &LinkModel) -> Result<()> {
    if link.direct.is_some() {
        return Err(Error::Unsupported(
            "large-N models cover the reflected paths only; disable the direct link or use the exact method".into(),
        ));
    }
    Ok(())
}

/// |Y|² ~ Exp with mean 2σ₁².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeNRps {
    pub sigma1_sq: f64,
}

impl LargeNRps {
    pub fn new(sigma1_sq: f64) -> Result<Self> {
        if !(sigma1_sq > 0.0 && sigma1_sq.is_finite()) {
            return Err(Error::InvalidArgument(format!("sigma1^2 must be positive, got {sigma1_sq}")));
        }
        Ok(LargeNRps { sigma1_sq })
    }

    pub fn from_link(link: &LinkModel) -> Result<Self> {
        reject_direct(link)?;
        Self::new(0.5 * link.n_elements as f64 * link.rho * link.h.omega * link.g.omega)
    }

    pub fn mean(&self) -> f64 {
        2.0 * self.sigma1_sq
    }
}

pub fn largen_rps_cdf(model: &LargeNRps, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    -(-x / (2.0 * model.sigma1_sq)).exp_m1()
}

pub fn largen_rps_pdf(model: &LargeNRps, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    (-x / (2.0 * model.sigma1_sq)).exp() / (2.0 * model.sigma1_sq)
}

pub fn largen_rps_chf(model: &LargeNRps, t: f64) -> ComplexValue {
    ComplexValue::new(1.0, -2.0 * model.sigma1_sq * t).inv()
}

/// 0.5 − 0.5 q^p (q + 1/(2σ₁²))^{−p}.
pub fn largen_rps_ber(model: &LargeNRps, modulation: Modulation) -> f64 {
    let (p, q) = modulation.pq();
    0.5 - 0.5 * (q / (q + 0.5 / model.sigma1_sq)).powf(p)
}

/// e^{1/γ̄} E₁(1/γ̄)/ln 2 with γ̄ = 2σ₁².
pub fn largen_rps_ec(model: &LargeNRps) -> f64 {
    exp_e1(1.0 / model.mean()) / LN_2
}

/// High-SNR form (ln γ̄ − 𝒢)/ln 2 of [`largen_rps_ec`].
pub fn largen_rps_ec_high_snr(model: &LargeNRps) -> f64 {
    (model.mean().ln() - EULER_GAMMA) / LN_2
}

/// Z = ρ(ΣX_n)² with ΣX_n Gaussian: s·Z ~ χ²₁(ξ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeNOps {
    pub xi: f64,
    pub s: f64,
}

impl LargeNOps {
    pub fn new(xi: f64, s: f64) -> Result<Self> {
        if !(xi >= 0.0 && xi.is_finite()) || !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument(format!("need xi >= 0 and s > 0, got xi={xi}, s={s}")));
        }
        Ok(LargeNOps { xi, s })
    }

    pub fn from_stats(n: usize, mean: f64, var: f64, rho: f64) -> Result<Self> {
        if var <= 0.0 {
            return Err(Error::InvalidArgument("per-element variance must be positive".into()));
        }
        let n = n as f64;
        Self::new(n * mean * mean / var, 1.0 / (rho * n * var))
    }

    pub fn from_link(link: &LinkModel) -> Result<Self> {
        reject_direct(link)?;
        let (mean, var) = zt_stats(&DoubleNakagami::new(link.h, link.g));
        Self::from_stats(link.n_elements, mean, var, link.rho)
    }

    /// E[Z] = (1 + ξ)/s.
    pub fn mean(&self) -> f64 {
        (1.0 + self.xi) / self.s
    }

    /// E[Z²] = (3 + 6ξ + ξ²)/s².
    pub fn second_moment(&self) -> f64 {
        (3.0 + 6.0 * self.xi + self.xi * self.xi) / (self.s * self.s)
    }
}

pub fn largen_ops_pdf(model: &LargeNOps, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let (xi, s) = (model.xi, model.s);
    let r = (xi * s * x).sqrt();
    // cosh(r)·e^{−(ξ+sx)/2}, folded so that neither factor overflows
    let lead = -0.5 * (xi + s * x) + r;
    s * 0.5 * (lead.exp() + (lead - 2.0 * r).exp()) / (2.0 * PI * s * x).sqrt()
}

pub fn largen_ops_cdf(model: &LargeNOps, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let a = model.xi.sqrt();
    let b = (x * model.s).sqrt();
    (gauss_q(a - b) - gauss_q(a + b)).clamp(0.0, 1.0)
}

/// exp[jξt/(s − 2jt)] (1 − 2jt/s)^{−1/2}.
pub fn largen_ops_chf(model: &LargeNOps, t: f64) -> ComplexValue {
    let j = ComplexValue::new(0.0, 1.0);
    let w = ComplexValue::new(1.0, -2.0 * t / model.s);
    (j * model.xi * t / (w * model.s)).exp() / w.sqrt()
}

/// EC of the noncentral-χ² model, (1/ln 2) ∫ (1 − F_Z(x))/(1 + x) dx.
pub fn largen_ops_ec(model: &LargeNOps, spec: &QuadratureSpec) -> Result<f64> {
    let a = model.xi.sqrt();
    let survival = |x: f64| {
        let b = (x * model.s).sqrt();
        // 1 − Q(a − b) + Q(a + b), written without cancellation
        gauss_q(b - a) + gauss_q(a + b)
    };
    let q = integrate_semi_infinite_scaled(|x| survival(x) / (1.0 + x), Oscillation::None, model.mean(), spec)?;
    Ok(q.value / LN_2)
}
