//! End-to-end SNR under random phase shifting.
//!
//! With independent uniform residual phases the received amplitude is a
//! random-phasor sum, whose distribution is fixed by the product H(t) of the
//! Hankel transforms of the element amplitudes:
//!
//! - PDF: f(γ) = (1/2ρ) ∫ t J₀(t√(γ/ρ)) H(t) dt
//! - CDF: F(γ) = √(γ/ρ) ∫ J₁(t√(γ/ρ)) H(t) dt
//! - moments from the Maclaurin coefficients of H.
//!
//! Integrals are evaluated in the normalized variable u = κt, with κ² the
//! mean received power per unit ρ, so that H varies on a unit scale whatever
//! the pathloss.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::modulation::Modulation;
use crate::numerics::{
    bessel_j0, bessel_j1, gamma, hyp1f1, hyp2f1_real, integrate_semi_infinite_scaled, ln_gamma,
    taylor_coefficients_product, BesselOrder, Oscillation, QuadratureSpec,
};
use crate::scenario::{LinkModel, NakagamiParams};
use crate::trap::ErrorTrap;
use crate::{Error, Result};

const CACHE_LIMIT: usize = 1 << 18;

/// Amplitude |h||g| of one cascaded element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleNakagami {
    pub h: NakagamiParams,
    pub g: NakagamiParams,
}

impl DoubleNakagami {
    pub fn new(h: NakagamiParams, g: NakagamiParams) -> Self {
        DoubleNakagami { h, g }
    }

    /// Λ = Ω_h Ω_g / (m_h m_g).
    pub fn lambda(&self) -> f64 {
        self.h.lambda() * self.g.lambda()
    }
}

/// k-th raw moment of the cascaded amplitude.
pub fn x_moment(dn: &DoubleNakagami, k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let half = 0.5 * k as f64;
    let (mh, mg) = (dn.h.m, dn.g.m);
    let log = half * dn.lambda().ln() + ln_gamma(mh + half).unwrap() + ln_gamma(mg + half).unwrap()
        - ln_gamma(mh).unwrap()
        - ln_gamma(mg).unwrap();
    log.exp()
}

/// Hankel transform ₂F₁(m_h, m_g; 1; −Λt²/4) of the cascaded amplitude.
pub fn hankel_cascade(dn: &DoubleNakagami, t: f64) -> Result<f64> {
    let x = 0.25 * dn.lambda() * t * t;
    Ok(hyp2f1_real(dn.h.m, dn.g.m, 1.0, -x)?)
}

/// Hankel transform ₁F₁(m; 1; −Λt²/4) of a Nakagami amplitude, Λ = Ω/m.
pub fn hankel_direct(params: &NakagamiParams, t: f64) -> Result<f64> {
    let x = 0.25 * params.lambda() * t * t;
    Ok(hyp1f1(params.m, 1.0, -x)?)
}

/// H(t) = Φ_d(t) ∏ Φ_{X_n}(t) with a cache of evaluated points.
#[derive(Debug)]
pub struct HankelProduct {
    factors: Vec<(DoubleNakagami, usize)>,
    direct: Option<NakagamiParams>,
    kappa: f64,
    cache: RwLock<HashMap<u64, f64>>,
}

impl Clone for HankelProduct {
    fn clone(&self) -> Self {
        HankelProduct {
            factors: self.factors.clone(),
            direct: self.direct,
            kappa: self.kappa,
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl HankelProduct {
    /// Product over the given (possibly heterogeneous) elements.
    pub fn new(cascades: &[DoubleNakagami], direct: Option<NakagamiParams>) -> Result<Self> {
        if cascades.is_empty() && direct.is_none() {
            return Err(Error::InvalidArgument("no signal path".into()));
        }
        let mut factors: Vec<(DoubleNakagami, usize)> = Vec::new();
        for dn in cascades {
            match factors.iter_mut().find(|(f, _)| f == dn) {
                Some((_, count)) => *count += 1,
                None => factors.push((*dn, 1)),
            }
        }
        let power: f64 = factors
            .iter()
            .map(|(dn, c)| *c as f64 * dn.h.omega * dn.g.omega)
            .sum::<f64>()
            + direct.map_or(0.0, |d| d.omega);
        Ok(HankelProduct {
            factors,
            direct,
            kappa: power.sqrt(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn from_link(link: &LinkModel) -> Self {
        let dn = DoubleNakagami::new(link.h, link.g);
        Self::new(&vec![dn; link.n_elements], link.direct).expect("link has at least one element")
    }

    /// √(E|S|²) per unit ρ, the normalization scale of t.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mean_power(&self) -> f64 {
        self.kappa * self.kappa
    }

    pub fn has_direct(&self) -> bool {
        self.direct.is_some()
    }

    pub fn n_elements(&self) -> usize {
        self.factors.iter().map(|(_, c)| c).sum()
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let key = t.to_bits();
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(*v);
        }
        let mut v = match &self.direct {
            Some(d) => hankel_direct(d, t)?,
            None => 1.0,
        };
        for (dn, count) in &self.factors {
            v *= hankel_cascade(dn, t)?.powi(*count as i32);
        }
        let mut cache = self.cache.write().unwrap();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, v);
        Ok(v)
    }

    /// H(u/κ).
    pub fn eval_normalized(&self, u: f64) -> Result<f64> {
        self.eval(u / self.kappa)
    }

    /// Maclaurin coefficients of H in powers of t², up to (t²)^order.
    pub fn maclaurin_t2(&self, order: usize) -> Result<Vec<f64>> {
        let mut series: Vec<Vec<f64>> = Vec::new();
        for (dn, count) in &self.factors {
            let (a, b, x) = (dn.h.m, dn.g.m, -0.25 * dn.lambda());
            let mut c = vec![1.0; order + 1];
            for j in 1..=order {
                let jf = (j - 1) as f64;
                c[j] = c[j - 1] * (a + jf) * (b + jf) / ((jf + 1.0) * (jf + 1.0)) * x;
            }
            for _ in 0..*count {
                series.push(c.clone());
            }
        }
        if let Some(d) = &self.direct {
            let x = -0.25 * d.lambda();
            let mut c = vec![1.0; order + 1];
            for j in 1..=order {
                let jf = (j - 1) as f64;
                c[j] = c[j - 1] * (d.m + jf) / ((jf + 1.0) * (jf + 1.0)) * x;
            }
            series.push(c);
        }
        Ok(taylor_coefficients_product(&series, order)?)
    }

    /// Exponent e with H(t) = O(t^{−e}) as t → ∞ (up to logarithms).
    pub fn decay_exponent(&self) -> f64 {
        let cascade: f64 = self
            .factors
            .iter()
            .map(|(dn, c)| 2.0 * *c as f64 * dn.h.m.min(dn.g.m))
            .sum();
        cascade + self.direct.map_or(0.0, |d| 2.0 * d.m)
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
    }
}

/// Density of γ_R at `gamma`.
pub fn gamma_r_pdf(hp: &HankelProduct, gamma: f64, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("gamma", gamma)?;
    check_positive("rho", rho)?;
    let v = (gamma / rho).sqrt() / hp.kappa();
    let trap = ErrorTrap::new();
    let f = |u: f64| u * bessel_j0(v * u) * trap.value(hp.eval_normalized(u));
    let osc = Oscillation::Bessel {
        order: BesselOrder::Zero,
        frequency: v,
    };
    let q = trap.finish(integrate_semi_infinite_scaled(f, osc, 1.0, spec))?;
    Ok((q.value / (2.0 * rho * hp.mean_power())).max(0.0))
}

/// CDF of γ_R at `gamma`.
pub fn gamma_r_cdf(hp: &HankelProduct, gamma: f64, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("rho", rho)?;
    if gamma < 0.0 || gamma.is_nan() {
        return Err(Error::InvalidArgument(format!("gamma must be nonnegative, got {gamma}")));
    }
    if gamma == 0.0 {
        return Ok(0.0);
    }
    if gamma.is_infinite() {
        return Ok(1.0);
    }
    let v = (gamma / rho).sqrt() / hp.kappa();
    let trap = ErrorTrap::new();
    let f = |u: f64| bessel_j1(v * u) * trap.value(hp.eval_normalized(u));
    let osc = Oscillation::Bessel {
        order: BesselOrder::One,
        frequency: v,
    };
    let q = trap.finish(integrate_semi_infinite_scaled(f, osc, 1.0, spec))?;
    Ok((v * q.value).clamp(0.0, 1.0))
}

/// k-th raw moment of γ_R, 1 ≤ k ≤ 4.
pub fn gamma_r_moment(hp: &HankelProduct, k: usize, rho: f64) -> Result<f64> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!("moment order {k} outside 1..=4")));
    }
    let c = hp.maclaurin_t2(k)?;
    let kf = k as f64;
    let fact = gamma(kf + 1.0);
    Ok(rho.powi(k as i32) * (-4f64).powi(k as i32) * fact * fact * c[k])
}

/// Outage probability P(γ_R ≤ γ_th).
pub fn op_rps(hp: &HankelProduct, gamma_th: f64, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    gamma_r_cdf(hp, gamma_th, rho, spec)
}

/// Average BER of a binary scheme under random phase shifting,
/// (p/(4qρ)) ∫ t ₁F₁(1+p; 2; −t²/(4qρ)) H(t) dt.
///
/// The substitution t = √(4qρ)·y puts the kernel on a unit scale and removes
/// the prefactor: P = p ∫ y ₁F₁(1+p; 2; −y²) H(√(4qρ) y) dy.
pub fn ber_rps(hp: &HankelProduct, rho: f64, modulation: Modulation, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("rho", rho)?;
    let (p, q) = modulation.pq();
    let w = (4.0 * q * rho * hp.mean_power()).sqrt();
    let scale = (1.0 / w).min(1.0);
    let spec = QuadratureSpec {
        truncation_cap: spec.truncation_cap / scale,
        ..*spec
    };
    let trap = ErrorTrap::new();
    let f = |y: f64| {
        if y == 0.0 {
            return 0.0;
        }
        let kernel = if p == 1.0 {
            (-y * y).exp()
        } else {
            trap.value(hyp1f1(1.0 + p, 2.0, -y * y))
        };
        y * kernel * trap.value(hp.eval_normalized(w * y))
    };
    let r = trap.finish(integrate_semi_infinite_scaled(f, Oscillation::None, scale, &spec))?;
    Ok((p * r.value).clamp(0.0, 0.5))
}

/// High-SNR BER (p/4qρ) ∫ t H(t) dt; exists only when t·H(t) is integrable.
pub fn ber_rps_asymptotic(hp: &HankelProduct, rho: f64, modulation: Modulation, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("rho", rho)?;
    let e = hp.decay_exponent();
    if e <= 2.0 {
        return Err(Error::NotIntegrable(format!(
            "t·H(t) decays like t^(1-{e}), so the high-SNR BER integral diverges"
        )));
    }
    let (p, q) = modulation.pq();
    let trap = ErrorTrap::new();
    let f = |u: f64| u * trap.value(hp.eval_normalized(u));
    let spec = QuadratureSpec {
        truncation_cap: spec.truncation_cap.max(1e8),
        ..*spec
    };
    let r = trap.finish(integrate_semi_infinite_scaled(f, Oscillation::None, 1.0, &spec))?;
    Ok(p / (4.0 * q * rho * hp.mean_power()) * r.value)
}

/// Second-order Taylor approximation of the ergodic capacity (bits/s/Hz)
/// from the first two SNR moments.
pub fn ec_taylor(mu1: f64, mu2: f64) -> Result<f64> {
    let var = mu2 - mu1 * mu1;
    if mu1 < 0.0 || var < -1e-12 * mu2.abs() {
        return Err(Error::InvalidArgument(format!(
            "moments mu1={mu1}, mu2={mu2} give a negative variance"
        )));
    }
    let var = var.max(0.0);
    Ok((mu1.ln_1p() - var / (2.0 * (1.0 + mu2).powi(2))) / std::f64::consts::LN_2)
}

/// Taylor ergodic capacity of γ_R.
pub fn ec_rps(hp: &HankelProduct, rho: f64) -> Result<f64> {
    ec_taylor(gamma_r_moment(hp, 1, rho)?, gamma_r_moment(hp, 2, rho)?)
}
