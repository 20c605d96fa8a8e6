//! Physical link description and the distribution parameters derived from it.
//!
//! - Pathloss: Ω = (c/(4πf))² r^{−α} with a 1 m reference distance.
//! - Powers are given in dBm and converted as 10^{(dBm−30)/10} W.
//! - Every RIS element shares the same fading parameters.

use thiserror::Error;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("{field} = {value} is invalid: {reason}")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("{0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

fn check(ok: bool, field: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(ScenarioError::Domain {
            field,
            value,
            reason,
        })
    }
}

/// Shape `m` and spread `omega` (= E[x²]) of a Nakagami-m envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NakagamiParams {
    pub m: f64,
    pub omega: f64,
}

impl NakagamiParams {
    pub fn new(m: f64, omega: f64) -> Result<Self> {
        check(m >= 0.5 && m.is_finite(), "m", m, "shape must be finite and at least 0.5")?;
        check(omega > 0.0 && omega.is_finite(), "omega", omega, "spread must be positive")?;
        Ok(NakagamiParams { m, omega })
    }

    /// Ω/m, the scale that appears in the transforms.
    pub fn lambda(&self) -> f64 {
        self.omega / self.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    /// Source to RIS distance (m).
    pub r_h: f64,
    /// RIS to destination distance (m).
    pub r_g: f64,
    /// Angle between the two hops at the RIS (degrees).
    pub psi_deg: f64,
    pub direct_link: bool,
}

impl LinkGeometry {
    pub fn validate(&self) -> Result<()> {
        check(self.r_h > 0.0 && self.r_h.is_finite(), "r_h_m", self.r_h, "must be positive")?;
        check(self.r_g > 0.0 && self.r_g.is_finite(), "r_g_m", self.r_g, "must be positive")?;
        check(
            self.psi_deg > 0.0 && self.psi_deg < 180.0,
            "psi_deg",
            self.psi_deg,
            "must lie strictly between 0 and 180",
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseDesign {
    /// Random phase shifting.
    Rps,
    /// Optimal (coherent) phase shifting.
    Ops,
    /// Coherent shifting with b-bit phase quantization.
    Quantized { bits: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub n_elements: usize,
    pub carrier_hz: f64,
    pub alpha: f64,
    pub noise_dbm: f64,
    pub tx_power_dbm: f64,
    pub m_h: f64,
    pub m_g: f64,
    /// Direct-link shape; present exactly when `geometry.direct_link` is set.
    pub m_d: Option<f64>,
    pub geometry: LinkGeometry,
    pub phase_design: PhaseDesign,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        check(self.n_elements >= 1, "n_elements", self.n_elements as f64, "need at least one element")?;
        check(self.carrier_hz > 0.0 && self.carrier_hz.is_finite(), "carrier_hz", self.carrier_hz, "must be positive")?;
        check(self.alpha >= 2.0 && self.alpha.is_finite(), "alpha", self.alpha, "pathloss exponent must be at least 2")?;
        check(self.noise_dbm.is_finite(), "noise_dbm", self.noise_dbm, "must be finite")?;
        check(self.tx_power_dbm.is_finite(), "tx_power_dbm", self.tx_power_dbm, "must be finite")?;
        check(self.m_h >= 0.5 && self.m_h.is_finite(), "m_h", self.m_h, "shape must be at least 0.5")?;
        check(self.m_g >= 0.5 && self.m_g.is_finite(), "m_g", self.m_g, "shape must be at least 0.5")?;
        self.geometry.validate()?;
        match (self.geometry.direct_link, self.m_d) {
            (true, Some(m)) => check(m >= 0.5 && m.is_finite(), "m_d", m, "shape must be at least 0.5")?,
            (true, None) => {
                return Err(ScenarioError::Inconsistent(
                    "direct link enabled but m_d is missing".into(),
                ))
            }
            (false, Some(_)) => {
                return Err(ScenarioError::Inconsistent(
                    "m_d given but the direct link is disabled".into(),
                ))
            }
            (false, None) => {}
        }
        if let PhaseDesign::Quantized { bits } = self.phase_design {
            check(bits >= 1, "bits", bits as f64, "quantization needs at least one bit")?;
        }
        Ok(())
    }

    pub fn derive(&self) -> Result<DerivedParams> {
        derive(self)
    }

    /// Homogeneous channel model with physical spreads.
    pub fn link_model(&self) -> Result<LinkModel> {
        let d = self.derive()?;
        Ok(LinkModel {
            n_elements: self.n_elements,
            h: NakagamiParams::new(self.m_h, d.omega_h)?,
            g: NakagamiParams::new(self.m_g, d.omega_g)?,
            direct: match (self.m_d, d.omega_d) {
                (Some(m), Some(o)) => Some(NakagamiParams::new(m, o)?),
                _ => None,
            },
            rho: d.rho,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Transmit power over noise power (linear).
    pub rho: f64,
    /// Ω_h Ω_g / (m_h m_g).
    pub lambda_n: f64,
    /// Ω_d / m_d.
    pub lambda_d: Option<f64>,
    pub omega_h: f64,
    pub omega_g: f64,
    pub omega_d: Option<f64>,
}

/// The fading description consumed by the analytical and simulation modules:
/// N identical cascaded elements, an optional direct path, and the SNR scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkModel {
    pub n_elements: usize,
    pub h: NakagamiParams,
    pub g: NakagamiParams,
    pub direct: Option<NakagamiParams>,
    pub rho: f64,
}

impl LinkModel {
    pub fn lambda_n(&self) -> f64 {
        self.h.lambda() * self.g.lambda()
    }

    /// E|Σ X_n e^{jφ_n} + |h_d| e^{jφ_d}|² for independent uniform phases.
    pub fn mean_incoherent_power(&self) -> f64 {
        self.n_elements as f64 * self.h.omega * self.g.omega + self.direct.map_or(0.0, |d| d.omega)
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Mean power gain Ω = (λ/4π)² r^{−α} of a hop of length `distance_m`.
pub fn pathloss_omega(distance_m: f64, carrier_hz: f64, alpha: f64) -> Result<f64> {
    check(distance_m >= 1.0, "distance_m", distance_m, "below the 1 m reference distance")?;
    check(alpha >= 2.0, "alpha", alpha, "pathloss exponent must be at least 2")?;
    check(carrier_hz > 0.0, "carrier_hz", carrier_hz, "must be positive")?;
    let wavelength = SPEED_OF_LIGHT / carrier_hz;
    let zeta = (wavelength / (4.0 * std::f64::consts::PI)).powi(2);
    Ok(zeta * distance_m.powf(-alpha))
}

/// Source to destination distance by the cosine law.
pub fn direct_distance(geom: &LinkGeometry) -> f64 {
    let psi = geom.psi_deg.to_radians();
    let d2 = geom.r_h * geom.r_h + geom.r_g * geom.r_g - 2.0 * geom.r_h * geom.r_g * psi.cos();
    d2.max(0.0).sqrt()
}

/// Nakagami shape matching a Ricean channel with factor K.
pub fn ricean_k_to_m(k_factor: f64) -> f64 {
    let r = k_factor / (1.0 + k_factor);
    1.0 / (1.0 - r * r)
}

pub fn derive(config: &ScenarioConfig) -> Result<DerivedParams> {
    config.validate()?;
    let geom = &config.geometry;
    let omega_h = pathloss_omega(geom.r_h, config.carrier_hz, config.alpha)?;
    let omega_g = pathloss_omega(geom.r_g, config.carrier_hz, config.alpha)?;
    let omega_d = if geom.direct_link {
        Some(pathloss_omega(direct_distance(geom), config.carrier_hz, config.alpha)?)
    } else {
        None
    };
    let rho = dbm_to_watts(config.tx_power_dbm) / dbm_to_watts(config.noise_dbm);
    Ok(DerivedParams {
        rho,
        lambda_n: omega_h * omega_g / (config.m_h * config.m_g),
        lambda_d: omega_d.zip(config.m_d).map(|(o, m)| o / m),
        omega_h,
        omega_g,
        omega_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn geometry(r_h: f64, r_g: f64, psi_deg: f64) -> LinkGeometry {
        LinkGeometry {
            r_h,
            r_g,
            psi_deg,
            direct_link: true,
        }
    }

    #[test]
    fn reference_distance_gives_zeta() {
        let zeta = (SPEED_OF_LIGHT / 2.45e9 / (4.0 * std::f64::consts::PI)).powi(2);
        assert_relative_eq!(pathloss_omega(1.0, 2.45e9, 3.1).unwrap(), zeta);
        assert!((zeta - 9.48e-5).abs() < 0.01e-5);
        assert_relative_eq!(pathloss_omega(20.0, 2.45e9, 2.5).unwrap(), zeta * 20f64.powf(-2.5), max_relative = 1e-14);
        let a = pathloss_omega(7.0, 1e9, 2.0).unwrap();
        let b = pathloss_omega(14.0, 1e9, 2.0).unwrap();
        assert_relative_eq!(a / b, 4.0, max_relative = 1e-14);
        assert!(pathloss_omega(0.5, 1e9, 2.0).is_err());
    }

    #[test]
    fn pathloss_is_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let v = pathloss_omega(1.5 + i as f64, 2.45e9, 2.5).unwrap();
            assert!(v < prev);
            prev = v;
        }
        let low = pathloss_omega(30.0, 2.45e9, 2.2).unwrap();
        let high = pathloss_omega(30.0, 2.45e9, 3.0).unwrap();
        assert!(high < low);
    }

    #[test]
    fn cosine_law() {
        assert!((direct_distance(&geometry(20.0, 20.0, 86.0)) - 27.3).abs() < 0.05);
        assert_relative_eq!(direct_distance(&geometry(3.0, 4.0, 90.0)), 5.0, max_relative = 1e-12);
        assert!(direct_distance(&geometry(10.0, 10.0, 1e-9)) < 1e-8);
        let mut prev = 0.0;
        for i in 1..180 {
            let d = direct_distance(&geometry(12.0, 30.0, i as f64));
            assert_relative_eq!(d, direct_distance(&geometry(30.0, 12.0, i as f64)), max_relative = 1e-14);
            assert!(d > prev);
            prev = d;
        }
    }

    #[test]
    fn ricean_mapping() {
        assert_eq!(ricean_k_to_m(0.0), 1.0);
        assert_relative_eq!(ricean_k_to_m(10.0), 121.0 / 21.0, max_relative = 1e-14);
        assert!(ricean_k_to_m(1e8) > 1e7);
        let mut prev = 0.0;
        for i in 0..100 {
            let m = ricean_k_to_m(0.1 * i as f64);
            assert!(m > prev);
            prev = m;
        }
    }

    fn fig2_config() -> ScenarioConfig {
        ScenarioConfig {
            n_elements: 4,
            carrier_hz: 2.45e9,
            alpha: 2.5,
            noise_dbm: -85.0,
            tx_power_dbm: 0.0,
            m_h: 1.5,
            m_g: 2.5,
            m_d: None,
            geometry: LinkGeometry {
                r_h: 20.0,
                r_g: 20.0,
                psi_deg: 86.0,
                direct_link: false,
            },
            phase_design: PhaseDesign::Rps,
        }
    }

    #[test]
    fn derived_parameters() {
        let d = fig2_config().derive().unwrap();
        assert_relative_eq!(d.rho, 10f64.powf(8.5), max_relative = 1e-12);
        let omega = pathloss_omega(20.0, 2.45e9, 2.5).unwrap();
        assert_relative_eq!(d.lambda_n, omega * omega / 3.75, max_relative = 1e-14);
        assert!(d.lambda_d.is_none());

        let mut cfg = fig2_config();
        cfg.geometry.direct_link = true;
        assert!(cfg.derive().is_err());
        cfg.m_d = Some(2.0);
        let d = cfg.derive().unwrap();
        let od = pathloss_omega(direct_distance(&cfg.geometry), 2.45e9, 2.5).unwrap();
        assert_relative_eq!(d.lambda_d.unwrap(), od / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = fig2_config();
        cfg.alpha = 1.5;
        assert!(cfg.validate().is_err());
        let mut cfg = fig2_config();
        cfg.n_elements = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = fig2_config();
        cfg.phase_design = PhaseDesign::Quantized { bits: 0 };
        assert!(cfg.validate().is_err());
        assert!(NakagamiParams::new(0.3, 1.0).is_err());
    }
}
