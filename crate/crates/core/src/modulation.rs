//! Binary modulation schemes and their conditional error probabilities.

use std::fmt;
use std::str::FromStr;

use crate::numerics::gauss_q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulation {
    Bpsk,
    Bfsk,
    Bdpsk,
}

impl Modulation {
    pub const ALL: [Modulation; 3] = [Modulation::Bpsk, Modulation::Bfsk, Modulation::Bdpsk];

    /// (p, q) of the conditional error probability Γ(p, qγ)/(2Γ(p)).
    pub fn pq(self) -> (f64, f64) {
        match self {
            Modulation::Bpsk => (0.5, 1.0),
            Modulation::Bfsk => (0.5, 0.5),
            Modulation::Bdpsk => (1.0, 1.0),
        }
    }

    /// `a` in Q(√(2aγ)) for coherent schemes.
    pub fn coherent_gain(self) -> Option<f64> {
        match self {
            Modulation::Bpsk => Some(1.0),
            Modulation::Bfsk => Some(0.5),
            Modulation::Bdpsk => None,
        }
    }

    /// Bit error probability at instantaneous SNR `gamma`.
    pub fn conditional_ber(self, gamma: f64) -> f64 {
        match self.coherent_gain() {
            Some(a) => gauss_q((2.0 * a * gamma).sqrt()),
            None => 0.5 * (-gamma).exp(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Modulation::Bpsk => "bpsk",
            Modulation::Bfsk => "bfsk",
            Modulation::Bdpsk => "bdpsk",
        }
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Modulation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bpsk" => Ok(Modulation::Bpsk),
            "bfsk" => Ok(Modulation::Bfsk),
            "bdpsk" => Ok(Modulation::Bdpsk),
            other => Err(format!("unknown modulation '{other}' (expected bpsk, bfsk or bdpsk)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{gamma, upper_incomplete_gamma};

    #[test]
    fn kernels_match_incomplete_gamma_form() {
        for m in Modulation::ALL {
            let (p, q) = m.pq();
            for &g in &[0.01, 0.3, 1.0, 4.0, 12.0] {
                let via_gamma = upper_incomplete_gamma(p, q * g).unwrap() / (2.0 * gamma(p));
                assert!((m.conditional_ber(g) - via_gamma).abs() < 1e-12 * via_gamma.max(1e-300) + 1e-300);
            }
            assert_eq!(m.conditional_ber(0.0), 0.5);
        }
    }

    #[test]
    fn parse_round_trip() {
        for m in Modulation::ALL {
            assert_eq!(m.name().parse::<Modulation>().unwrap(), m);
        }
        assert!("qpsk".parse::<Modulation>().is_err());
    }
}
