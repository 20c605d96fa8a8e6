//! Monte-Carlo oracle: exact channel realizations and estimators.
//!
//! Trials are drawn in fixed-size chunks; chunk `k` uses substream `k` of
//! a ChaCha8 generator seeded from the user seed, and per-chunk partial sums
//! are merged in chunk order. Results are therefore bit-identical for any
//! number of worker threads.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Gamma};

use crate::modulation::Modulation;
use crate::scenario::{LinkModel, NakagamiParams, PhaseDesign, ScenarioConfig};
use crate::{Error, Result};

/// Trials per substream.
pub const CHUNK: usize = 1 << 16;

/// Smallest trial count the estimators accept.
pub const MIN_TRIALS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_trials: usize,
    pub seed: u64,
}

impl McEstimate {
    /// (estimate − reference)/std_error; infinite when a zero-variance
    /// estimate disagrees with the reference.
    pub fn z_score(&self, reference: f64) -> f64 {
        let d = self.value - reference;
        if self.std_error > 0.0 {
            d / self.std_error
        } else if d == 0.0 {
            0.0
        } else {
            d.signum() * f64::INFINITY
        }
    }
}

/// How the reflected phase errors φ_n are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseModel {
    /// φ_n = θ_h + θ_g − θ_n with Nakagami channel phases and uniform θ_n.
    ExactNakagami,
    /// φ_n ~ U[0, 2π).
    Uniform,
    /// φ_n ~ U[−π/2^b, π/2^b).
    Quantized(u32),
}

impl PhaseModel {
    /// The model matching a configured phase design.
    pub fn for_design(design: PhaseDesign) -> Self {
        match design {
            PhaseDesign::Quantized { bits } => PhaseModel::Quantized(bits),
            _ => PhaseModel::ExactNakagami,
        }
    }
}

pub fn sample_nakagami_envelope<R: Rng + ?Sized>(params: &NakagamiParams, rng: &mut R) -> f64 {
    let g = Gamma::new(params.m, params.omega / params.m).expect("validated Nakagami parameters");
    g.sample(rng).sqrt()
}

/// Phase sampler for the density Γ(m)|sin 2θ|^{m−1}/(2^m Γ²(m/2)) on [−π, π).
#[derive(Debug, Clone)]
pub struct PhaseSampler {
    beta: Beta<f64>,
}

impl PhaseSampler {
    pub fn new(m: f64) -> Result<Self> {
        if !(m >= 0.5 && m.is_finite()) {
            return Err(Error::InvalidArgument(format!("phase shape m must be at least 0.5, got {m}")));
        }
        Ok(PhaseSampler {
            beta: Beta::new(0.5 * m, 0.5).map_err(|e| Error::InvalidArgument(e.to_string()))?,
        })
    }

    /// With x = 2θ folded to [0, π/2], sin²x ~ Beta(m/2, 1/2); the fold is
    /// undone by a mirror about π/2 and a shift by one of four multiples of π.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = self.beta.sample(rng);
        let mut x = u.sqrt().min(1.0).asin();
        let bits: u32 = rng.random();
        if bits & 1 == 1 {
            x = PI - x;
        }
        let k = ((bits >> 1) & 3) as f64 - 2.0;
        0.5 * (x + k * PI)
    }
}

pub fn sample_nakagami_phase<R: Rng + ?Sized>(m: f64, rng: &mut R) -> Result<f64> {
    Ok(PhaseSampler::new(m)?.sample(rng))
}

/// Density of the Nakagami channel phase.
pub fn nakagami_phase_pdf(m: f64, theta: f64) -> f64 {
    use crate::numerics::ln_gamma;
    let log_c = ln_gamma(m).unwrap() - m * LN_2 - 2.0 * ln_gamma(0.5 * m).unwrap();
    let s = (2.0 * theta).sin().abs();
    if m == 1.0 {
        return log_c.exp();
    }
    (log_c + (m - 1.0) * s.ln()).exp()
}

#[derive(Debug, Clone)]
enum Design {
    Coherent,
    Random { phase: PhaseModel, ph: PhaseSampler, pg: PhaseSampler },
    Quantized { half_width: f64 },
}

/// Draws end-to-end SNR realizations for one scenario.
#[derive(Debug, Clone)]
pub struct Simulator {
    n: usize,
    rho: f64,
    h: Gamma<f64>,
    g: Gamma<f64>,
    d: Option<Gamma<f64>>,
    design: Design,
}

fn gamma_dist(p: &NakagamiParams) -> Gamma<f64> {
    Gamma::new(p.m, p.omega / p.m).expect("validated Nakagami parameters")
}

impl Simulator {
    pub fn new(link: &LinkModel, design: PhaseDesign, phase: PhaseModel) -> Result<Self> {
        if link.n_elements == 0 && link.direct.is_none() {
            return Err(Error::InvalidArgument("no signal path".into()));
        }
        let design = match (design, phase) {
            (PhaseDesign::Ops, _) => Design::Coherent,
            (PhaseDesign::Quantized { bits }, PhaseModel::Quantized(b)) if b == bits && b >= 1 => Design::Quantized {
                half_width: PI / 2f64.powi(b as i32),
            },
            (PhaseDesign::Quantized { bits }, _) => {
                return Err(Error::InvalidArgument(format!(
                    "a {bits}-bit quantized design needs the matching quantized phase model"
                )))
            }
            (PhaseDesign::Rps, PhaseModel::Quantized(_)) => {
                return Err(Error::InvalidArgument("random phases cannot use the quantized phase model".into()))
            }
            (PhaseDesign::Rps, phase) => Design::Random {
                phase,
                ph: PhaseSampler::new(link.h.m)?,
                pg: PhaseSampler::new(link.g.m)?,
            },
        };
        Ok(Simulator {
            n: link.n_elements,
            rho: link.rho,
            h: gamma_dist(&link.h),
            g: gamma_dist(&link.g),
            d: link.direct.as_ref().map(gamma_dist),
            design,
        })
    }

    pub fn from_config(config: &ScenarioConfig, phase: PhaseModel) -> Result<Self> {
        Self::new(&config.link_model()?, config.phase_design, phase)
    }

    /// One draw of γ.
    pub fn realize<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let direct = self.d.as_ref().map_or(0.0, |d| d.sample(rng).sqrt());
        match &self.design {
            Design::Coherent => {
                let mut a = direct;
                for _ in 0..self.n {
                    a += (self.h.sample(rng) * self.g.sample(rng)).sqrt();
                }
                self.rho * a * a
            }
            Design::Random { phase, ph, pg } => {
                // only relative phases matter, so the direct path is the reference
                let mut y = Complex64::new(direct, 0.0);
                for _ in 0..self.n {
                    let amp = (self.h.sample(rng) * self.g.sample(rng)).sqrt();
                    let phi = match phase {
                        PhaseModel::ExactNakagami => {
                            ph.sample(rng) + pg.sample(rng) - rng.random_range(-PI..PI)
                        }
                        _ => rng.random_range(0.0..2.0 * PI),
                    };
                    y += Complex64::from_polar(amp, phi);
                }
                self.rho * y.norm_sqr()
            }
            Design::Quantized { half_width } => {
                let mut y = Complex64::new(direct, 0.0);
                for _ in 0..self.n {
                    let amp = (self.h.sample(rng) * self.g.sample(rng)).sqrt();
                    y += Complex64::from_polar(amp, rng.random_range(-half_width..*half_width));
                }
                self.rho * y.norm_sqr()
            }
        }
    }

    /// `n_trials` draws in the canonical chunked order.
    pub fn samples(&self, n_trials: usize, seed: u64) -> Vec<f64> {
        let chunks = chunk_sizes(n_trials);
        let parts = map_chunks(&chunks, |k, len| {
            let mut rng = RngStream::new(seed, k as u64).rng();
            (0..len).map(|_| self.realize(&mut rng)).collect::<Vec<_>>()
        });
        parts.concat()
    }
}

/// One SNR draw for a configuration.
pub fn realize_snr<R: Rng + ?Sized>(config: &ScenarioConfig, phase: PhaseModel, rng: &mut R) -> Result<f64> {
    Ok(Simulator::from_config(config, phase)?.realize(rng))
}

fn chunk_sizes(n: usize) -> Vec<usize> {
    let mut v = vec![CHUNK; n / CHUNK];
    if !n.is_multiple_of(CHUNK) {
        v.push(n % CHUNK);
    }
    v
}

#[cfg(feature = "parallel")]
fn map_chunks<T: Send, F: Fn(usize, usize) -> T + Sync>(chunks: &[usize], f: F) -> Vec<T> {
    use rayon::prelude::*;
    chunks.par_iter().enumerate().map(|(k, &len)| f(k, len)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_chunks<T, F: Fn(usize, usize) -> T>(chunks: &[usize], f: F) -> Vec<T> {
    chunks.iter().enumerate().map(|(k, &len)| f(k, len)).collect()
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    sum: f64,
    sumsq: f64,
    count: usize,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sumsq += x * x;
        self.count += 1;
    }

    fn merge(&mut self, o: &Moments) {
        self.sum += o.sum;
        self.sumsq += o.sumsq;
        self.count += o.count;
    }

    fn estimate(&self, seed: u64) -> McEstimate {
        let n = self.count as f64;
        let mean = self.sum / n;
        let var = ((self.sumsq - n * mean * mean) / (n - 1.0)).max(0.0);
        McEstimate {
            value: mean,
            std_error: (var / n).sqrt(),
            n_trials: self.count,
            seed,
        }
    }
}

/// Sample means of several functions of γ over one shared set of draws.
pub fn estimate_many(sim: &Simulator, kernels: &[&(dyn Fn(f64) -> f64 + Sync)], n_trials: usize, seed: u64) -> Result<Vec<McEstimate>> {
    if n_trials < MIN_TRIALS {
        return Err(Error::InvalidArgument(format!("need at least {MIN_TRIALS} trials, got {n_trials}")));
    }
    let chunks = chunk_sizes(n_trials);
    let parts = map_chunks(&chunks, |k, len| {
        let mut rng = RngStream::new(seed, k as u64).rng();
        let mut acc = vec![Moments::default(); kernels.len()];
        for _ in 0..len {
            let g = sim.realize(&mut rng);
            for (a, f) in acc.iter_mut().zip(kernels) {
                a.push(f(g));
            }
        }
        acc
    });
    let mut total = vec![Moments::default(); kernels.len()];
    for part in &parts {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    Ok(total.iter().map(|m| m.estimate(seed)).collect())
}

fn binomial(mut e: McEstimate) -> McEstimate {
    let p = e.value;
    e.std_error = (p * (1.0 - p) / e.n_trials as f64).sqrt();
    e
}

/// Empirical CDF at each threshold from a single pass of draws.
pub fn estimate_op_grid(sim: &Simulator, thresholds: &[f64], n_trials: usize, seed: u64) -> Result<Vec<McEstimate>> {
    let kernels: Vec<Box<dyn Fn(f64) -> f64 + Sync>> = thresholds
        .iter()
        .map(|&t| Box::new(move |g: f64| if g <= t { 1.0 } else { 0.0 }) as Box<dyn Fn(f64) -> f64 + Sync>)
        .collect();
    let refs: Vec<&(dyn Fn(f64) -> f64 + Sync)> = kernels.iter().map(|k| k.as_ref()).collect();
    Ok(estimate_many(sim, &refs, n_trials, seed)?.into_iter().map(binomial).collect())
}

pub fn estimate_op_sim(sim: &Simulator, gamma_th: f64, n_trials: usize, seed: u64) -> Result<McEstimate> {
    Ok(estimate_op_grid(sim, &[gamma_th], n_trials, seed)?[0])
}

pub fn estimate_ber_sim(sim: &Simulator, modulation: Modulation, n_trials: usize, seed: u64) -> Result<McEstimate> {
    let k = move |g: f64| modulation.conditional_ber(g);
    Ok(estimate_many(sim, &[&k], n_trials, seed)?[0])
}

pub fn estimate_ec_sim(sim: &Simulator, n_trials: usize, seed: u64) -> Result<McEstimate> {
    let k = |g: f64| g.ln_1p() / LN_2;
    Ok(estimate_many(sim, &[&k], n_trials, seed)?[0])
}

pub fn estimate_op(config: &ScenarioConfig, phase: PhaseModel, gamma_th: f64, n_trials: usize, seed: u64) -> Result<McEstimate> {
    estimate_op_sim(&Simulator::from_config(config, phase)?, gamma_th, n_trials, seed)
}

pub fn estimate_ber(
    config: &ScenarioConfig,
    phase: PhaseModel,
    modulation: Modulation,
    n_trials: usize,
    seed: u64,
) -> Result<McEstimate> {
    estimate_ber_sim(&Simulator::from_config(config, phase)?, modulation, n_trials, seed)
}

pub fn estimate_ec(config: &ScenarioConfig, phase: PhaseModel, n_trials: usize, seed: u64) -> Result<McEstimate> {
    estimate_ec_sim(&Simulator::from_config(config, phase)?, n_trials, seed)
}

/// Two-sided Kolmogorov-Smirnov distance between samples and a CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}
