//! End-to-end SNR under optimal (coherent) phase shifting.
//!
//! The received amplitude is A = Σ|h_n||g_n| + |h_d|, so γ_C = ρA² and all
//! statistics follow from the characteristic function of A, which factors
//! over the paths. The CDF is recovered by Gil-Pelaez inversion in the
//! normalized variable u = κt, κ² = E[A²].

use std::f64::consts::PI;

use crate::modulation::Modulation;
use crate::numerics::{
    gamma, hyp1f1, hyp2f1, integrate, integrate_semi_infinite_scaled, ln_gamma, ComplexValue,
    Oscillation, QuadratureSpec,
};
use crate::rps::{x_moment, DoubleNakagami};
use crate::scenario::{LinkModel, NakagamiParams};
use crate::trap::ErrorTrap;
use crate::{Error, Result};

/// k-th raw moment of a Nakagami amplitude.
pub fn nakagami_moment(params: &NakagamiParams, k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let half = 0.5 * k as f64;
    (half * params.lambda().ln() + ln_gamma(params.m + half).unwrap() - ln_gamma(params.m).unwrap()).exp()
}

/// Characteristic function E[e^{jt|h|}] of a Nakagami amplitude.
pub fn chf_direct(params: &NakagamiParams, t: f64) -> Result<ComplexValue> {
    let (m, lambda) = (params.m, params.lambda());
    let x = -0.25 * lambda * t * t;
    let re = hyp1f1(m, 0.5, x)?;
    let ratio = (ln_gamma(m + 0.5)? - ln_gamma(m)?).exp();
    let im = t * lambda.sqrt() * ratio * hyp1f1(m + 0.5, 1.5, x)?;
    Ok(ComplexValue::new(re, im))
}

/// Characteristic function E[e^{jtX}] of the cascaded amplitude X = |h||g|.
///
/// The closed form involves ₂F₁(2m_h, m_h−m_g+½; m_h+m_g+½; Z(t)) with |Z| = 1;
/// X is symmetric in the two hops, so the shapes are ordered to make
/// Re(c−a−b) = 2(m_g−m_h) ≥ 0.
pub fn chf_cascade(dn: &DoubleNakagami, t: f64) -> Result<ComplexValue> {
    let (mh, mg) = if dn.h.m <= dn.g.m {
        (dn.h.m, dn.g.m)
    } else {
        (dn.g.m, dn.h.m)
    };
    if t == 0.0 {
        return Ok(ComplexValue::new(1.0, 0.0));
    }
    let beta = 2.0 / dn.lambda().sqrt();
    let one = ComplexValue::new(1.0, 0.0);
    let jt = ComplexValue::new(0.0, t / beta);
    let z = -(one + jt) / (one - jt);
    let log_c = mh * 4f64.ln() + ln_gamma(mh + 0.5)? + ln_gamma(mg + 0.5)?
        - 0.5 * PI.ln()
        - ln_gamma(mh + mg + 0.5)?;
    let f = hyp2f1(2.0 * mh, mh - mg + 0.5, mh + mg + 0.5, z).map_err(|e| {
        Error::Unsupported(format!("cascade CHF at m_h={mh}, m_g={mg}, t={t}: {e}"))
    })?;
    Ok((one - jt).powf(-2.0 * mh) * f * log_c.exp())
}

/// CHF of the amplitude sum A = Σ X_n + |h_d|.
#[derive(Debug, Clone)]
pub struct AmplitudeChf {
    factors: Vec<(DoubleNakagami, usize)>,
    direct: Option<NakagamiParams>,
    mean: f64,
    kappa: f64,
    std: f64,
}

impl AmplitudeChf {
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
        let mut mean = 0.0;
        let mut var = 0.0;
        for (dn, c) in &factors {
            let m1 = x_moment(dn, 1);
            mean += *c as f64 * m1;
            var += *c as f64 * (x_moment(dn, 2) - m1 * m1);
        }
        if let Some(d) = &direct {
            let m1 = nakagami_moment(d, 1);
            mean += m1;
            var += d.omega - m1 * m1;
        }
        let var = var.max(0.0);
        Ok(AmplitudeChf {
            factors,
            direct,
            mean,
            kappa: (var + mean * mean).sqrt(),
            std: var.sqrt(),
        })
    }

    pub fn from_link(link: &LinkModel) -> Self {
        let dn = DoubleNakagami::new(link.h, link.g);
        Self::new(&vec![dn; link.n_elements], link.direct).expect("link has at least one element")
    }

    /// √E[A²].
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// E[A].
    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn std_dev(&self) -> f64 {
        self.std
    }

    pub fn has_direct(&self) -> bool {
        self.direct.is_some()
    }

    pub fn n_elements(&self) -> usize {
        self.factors.iter().map(|(_, c)| c).sum()
    }

    pub fn cascades(&self) -> Vec<DoubleNakagami> {
        self.factors
            .iter()
            .flat_map(|(dn, c)| std::iter::repeat_n(*dn, *c))
            .collect()
    }

    pub fn direct(&self) -> Option<NakagamiParams> {
        self.direct
    }

    pub fn eval(&self, t: f64) -> Result<ComplexValue> {
        let mut v = match &self.direct {
            Some(d) => chf_direct(d, t)?,
            None => ComplexValue::new(1.0, 0.0),
        };
        for (dn, count) in &self.factors {
            v *= chf_cascade(dn, t)?.powi(*count as i32);
        }
        Ok(v)
    }

    /// Ψ(u/κ).
    pub fn eval_normalized(&self, u: f64) -> Result<ComplexValue> {
        self.eval(u / self.kappa)
    }

    /// Raw moments E[A^j], j = 0..=order, by convolving the exponential
    /// generating functions of the independent summands.
    pub fn amplitude_moments(&self, order: usize) -> Vec<f64> {
        let mut acc = vec![0.0; order + 1];
        acc[0] = 1.0;
        let mut fact = vec![1.0; order + 1];
        for j in 1..=order {
            fact[j] = fact[j - 1] * j as f64;
        }
        let mut convolve = |moments: &dyn Fn(u32) -> f64| {
            let e: Vec<f64> = (0..=order).map(|j| moments(j as u32) / fact[j]).collect();
            let mut next = vec![0.0; order + 1];
            for i in 0..=order {
                for j in 0..=order - i {
                    next[i + j] += acc[i] * e[j];
                }
            }
            acc = next;
        };
        for (dn, count) in &self.factors {
            for _ in 0..*count {
                convolve(&|j| x_moment(dn, j));
            }
        }
        if let Some(d) = &self.direct {
            convolve(&|j| nakagami_moment(d, j));
        }
        acc.iter().zip(&fact).map(|(a, f)| a * f).collect()
    }

    // Integration range over which the bulk of the CHF oscillates; beyond it
    // only the algebraic tail from the density near zero remains.
    fn head_limit(&self) -> f64 {
        let mu = self.mean / self.kappa;
        let sigma = (self.std / self.kappa).max(1e-6);
        (16.0 * PI / mu).max(12.0 / sigma).min(1e5)
    }
}

/// k-th raw moment of γ_C for any k, from exact amplitude moments.
pub fn gamma_c_moment(chf: &AmplitudeChf, k: usize, rho: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("moment order must be at least 1".into()));
    }
    Ok(rho.powi(k as i32) * chf.amplitude_moments(2 * k)[2 * k])
}

/// The same moment as a literal nested binomial expansion of (ΣX_n + |h_d|)^{2k}.
/// The term count grows combinatorially, so k > 2 is refused beyond 8 paths.
pub fn gamma_c_moment_nested(
    cascades: &[DoubleNakagami],
    direct: Option<NakagamiParams>,
    k: usize,
    rho: f64,
) -> Result<f64> {
    let paths = cascades.len() + usize::from(direct.is_some());
    if k == 0 || paths == 0 {
        return Err(Error::InvalidArgument("need k ≥ 1 and at least one path".into()));
    }
    if k > 2 && paths > 8 {
        return Err(Error::Unsupported(format!(
            "nested expansion with k = {k} over {paths} paths; use gamma_c_moment"
        )));
    }
    let mut moment_fns: Vec<Box<dyn Fn(usize) -> f64 + '_>> = cascades
        .iter()
        .map(|dn| Box::new(move |j: usize| x_moment(dn, j as u32)) as Box<dyn Fn(usize) -> f64>)
        .collect();
    if let Some(d) = direct {
        moment_fns.push(Box::new(move |j: usize| nakagami_moment(&d, j as u32)));
    }
    fn nested(fns: &[Box<dyn Fn(usize) -> f64 + '_>], rem: usize) -> f64 {
        if fns.len() == 1 {
            return fns[0](rem);
        }
        let mut sum = 0.0;
        let mut binom = 1.0;
        for j in 0..=rem {
            if j > 0 {
                binom *= (rem - j + 1) as f64 / j as f64;
            }
            sum += binom * fns[0](j) * nested(&fns[1..], rem - j);
        }
        sum
    }
    Ok(rho.powi(k as i32) * nested(&moment_fns, 2 * k))
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
    }
}

/// ∫_a^∞ f, cut geometrically from `a` on a scale `a`.
fn tail_integral<F: Fn(f64) -> f64>(f: F, a: f64, osc: Oscillation, spec: &QuadratureSpec) -> crate::numerics::Result<f64> {
    let cap = QuadratureSpec {
        truncation_cap: spec.truncation_cap.max(1e6 / a),
        ..*spec
    };
    match osc {
        Oscillation::None => integrate_semi_infinite_scaled(|w| f(a + w), osc, a, &cap).map(|q| q.value),
        _ => integrate_semi_infinite_scaled(|w| f(a + w), osc, 1.0, &cap).map(|q| q.value),
    }
}

/// CDF of γ_C at `gamma` by Gil-Pelaez inversion, written as
/// F = (1/π) ∫ Im{(1 − e^{−juv})Ψ(u)}/u du with v = √(γ/ρ)/κ.
pub fn gamma_c_cdf(chf: &AmplitudeChf, gamma: f64, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("rho", rho)?;
    if gamma < 0.0 || gamma.is_nan() {
        return Err(Error::InvalidArgument(format!("gamma must be nonnegative, got {gamma}")));
    }
    if gamma == 0.0 {
        // A > 0 almost surely
        return Ok(0.0);
    }
    if gamma.is_infinite() {
        return Ok(1.0);
    }
    let v = (gamma / rho).sqrt() / chf.kappa();
    let trap = ErrorTrap::new();
    let psi = |u: f64| match chf.eval_normalized(u) {
        Ok(z) => z,
        Err(e) => ComplexValue::new(trap.value::<Error>(Err(e)), 0.0),
    };
    let head_f = |u: f64| {
        if u == 0.0 {
            return v;
        }
        let rot = ComplexValue::new(0.0, -u * v).exp();
        ((ComplexValue::new(1.0, 0.0) - rot) * psi(u)).im / u
    };
    let limit = chf.head_limit();
    let sum = (|| -> crate::numerics::Result<f64> {
        let head = integrate(head_f, 0.0, limit, spec)?.value;
        let t1 = tail_integral(|u| psi(u).im / u, limit, Oscillation::None, spec)?;
        let t2 = tail_integral(
            |u| (ComplexValue::new(0.0, -u * v).exp() * psi(u)).im / u,
            limit,
            Oscillation::Harmonic { frequency: v },
            spec,
        )?;
        Ok(head + t1 - t2)
    })();
    let total = trap.finish(sum)?;
    Ok((total / PI).clamp(0.0, 1.0))
}

/// Outage probability P(γ_C ≤ γ_th).
pub fn op_ops(chf: &AmplitudeChf, gamma_th: f64, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    gamma_c_cdf(chf, gamma_th, rho, spec)
}

/// Average BER under coherent phase shifting.
///
/// BPSK and BFSK use (1/π) ∫ (1 − e^{−t²/2}) Im{Ψ(√(2aρ)t)}/t dt, which equals
/// 1/2 − (1/π) ∫ e^{−t²/2} Im{Ψ(√(2aρ)t)}/t dt without the cancellation at
/// high SNR. BDPSK averages its conditional error over the inverted CDF.
pub fn ber_ops(chf: &AmplitudeChf, rho: f64, modulation: Modulation, spec: &QuadratureSpec) -> Result<f64> {
    check_positive("rho", rho)?;
    match modulation.coherent_gain() {
        Some(a) => ber_ops_coherent(chf, rho, a, spec),
        None => ber_from_cdf(|g| gamma_c_cdf(chf, g, rho, spec), modulation, rho * chf.kappa().powi(2), spec),
    }
}

fn ber_ops_coherent(chf: &AmplitudeChf, rho: f64, a: f64, spec: &QuadratureSpec) -> Result<f64> {
    let s = (2.0 * a * rho).sqrt() * chf.kappa();
    let trap = ErrorTrap::new();
    let f = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        let kernel = -(-0.5 * (u / s).powi(2)).exp_m1();
        let im = match chf.eval_normalized(u) {
            Ok(z) => z.im,
            Err(e) => trap.value::<Error>(Err(e)),
        };
        kernel * im / u
    };
    let limit = chf.head_limit();
    let knee = s.min(limit);
    let sum = (|| -> crate::numerics::Result<f64> {
        let a1 = integrate(f, 0.0, knee, spec)?.value;
        let a2 = integrate(f, knee, limit, spec)?.value;
        let t = tail_integral(f, limit, Oscillation::None, spec)?;
        Ok(a1 + a2 + t)
    })();
    let total = trap.finish(sum)?;
    Ok((total / PI).clamp(0.0, 0.5))
}

/// Average BER (q^p/2Γ(p)) ∫ γ^{p−1} e^{−qγ} F(γ) dγ for an arbitrary CDF.
/// `snr_scale` is the mean SNR, used to place the integration breakpoints.
pub fn ber_from_cdf<F: Fn(f64) -> Result<f64>>(
    cdf: F,
    modulation: Modulation,
    snr_scale: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (p, q) = modulation.pq();
    let trap = ErrorTrap::new();
    let f = |g: f64| {
        if g == 0.0 {
            return 0.0;
        }
        g.powf(p - 1.0) * (-q * g).exp() * trap.value(cdf(g))
    };
    let scale = (1.0 / q).min(snr_scale).max(1e-300);
    let outer = QuadratureSpec {
        truncation_cap: spec.truncation_cap.max(800.0 / (q * scale)),
        ..*spec
    };
    let r = trap.finish(integrate_semi_infinite_scaled(f, Oscillation::None, scale, &outer))?;
    Ok((q.powf(p) / (2.0 * gamma(p)) * r.value).clamp(0.0, 0.5))
}

/// Taylor ergodic capacity of γ_C.
pub fn ec_ops(chf: &AmplitudeChf, rho: f64) -> Result<f64> {
    crate::rps::ec_taylor(gamma_c_moment(chf, 1, rho)?, gamma_c_moment(chf, 2, rho)?)
}

/// Diversity order min{Σ m_h, Σ m_g} of coherent combining over the elements.
pub fn diversity_order_ops(m_h: &[f64], m_g: &[f64]) -> f64 {
    let sh: f64 = m_h.iter().sum();
    let sg: f64 = m_g.iter().sum();
    sh.min(sg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit(m: f64) -> NakagamiParams {
        NakagamiParams::new(m, 1.0).unwrap()
    }

    fn close(a: ComplexValue, b: ComplexValue, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    /// Cascade with Λ = 1 and the given shapes.
    fn cascade(mh: f64, mg: f64) -> DoubleNakagami {
        DoubleNakagami::new(NakagamiParams::new(mh, mh).unwrap(), NakagamiParams::new(mg, mg).unwrap())
    }

    #[test]
    fn cascade_chf_reference() {
        // mpmath, closed form confirmed against direct quadrature
        let cases = [
            (1.0, 1.0, 1.0, ComplexValue::new(0.627_836_423_614_398_4, 0.561_985_178_483_258_1)),
            (1.5, 2.5, 1.0, ComplexValue::new(0.0, 0.679_061_090_525_420_1)),
            (1.5, 2.5, 7.0, ComplexValue::new(-0.005_668_728_580_645_401, -0.010_765_724_530_276_069)),
            (0.5, 3.0, 2.5, ComplexValue::new(0.059_430_362_298_863_92, 0.352_396_221_761_146_8)),
            (1.5, 2.5, 1e4, ComplexValue::new(-1.279_999_808e-18, -3.395_311_667_670_582e-12)),
            (1.0, 1.0, 1e3, ComplexValue::new(-2.363_087_533_053_678e-5, 6.283_147_608_256_238e-6)),
        ];
        for (mh, mg, t, v) in cases {
            let got = chf_cascade(&cascade(mh, mg), t).unwrap();
            assert!(close(got, v, 1e-8), "({mh},{mg},{t}): {got} vs {v}");
        }
        let m = 121.0 / 21.0;
        let got = chf_cascade(&cascade(m, m), 40.0).unwrap();
        assert!(close(got, ComplexValue::new(-1.487_200_761_276_531e-15, -3.889_138_363_398_189e-15), 1e-7));
    }

    #[test]
    fn cascade_chf_swapped_shapes_and_scaling() {
        // (2.5, 1.5) with Λ = 0.7
        let dn = DoubleNakagami::new(NakagamiParams::new(2.5, 2.5 * 0.7).unwrap(), unit(1.5));
        let dn = DoubleNakagami::new(dn.h, NakagamiParams::new(1.5, 1.5).unwrap());
        assert_relative_eq!(dn.lambda(), 0.7, max_relative = 1e-15);
        let got = chf_cascade(&dn, 3.0).unwrap();
        let v = ComplexValue::new(-0.193_444_128_685_972_97, 0.024_244_902_571_314_776);
        assert!(close(got, v, 1e-9), "{got}");
    }

    #[test]
    fn chf_normalization_and_symmetry() {
        for (mh, mg) in [(0.5, 3.0), (1.0, 1.0), (1.5, 2.5), (5.76, 5.76)] {
            let dn = cascade(mh, mg);
            assert!(close(chf_cascade(&dn, 0.0).unwrap(), ComplexValue::new(1.0, 0.0), 1e-15));
            assert!(close(chf_cascade(&dn, 1e-9).unwrap(), ComplexValue::new(1.0, 0.0), 1e-8));
            for i in 1..50 {
                let t = 0.37 * i as f64;
                let a = chf_cascade(&dn, t).unwrap();
                let b = chf_cascade(&dn, -t).unwrap();
                assert!(close(a.conj(), b, 1e-12));
                assert!(a.norm() <= 1.0 + 1e-12);
            }
            // derivative at zero is j·E[X]
            let h = 1e-4;
            let d = (chf_cascade(&dn, h).unwrap() - chf_cascade(&dn, -h).unwrap()) / (2.0 * h);
            assert_relative_eq!(d.im, x_moment(&dn, 1), max_relative = 1e-6);
        }
    }

    #[test]
    fn direct_chf_reference() {
        let cases = [
            (1.0, 1.0, 1.3, ComplexValue::new(0.357_217_449_551_122_7, 0.755_090_270_602_959_5)),
            (2.5, 0.8, 2.0, ComplexValue::new(-0.104_178_181_852_172_23, 0.853_346_738_386_061_8)),
            (121.0 / 21.0, 1.0, 5.0, ComplexValue::new(0.082_274_989_584_959_77, -0.582_941_921_330_089_8)),
        ];
        for (m, omega, t, v) in cases {
            let p = NakagamiParams::new(m, omega).unwrap();
            let got = chf_direct(&p, t).unwrap();
            assert!(close(got, v, 1e-10), "{got} vs {v}");
            assert!(close(chf_direct(&p, -t).unwrap(), v.conj(), 1e-14));
        }
    }

    #[test]
    fn moments_by_generating_function() {
        let dn = cascade(1.5, 2.5);
        let chf = AmplitudeChf::new(&[dn, dn], None).unwrap();
        let expected = 2.0 * x_moment(&dn, 2) + 2.0 * x_moment(&dn, 1).powi(2);
        assert_relative_eq!(gamma_c_moment(&chf, 1, 2.0).unwrap(), 2.0 * expected, max_relative = 1e-13);
        let single = AmplitudeChf::new(&[dn], None).unwrap();
        assert_relative_eq!(gamma_c_moment(&single, 1, 1.0).unwrap(), x_moment(&dn, 2), max_relative = 1e-13);
    }

    #[test]
    fn nested_expansion_agrees() {
        let dns = [cascade(1.5, 2.5), cascade(0.7, 1.2), cascade(3.0, 1.0), cascade(1.5, 2.5)];
        let d = Some(NakagamiParams::new(2.0, 0.4).unwrap());
        let chf = AmplitudeChf::new(&dns, d).unwrap();
        for k in 1..=4 {
            let a = gamma_c_moment(&chf, k, 1.7).unwrap();
            let b = gamma_c_moment_nested(&dns, d, k, 1.7).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
        let many = vec![cascade(1.5, 2.5); 9];
        assert!(gamma_c_moment_nested(&many, None, 2, 1.0).is_ok());
        assert!(matches!(gamma_c_moment_nested(&many, None, 3, 1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rayleigh_direct_only_cdf() {
        let d = NakagamiParams::new(1.0, 0.8).unwrap();
        let chf = AmplitudeChf::new(&[], Some(d)).unwrap();
        let spec = QuadratureSpec::default();
        assert_eq!(gamma_c_cdf(&chf, 0.0, 2.0, &spec).unwrap(), 0.0);
        for &g in &[0.01f64, 0.3, 1.6, 5.0, 20.0] {
            let exact = 1.0 - (-g / (2.0 * 0.8)).exp();
            let got = gamma_c_cdf(&chf, g, 2.0, &spec).unwrap();
            assert!((got - exact).abs() < 1e-8 * exact.max(1e-3), "g={g}: {got} vs {exact}");
        }
    }

    #[test]
    fn nakagami_direct_only_bpsk() {
        // closed form for integer m: ((1−μ)/2)^m Σ C(m−1+k,k) ((1+μ)/2)^k
        let m = 2.0;
        let g = 3.0;
        let d = NakagamiParams::new(m, 1.0).unwrap();
        let chf = AmplitudeChf::new(&[], Some(d)).unwrap();
        let mu = (g / (m + g)).sqrt();
        let expected = ((1.0 - mu) / 2.0).powi(2) * (1.0 + 2.0 * (1.0 + mu) / 2.0);
        let got = ber_ops(&chf, g, Modulation::Bpsk, &QuadratureSpec::default()).unwrap();
        assert_relative_eq!(got, expected, max_relative = 1e-7);
    }

    #[test]
    fn bdpsk_through_cdf_matches_gaussian_identity() {
        // E[½e^{−ρA²}] = (1/(2√(πρ))) ∫ e^{−ω²/4ρ} Re Ψ(ω) dω over the half line, doubled
        let chf = AmplitudeChf::new(&[cascade(1.5, 2.5); 2], None).unwrap();
        let rho = 0.8;
        let spec = QuadratureSpec::default();
        let f = |w: f64| (-w * w / (4.0 * rho)).exp() * chf.eval(w).unwrap().re;
        let q = integrate_semi_infinite_scaled(f, Oscillation::None, (4.0 * rho).sqrt(), &spec).unwrap();
        let oracle = 0.5 * q.value / (PI * rho).sqrt();
        let got = ber_ops(&chf, rho, Modulation::Bdpsk, &spec).unwrap();
        assert_relative_eq!(got, oracle, max_relative = 1e-6);
    }

    #[test]
    fn ber_low_snr_is_half() {
        let chf = AmplitudeChf::new(&[cascade(1.5, 2.5); 4], None).unwrap();
        let b = ber_ops(&chf, 1e-10, Modulation::Bpsk, &QuadratureSpec::default()).unwrap();
        assert!((b - 0.5).abs() < 1e-4, "{b}");
    }

    #[test]
    fn diversity_order_formula() {
        assert_eq!(diversity_order_ops(&[1.5; 4], &[2.5; 4]), 6.0);
        assert_eq!(diversity_order_ops(&[1.0], &[1.0]), 1.0);
    }
}
