//! Adaptive Gauss–Kronrod quadrature on finite intervals and a partition
//! plus extrapolation scheme for semi-infinite, possibly oscillatory,
//! integrands.

use std::collections::BinaryHeap;
use std::f64::consts::PI;

use super::bessel::{bessel_zero, BesselOrder};
use super::series::{euler_transform, wynn_epsilon};
use super::{NumericsError, Result};

/// Tolerances and limits for the integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Subinterval budget of one adaptive finite-interval integration.
    pub max_subintervals: usize,
    /// Upper limit of semi-infinite integrals, in units of the integrand scale.
    pub truncation_cap: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            max_subintervals: 4096,
            truncation_cap: 1e4,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(NumericsError::Parameter {
                function: "QuadratureSpec",
                reason: reason.to_string(),
            })
        };
        if !(self.abs_tol > 0.0) {
            return bad("abs_tol must be positive");
        }
        if !(self.rel_tol > 0.0) {
            return bad("rel_tol must be positive");
        }
        if self.max_subintervals < 16 {
            return bad("max_subintervals must be at least 16");
        }
        if !(self.truncation_cap > 0.0) {
            return bad("truncation_cap must be positive");
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// An integral estimate with its error bound and cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Oscillatory structure of a semi-infinite integrand, used to place
/// breakpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillation {
    None,
    /// Integrand carries a factor J_ν(frequency · t).
    Bessel { order: BesselOrder, frequency: f64 },
    /// Integrand carries a factor like sin(frequency · t + φ).
    Harmonic { frequency: f64 },
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Gauss weights for the odd-indexed Kronrod nodes
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = WGK[10] * fc;
    let mut resg = 0.0;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err)
}

/// Adaptive 21-point Gauss–Kronrod integration of `f` over [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature> {
    integrate_with(&f, a, b, spec, spec.abs_tol, spec.rel_tol)
}

fn integrate_with<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let (value, error) = kronrod21(f, a, b);
    let mut evaluations = 21;
    if !value.is_finite() {
        return Err(NumericsError::NonConvergence {
            estimate: value,
            error: f64::INFINITY,
        });
    }
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    // pieces too narrow to split further
    let mut frozen_err = 0.0;
    let mut frozen_val = 0.0;
    let mut count = 1;
    loop {
        let tol = abs_tol.max(rel_tol * total.abs());
        if total_err <= tol {
            break;
        }
        if count >= spec.max_subintervals {
            return Err(NumericsError::NonConvergence {
                estimate: total,
                error: total_err,
            });
        }
        let Some(p) = heap.pop() else { break };
        let mid = 0.5 * (p.a + p.b);
        if (p.b - p.a).abs() <= 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) {
            frozen_err += p.error;
            frozen_val += p.value;
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let (v1, e1) = kronrod21(f, p.a, mid);
        let (v2, e2) = kronrod21(f, mid, p.b);
        evaluations += 42;
        if !(v1.is_finite() && v2.is_finite()) {
            return Err(NumericsError::NonConvergence {
                estimate: total,
                error: f64::INFINITY,
            });
        }
        total += v1 + v2 - p.value;
        total_err += e1 + e2 - p.error;
        heap.push(Piece { a: p.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: p.b, value: v2, error: e2 });
        count += 1;
        // refresh the running sums now and then to shed cancellation drift
        if count % 64 == 0 {
            total = frozen_val + heap.iter().map(|p| p.value).sum::<f64>();
            total_err = frozen_err + heap.iter().map(|p| p.error).sum::<f64>();
        }
    }
    Ok(Quadrature {
        value: frozen_val + heap.iter().map(|p| p.value).sum::<f64>(),
        error: frozen_err + heap.iter().map(|p| p.error).sum::<f64>(),
        evaluations,
    })
}

/// ∫₀^∞ f(t) dt with unit integrand scale. See [`integrate_semi_infinite_scaled`].
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    oscillation: Oscillation,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    integrate_semi_infinite_scaled(f, oscillation, 1.0, spec)
}

/// ∫₀^∞ f(t) dt where `scale` is the width over which the non-oscillatory
/// envelope of `f` varies.
///
/// The half-line is cut at geometrically spaced points `scale·2^k` until the
/// first oscillation breakpoint, and from there at the zeros of the Bessel
/// factor (or at half periods of a harmonic factor). Each piece is integrated
/// adaptively. Alternating tails are summed by repeated averaging of the
/// partial sums, monotone tails by the epsilon algorithm.
pub fn integrate_semi_infinite_scaled<F: Fn(f64) -> f64>(
    f: F,
    oscillation: Oscillation,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    spec.validate()?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(NumericsError::Parameter {
            function: "integrate_semi_infinite",
            reason: format!("scale must be positive and finite, got {scale}"),
        });
    }
    let cap = spec.truncation_cap * scale;
    let first_osc = match oscillation {
        Oscillation::None => f64::INFINITY,
        Oscillation::Bessel { order, frequency } => bessel_zero(order, 1) / frequency.abs(),
        Oscillation::Harmonic { frequency } => PI / frequency.abs(),
    };
    let is_osc = first_osc.is_finite() && first_osc > 0.0;
    let piece_abs = 0.05 * spec.abs_tol;
    let piece_rel = 0.1 * spec.rel_tol;

    let mut evaluations = 0;
    let mut local_err = 0.0;

    // geometric head
    let mut lo = 0.0;
    let mut hi = scale / 64.0;
    let mut partial_sums: Vec<f64> = Vec::new();
    let mut running = 0.0;
    let mut quiet = 0;
    let mut last_estimate: Option<(f64, f64)> = None;
    let mut tail_start: Option<usize> = None;
    let mut prev_piece: Option<f64> = None;
    let mut stable = 0;
    loop {
        if is_osc && hi >= first_osc {
            hi = first_osc;
        }
        let hi_c = hi.min(cap);
        let q = integrate_with(&f, lo, hi_c, spec, piece_abs, piece_rel)?;
        evaluations += q.evaluations;
        local_err += q.error;
        running += q.value;
        if is_osc {
            if hi_c >= cap && hi_c < first_osc {
                // the integrand is taken to vanish beyond the cap
                return finish(running, local_err, evaluations, spec);
            }
            if hi_c >= first_osc {
                lo = hi_c;
                break;
            }
        } else {
            partial_sums.push(running);
            let tol = spec.tolerance(running);
            if hi_c >= scale && q.value.abs() <= 0.1 * tol {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet >= 2 {
                return Ok(Quadrature {
                    value: running,
                    error: local_err + q.value.abs(),
                    evaluations,
                });
            }
            if hi_c >= scale {
                tail_start.get_or_insert(partial_sums.len() - 1);
            }
            let in_tail = tail_start.map_or(0, |i| partial_sums.len() - i);
            let shrinking = prev_piece.is_some_and(|p: f64| q.value.abs() < p.abs());
            prev_piece = Some(q.value);
            if in_tail >= 4 && shrinking {
                let from = tail_start.unwrap().max(partial_sums.len().saturating_sub(12));
                let (est, err) = wynn_epsilon(&partial_sums[from..]);
                // an extrapolation far beyond the last increment is not trusted
                let err = if (est - running).abs() > 100.0 * q.value.abs() + tol {
                    f64::INFINITY
                } else {
                    err
                };
                if let Some((prev, _)) = last_estimate {
                    if (est - prev).abs() <= tol && err <= tol {
                        stable += 1;
                    } else {
                        stable = 0;
                    }
                }
                last_estimate = Some((est, err));
                if stable >= 2 {
                    return Ok(Quadrature {
                        value: est,
                        error: local_err + err,
                        evaluations,
                    });
                }
            }
            if hi_c >= cap {
                let (est, err) = last_estimate.unwrap_or((running, f64::INFINITY));
                return finish(est, local_err + err, evaluations, spec);
            }
        }
        lo = hi_c;
        hi = 2.0 * hi_c;
    }

    // oscillatory tail: one piece per half period
    let head = running;
    let mut k = 1;
    let mut sums = Vec::new();
    let mut tail = 0.0;
    let mut prev_est: Option<f64> = None;
    let mut stable = 0;
    let mut best = (head, f64::INFINITY);
    loop {
        k += 1;
        let next = match oscillation {
            Oscillation::Bessel { order, frequency } => bessel_zero(order, k) / frequency.abs(),
            Oscillation::Harmonic { frequency } => k as f64 * PI / frequency.abs(),
            Oscillation::None => unreachable!(),
        };
        let next = next.min(cap);
        let q = integrate_with(&f, lo, next, spec, piece_abs, piece_rel)?;
        evaluations += q.evaluations;
        local_err += q.error;
        tail += q.value;
        sums.push(head + tail);
        let n = sums.len();
        let window = &sums[n.saturating_sub(20)..];
        let (est, err) = euler_transform(window);
        let tol = spec.tolerance(est);
        if let Some(p) = prev_est {
            if (est - p).abs() <= 0.5 * tol && err <= tol {
                stable += 1;
            } else {
                stable = 0;
            }
        }
        if err < best.1 {
            best = (est, err);
        }
        prev_est = Some(est);
        if q.value.abs() <= 0.01 * tol && n >= 2 {
            let prev_piece = if n >= 2 { sums[n - 1] - sums[n - 2] } else { 0.0 };
            if prev_piece.abs() <= 0.01 * tol {
                return Ok(Quadrature {
                    value: head + tail,
                    error: local_err + q.value.abs(),
                    evaluations,
                });
            }
        }
        if stable >= 3 && n >= 6 {
            return Ok(Quadrature {
                value: est,
                error: local_err + err,
                evaluations,
            });
        }
        if next >= cap {
            if q.value.abs() <= 0.01 * tol {
                return finish(head + tail, local_err + q.value.abs(), evaluations, spec);
            }
            return finish(best.0, local_err + best.1, evaluations, spec);
        }
        lo = next;
    }
}

fn finish(value: f64, error: f64, evaluations: usize, spec: &QuadratureSpec) -> Result<Quadrature> {
    if error <= 10.0 * spec.tolerance(value) {
        Ok(Quadrature {
            value,
            error,
            evaluations,
        })
    } else {
        Err(NumericsError::NonConvergence {
            estimate: value,
            error,
        })
    }
}
