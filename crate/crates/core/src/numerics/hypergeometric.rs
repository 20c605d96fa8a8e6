//! Kummer's ₁F₁ and Gauss's ₂F₁.
//!
//! ₂F₁ uses the defining series near the origin, the Pfaff transformation
//! where it maps the argument close to the origin, and otherwise continues
//! the solution of the hypergeometric differential equation by Taylor steps
//! from a point where the series is cheap. The continuation needs no special
//! handling of integer `c − a − b`, which is where the classical connection
//! formulas degenerate.

use super::gamma::{gamma, rgamma};
use super::{ComplexValue, NumericsError, Result};

const MAX_TERMS: usize = 100_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Confluent hypergeometric function ₁F₁(a; b; x).
///
/// For `x < 0` the Kummer transformation e^x ₁F₁(b−a; b; −x) is summed
/// instead, and beyond the range where e^{−x} is representable the
/// algebraic asymptotic expansion takes over.
pub fn hyp1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(NumericsError::Parameter {
            function: "hyp1f1",
            reason: format!("b = {b} is a nonpositive integer"),
        });
    }
    if x == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_integer(a) {
        return m_series(a, b, x);
    }
    if x > 0.0 {
        return m_series(a, b, x);
    }
    let y = -x;
    if is_nonpositive_integer(b - a) {
        return Ok((-y).exp() * m_series(b - a, b, y)?);
    }
    if y > 690.0 {
        if let Some(v) = m_asymptotic_negative(a, b, y) {
            return Ok(v);
        }
        return Err(NumericsError::Convergence {
            function: "hyp1f1",
            detail: format!("a={a}, b={b}, x={x}"),
        });
    }
    Ok((-y).exp() * m_series(b - a, b, y)?)
}

fn m_series(a: f64, b: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if kf > x.abs() && term.abs() <= 1e-17 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(NumericsError::Convergence {
        function: "hyp1f1",
        detail: format!("series a={a}, b={b}, x={x}"),
    })
}

// ₁F₁(a; b; −y) ~ Γ(b)/Γ(b−a) y^{−a} Σ (a)_k (1+a−b)_k / k! y^{−k}
fn m_asymptotic_negative(a: f64, b: f64, y: f64) -> Option<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..200 {
        let kf = k as f64;
        let next = term * (a + kf) * (1.0 + a - b + kf) / ((kf + 1.0) * y);
        if next.abs() > term.abs() {
            return None;
        }
        term = next;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            return Some(gamma(b) * rgamma(b - a) * y.powf(-a) * sum);
        }
    }
    None
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) on the principal branch.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: ComplexValue) -> Result<ComplexValue> {
    if is_nonpositive_integer(c) {
        return Err(NumericsError::Parameter {
            function: "hyp2f1",
            reason: format!("c = {c} is a nonpositive integer"),
        });
    }
    let one = ComplexValue::new(1.0, 0.0);
    if z == ComplexValue::new(0.0, 0.0) {
        return Ok(one);
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Ok(f_series(a, b, c, z)?.0);
    }
    if z.im == 0.0 && z.re >= 1.0 {
        if z.re == 1.0 && c - a - b > 0.0 {
            // Gauss summation
            return Ok(one * (gamma(c) * rgamma(c - a) * rgamma(c - b) * gamma(c - a - b)));
        }
        return Err(NumericsError::Convergence {
            function: "hyp2f1",
            detail: format!("a={a}, b={b}, c={c}, z={z} on or beyond the branch point"),
        });
    }
    if z.norm() <= 0.5 {
        return Ok(f_series(a, b, c, z)?.0);
    }
    let w = z / (z - one);
    if w.norm() <= 0.5 {
        // Pfaff: (1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))
        return Ok((one - z).powf(-a) * f_series(a, c - b, c, w)?.0);
    }
    continue_ode(a, b, c, z)
}

/// ₂F₁(a, b; c; x) for real `x ≤ 1`.
pub fn hyp2f1_real(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    Ok(hyp2f1(a, b, c, ComplexValue::new(x, 0.0))?.re)
}

// Series value and its z-derivative.
fn f_series(a: f64, b: f64, c: f64, z: ComplexValue) -> Result<(ComplexValue, ComplexValue)> {
    let mut term = ComplexValue::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = ComplexValue::new(0.0, 0.0);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        // derivative picks up the coefficient of z^{k} times (k+1)
        dsum += term * ratio * (kf + 1.0);
        term *= z * ratio;
        sum += term;
        if ratio == 0.0 {
            return Ok((sum, dsum));
        }
        if kf > 8.0 && term.norm() <= 1e-17 * sum.norm() && (term * (kf + 1.0)).norm() <= 1e-16 * dsum.norm().max(1e-300) {
            return Ok((sum, dsum));
        }
    }
    Err(NumericsError::Convergence {
        function: "hyp2f1",
        detail: format!("series a={a}, b={b}, c={c}, z={z}"),
    })
}

fn continue_ode(a: f64, b: f64, c: f64, z: ComplexValue) -> Result<ComplexValue> {
    let one = ComplexValue::new(1.0, 0.0);
    let dist_one = (one - z).norm();
    // Path: from a start point on |z| = 1/2 radially to `q`, then on to `z`.
    // Near z = 1 the last leg runs straight at z along the ray from 1 so the
    // admissible step shrinks geometrically with the distance to 1.
    let q = if dist_one < 0.5 {
        one + (z - one) * (0.5 / dist_one)
    } else {
        z
    };
    let start = q * (0.5 / q.norm());
    let (mut w, mut dw) = f_series(a, b, c, start)?;
    let mut z0 = start;
    for target in [q, z] {
        let mut guard = 0;
        while z0 != target {
            guard += 1;
            if guard > 10_000 {
                return Err(NumericsError::Convergence {
                    function: "hyp2f1",
                    detail: format!("continuation a={a}, b={b}, c={c}, z={z}"),
                });
            }
            let radius = z0.norm().min((one - z0).norm());
            let gap = target - z0;
            let h = if gap.norm() <= 0.5 * radius {
                gap
            } else {
                gap * (0.5 * radius / gap.norm())
            };
            let (nw, ndw) = taylor_step(a, b, c, z0, w, dw, h);
            w = nw;
            dw = ndw;
            z0 = if h == gap { target } else { z0 + h };
        }
    }
    Ok(w)
}

// One Taylor step of z(1−z)w'' + [c − (a+b+1)z]w' − ab w = 0 from z0 by h.
// Works with scaled coefficients d_k = c_k h^k.
fn taylor_step(
    a: f64,
    b: f64,
    c: f64,
    z0: ComplexValue,
    w: ComplexValue,
    dw: ComplexValue,
    h: ComplexValue,
) -> (ComplexValue, ComplexValue) {
    let one = ComplexValue::new(1.0, 0.0);
    let p0 = z0 * (one - z0);
    let p1 = one - z0 * 2.0;
    let q0 = -z0 * (a + b + 1.0) + c;
    let q1 = -(a + b + 1.0);
    let r = -a * b;
    let mut d_prev = w;
    let mut d_cur = dw * h;
    let mut val = d_prev + d_cur;
    let mut der = d_cur;
    let h2 = h * h;
    let mut small = 0;
    for k in 0..2000usize {
        let kf = k as f64;
        // coefficient of z^k in the ODE, shifted
        let num = (p1 * kf + q0) * (kf + 1.0) * d_cur * h
            + (-(kf * (kf - 1.0)) + q1 * kf + r) * d_prev * h2;
        let d_next = -num / (p0 * (kf + 2.0) * (kf + 1.0));
        val += d_next;
        der += d_next * (kf + 2.0);
        let size = d_next.norm() * (kf + 2.0);
        if size <= 1e-17 * (val.norm() + der.norm()) {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        d_prev = d_cur;
        d_cur = d_next;
    }
    (val, der / h)
}
