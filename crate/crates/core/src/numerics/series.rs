//! Power-series products and sequence acceleration.

use super::{NumericsError, Result};

/// Maclaurin coefficients (up to `order`) of the product of the given series.
///
/// Every input must carry at least `order + 1` coefficients.
pub fn taylor_coefficients_product<S: AsRef<[f64]>>(
    series_list: &[S],
    order: usize,
) -> Result<Vec<f64>> {
    let needed = order + 1;
    let mut acc = vec![0.0; needed];
    acc[0] = 1.0;
    for (index, s) in series_list.iter().enumerate() {
        let s = s.as_ref();
        if s.len() < needed {
            return Err(NumericsError::LengthMismatch {
                index,
                len: s.len(),
                needed,
            });
        }
        let mut next = vec![0.0; needed];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in s[..needed - i].iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Limit of an alternating sequence of partial sums by repeated averaging of
/// neighbours (the Euler transform in its partial-sum form).
///
/// Returns the accelerated estimate and the change from the estimate that
/// omits the last partial sum.
pub fn euler_transform(partial_sums: &[f64]) -> (f64, f64) {
    match partial_sums.len() {
        0 => (0.0, f64::INFINITY),
        1 => (partial_sums[0], f64::INFINITY),
        _ => {
            let full = average_down(partial_sums);
            let prev = average_down(&partial_sums[..partial_sums.len() - 1]);
            (full, (full - prev).abs())
        }
    }
}

fn average_down(s: &[f64]) -> f64 {
    let mut row = s.to_vec();
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    row[0]
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
///
/// Returns the highest-order even-column estimate and the distance to the
/// neighbouring estimate as an error indicator.
pub fn wynn_epsilon(partial_sums: &[f64]) -> (f64, f64) {
    let n = partial_sums.len();
    if n < 3 {
        let last = partial_sums.last().copied().unwrap_or(0.0);
        let err = if n == 2 {
            (partial_sums[1] - partial_sums[0]).abs()
        } else {
            f64::INFINITY
        };
        return (last, err);
    }
    // columns eps_{-1} = 0, eps_0 = s
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial_sums.to_vec();
    let mut best = partial_sums[n - 1];
    let mut best_err = (partial_sums[n - 1] - partial_sums[n - 2]).abs();
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 || !diff.is_finite() {
                return (best, best_err);
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        col += 1;
        prev = cur;
        cur = next;
        if col % 2 == 0 {
            let k = cur.len();
            let est = cur[k - 1];
            if !est.is_finite() {
                break;
            }
            let err = if k >= 2 {
                (cur[k - 1] - cur[k - 2]).abs()
            } else {
                (est - best).abs()
            };
            best = est;
            best_err = err;
        }
    }
    (best, best_err)
}
