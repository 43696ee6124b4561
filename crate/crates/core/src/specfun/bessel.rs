//! Integer-order Bessel functions of the first kind.
//!
//! Values are produced by Miller's downward recurrence, normalized with
//! `J_0(x) + 2 Σ_{k≥1} J_{2k}(x) = 1`. Upward recurrence loses every digit
//! once the order exceeds the argument, downward recurrence is stable there.
//! Very small arguments use the power series directly.

use crate::error::{ensure_finite, Error, Result};
use crate::phase::parity_sign;

/// Largest order accepted by [`bessel_j`].
pub const MAX_ORDER: i64 = 1_000_000;

/// Below this magnitude the power series is used instead of recurrence.
const SERIES_CUTOFF: f64 = 1e-3;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// `J_0(x) ..= J_{n_max}(x)` at one argument.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselRow {
    argument: f64,
    values: Vec<f64>,
}

impl BesselRow {
    pub fn order_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `J_n` for signed `n`; orders beyond `order_max` in magnitude read as 0.
    pub fn get(&self, n: i64) -> f64 {
        let k = n.unsigned_abs() as usize;
        let v = self.values.get(k).copied().unwrap_or(0.0);
        if n < 0 {
            parity_sign(n) * v
        } else {
            v
        }
    }
}

/// `J_n(x)` for integer `n` and real `x`.
pub fn bessel_j(n: i64, x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    if n.abs() > MAX_ORDER {
        return Err(Error::Domain(format!(
            "|order| must be <= {MAX_ORDER}, got {n}"
        )));
    }
    let k = n.unsigned_abs() as usize;
    let mut v = positive_range(x.abs(), k, k)[0];
    // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x)
    if (n < 0) != (x < 0.0) {
        v *= parity_sign(k as i64);
    }
    Ok(v)
}

/// All orders `0..=n_max` at `x`, from a single recurrence pass.
pub fn bessel_row(n_max: usize, x: f64) -> Result<BesselRow> {
    ensure_finite("x", x)?;
    let mut values = positive_range(x.abs(), 0, n_max);
    if x < 0.0 {
        for (k, v) in values.iter_mut().enumerate() {
            *v *= parity_sign(k as i64);
        }
    }
    Ok(BesselRow { argument: x, values })
}

/// `J_lo(x) ..= J_hi(x)` for `x >= 0`.
fn positive_range(x: f64, lo: usize, hi: usize) -> Vec<f64> {
    debug_assert!(x >= 0.0 && lo <= hi);
    if x == 0.0 {
        return (lo..=hi).map(|k| if k == 0 { 1.0 } else { 0.0 }).collect();
    }
    if x < SERIES_CUTOFF {
        return (lo..=hi).map(|k| series(k, x)).collect();
    }
    miller(x, lo, hi)
}

/// Power series `Σ_j (-1)^j (x/2)^{2j+n} / (j! (n+j)!)`, for small `x`.
fn series(n: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= half / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    let q = -half * half;
    let mut term = lead;
    let mut sum = lead;
    for j in 1..40 {
        term *= q / (j as f64 * (n + j) as f64);
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum
}

fn miller(x: f64, lo: usize, hi: usize) -> Vec<f64> {
    // the margin is measured from max(hi, x): below x the recurrence is
    // oscillatory and the start must sit well inside the decaying region
    let margin = 20 + (1.5 * x).ceil() as usize;
    let mut start = hi.max(x.ceil() as usize) + margin;
    if start % 2 == 1 {
        start += 1;
    }
    let two_over_x = 2.0 / x;

    let mut out = vec![0.0; hi - lo + 1];
    // t_{k+1}, t_k
    let mut upper = 0.0_f64;
    let mut current = 1e-30_f64;
    // Σ over even orders >= 2 of t_k
    let mut even_sum = 0.0_f64;

    for k in (1..=start).rev() {
        if k <= hi && k >= lo {
            out[k - lo] = current;
        }
        if k % 2 == 0 {
            even_sum += current;
        }
        let lower = (k as f64) * two_over_x * current - upper;
        upper = current;
        current = lower;
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_BY;
            upper *= RESCALE_BY;
            even_sum *= RESCALE_BY;
            let first_stored = k.max(lo);
            if first_stored <= hi {
                for v in &mut out[first_stored - lo..] {
                    *v *= RESCALE_BY;
                }
            }
        }
    }
    if lo == 0 {
        out[0] = current;
    }
    let norm = current + 2.0 * even_sum;
    for v in &mut out {
        *v /= norm;
    }
    out
}
