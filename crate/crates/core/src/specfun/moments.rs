//! Weighted sums `Σ_k k^p J_k²(x)`.
//!
//! Two independent routes are provided. [`bessel_moment_direct`] sums the
//! series with a certified tail bound. [`bessel_even_moment`] evaluates even
//! powers through the integral of a complete Bell polynomial of the
//! derivatives of `g(y) = i·x·sin y` over one period, which follows from the
//! Jacobi-Anger expansion and Faà di Bruno's formula.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bell::bell_complete;
use super::bessel::bessel_row;
use super::quadrature;
use crate::error::{ensure_finite, Error, Result};

/// Imaginary part tolerated in the Bell-polynomial integral, relative to `max(1, |re|)`.
const IMAG_RESIDUE_LIMIT: f64 = 1e-10;

/// Relative tolerance at which the cubic closed form is considered valid.
pub const CUBIC_VALIDITY_TOL: f64 = 1e-8;

/// Tail bound used for the cubic cross-check and the closed-form Mandel Q.
const CUBIC_DIRECT_TOL: f64 = 1e-15;

/// A truncated series together with where it was cut and what was dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSum {
    pub value: f64,
    /// Last index included in the sum.
    pub truncation_index: usize,
    /// Upper bound on the discarded tail.
    pub tail_bound: f64,
}

/// `Σ_{k≥1} k^{2ν} J_k²(x)` for `ν ∈ {1, 2, 3}` via the Bell-polynomial integral
/// `((−1)^ν / 4π) ∫_{−π}^{π} B_{2ν}(g′(y), ..., g^{(2ν)}(y)) dy`.
pub fn bessel_even_moment(nu: u32, x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    if !(1..=3).contains(&nu) {
        return Err(Error::Domain(format!("nu must be 1, 2 or 3, got {nu}")));
    }
    let order = 2 * nu as usize;
    let integral = quadrature::integrate(
        |y| {
            let seeds = sine_phase_derivatives(x, y, order);
            bell_complete(order, &seeds).expect("seed count matches order")
        },
        -PI,
        PI,
        quadrature::DEFAULT_TOL,
    )?;
    let scale = if nu.is_multiple_of(2) { 1.0 } else { -1.0 } / (4.0 * PI);
    let value = integral * scale;
    if value.im.abs() > IMAG_RESIDUE_LIMIT * value.re.abs().max(1.0) {
        return Err(Error::Quadrature {
            achieved: value.im.abs(),
            requested: IMAG_RESIDUE_LIMIT,
        });
    }
    Ok(value.re)
}

/// `g′(y), ..., g^{(n)}(y)` for `g(y) = i·x·sin y`.
pub fn sine_phase_derivatives(x: f64, y: f64, n: usize) -> Vec<Complex64> {
    (1..=n)
        .map(|j| Complex64::new(0.0, x * (y + j as f64 * 0.5 * PI).sin()))
        .collect()
}

/// `Σ_{k≥0} k^p J_k²(x)`, cut once the tail bound drops below `tol`.
///
/// The bound uses `|J_k(x)| ≤ (|x|/2)^k / k!`, whose squared terms decay
/// faster than geometrically past `k ≈ |x|/2`.
pub fn bessel_moment_direct(p: u32, x: f64, tol: f64) -> Result<MomentSum> {
    ensure_finite("x", x)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let (cut, tail) = moment_cutoff(p, 0.5 * x.abs(), tol);
    let row = bessel_row(cut, x)?;
    // pairwise-free but compensated: the largest terms sit near k ≈ |x|
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for (k, j) in row.values().iter().enumerate() {
        let term = (k as f64).powi(p as i32) * j * j;
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    Ok(MomentSum {
        value: sum,
        truncation_index: cut,
        tail_bound: tail,
    })
}

/// Smallest `K` with `Σ_{k>K} k^p (h^k/k!)² < tol`, and that bound.
pub(crate) fn moment_cutoff(p: u32, half_x: f64, tol: f64) -> (usize, f64) {
    let mut k = 1usize;
    loop {
        let tail = squared_tail_bound(p, half_x, k + 1);
        if tail < tol {
            return (k, tail);
        }
        k += 1;
    }
}

/// Bound on `Σ_{k≥from} k^p (h^k/k!)²`, or infinity while the ratio test fails.
pub(crate) fn squared_tail_bound(p: u32, h: f64, from: usize) -> f64 {
    if h == 0.0 {
        return 0.0;
    }
    let kf = from.max(1) as f64;
    // ratio of consecutive terms at `from`; it decreases in k
    let ratio = ((kf + 1.0) / kf).powi(p as i32) * (h / (kf + 1.0)).powi(2);
    if ratio >= 0.5 {
        return f64::INFINITY;
    }
    let ln_term = p as f64 * kf.ln() + 2.0 * (kf * h.ln() - ln_factorial(from));
    ln_term.exp() / (1.0 - ratio)
}

pub(crate) fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 256 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    // Stirling with two correction terms
    let x = n as f64;
    x * x.ln() - x + 0.5 * (2.0 * PI * x).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3))
}

/// The closed form for `Σ_{k≥1} k³ J_k²(2x)`:
/// `x²{(6x²+1)J_0² + (6x²−1)J_1² − 2xJ_0J_1 + (2x²/3)(J_0J_2 + J_1J_3)}` at `2x`.
pub fn bessel_cubed_sum_closed(x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let j = bessel_row(3, 2.0 * x)?;
    let [j0, j1, j2, j3] = [j.get(0), j.get(1), j.get(2), j.get(3)];
    let x2 = x * x;
    let inner = (6.0 * x2 + 1.0) * j0 * j0 + (6.0 * x2 - 1.0) * j1 * j1 - 2.0 * x * j0 * j1
        + (2.0 * x2 / 3.0) * (j0 * j2 + j1 * j3);
    Ok(x2 * inner)
}

/// Closed form and direct sum of `Σ k³ J_k²(2x)` side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubedSumCheck {
    pub x: f64,
    pub closed: f64,
    pub direct: f64,
    pub deviation: f64,
    /// `deviation <= CUBIC_VALIDITY_TOL * max(1, |direct|)`.
    pub valid: bool,
}

impl CubedSumCheck {
    /// The value to trust: the closed form when valid, the direct sum otherwise.
    pub fn preferred(&self) -> f64 {
        if self.valid {
            self.closed
        } else {
            self.direct
        }
    }
}

pub fn cubed_sum_check(x: f64) -> Result<CubedSumCheck> {
    let closed = bessel_cubed_sum_closed(x)?;
    let direct = bessel_moment_direct(3, 2.0 * x, CUBIC_DIRECT_TOL)?.value;
    let deviation = (closed - direct).abs();
    Ok(CubedSumCheck {
        x,
        closed,
        direct,
        deviation,
        valid: deviation <= CUBIC_VALIDITY_TOL * direct.abs().max(1.0),
    })
}
