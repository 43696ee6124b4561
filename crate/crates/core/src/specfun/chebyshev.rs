//! Chebyshev polynomials of the second kind.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature;
use crate::error::{ensure_finite, Error, Result};
use crate::phase::i_pow;

/// `U_n(ξ)` by the three-term recurrence `U_{n+1} = 2ξU_n − U_{n−1}`.
pub fn chebyshev_u(n: usize, xi: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * xi;
    for _ in 1..n {
        let next = 2.0 * xi * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_0(ξ) ..= U_{n_max}(ξ)`.
pub fn chebyshev_u_row(n_max: usize, xi: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max >= 1 {
        out.push(2.0 * xi);
    }
    for n in 2..=n_max {
        let next = 2.0 * xi * out[n - 1] - out[n - 2];
        out.push(next);
    }
    out
}

/// Fourier integral of the weighted Chebyshev polynomial,
/// `∫_{−1}^{1} (1/π)(i(−i)^{k+1}/(k+1)) √(1−ξ²) U_k(ξ) e^{iωξ} dξ`.
///
/// Evaluated by quadrature in `θ` with `ξ = cos θ`, which removes the
/// square-root endpoint behaviour. The result should equal `J_{k+1}(ω)/ω`.
pub fn chebyshev_fourier_coeff(k: usize, omega: f64) -> Result<Complex64> {
    ensure_finite("omega", omega)?;
    if omega == 0.0 {
        return Err(Error::Domain("omega must be non-zero".into()));
    }
    // (1/π)·i·(−i)^{k+1}/(k+1), with (−i)^{k+1} = i^{−(k+1)}
    let prefactor = i_pow(1) * i_pow(-(k as i64 + 1)) / (PI * (k as f64 + 1.0));
    let integral = quadrature::integrate(
        |theta| {
            let (s, c) = theta.sin_cos();
            // √(1−ξ²) dξ = sin²θ dθ
            let weight = s * s * chebyshev_u(k, c);
            Complex64::from_polar(weight, omega * c)
        },
        0.0,
        PI,
        quadrature::DEFAULT_TOL,
    )?;
    Ok(prefactor * integral)
}
