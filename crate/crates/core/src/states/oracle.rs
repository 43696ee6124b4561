//! Direct propagation of `|m⟩` in the truncated basis.
//!
//! Two schemes that share nothing with the Bessel closed form, nor with each
//! other: a dense matrix exponential (Taylor series with scaling and
//! squaring) and fixed-step RK4 with step halving. The result is accepted
//! only when both agree.
//!
//! Sign convention: the closed-form coefficients `i^{n−m}J_{n−m}(2τ) + ...`
//! solve `dc/dτ = +i(V + V†)c`, i.e. they are `exp(+iHt)|m⟩`. The ordinary
//! Schrödinger propagator `exp(−iHt)` gives their complex conjugate, since
//! `H` is real; [`evolve_schrodinger`] exposes that direction.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::hamiltonian::{hamiltonian, TridiagonalHamiltonian};
use super::truncation::{evolved_tail_bound, truncation_for};
use super::{FockState, Recipe, AUTO_EPS};
use crate::error::{ensure_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    /// Largest `|c_N|` tolerated anywhere on `[0, t]`.
    pub edge_threshold: f64,
    /// Largest coefficient difference tolerated between the two schemes.
    pub agreement: f64,
    /// RK4 halving stops once successive runs differ by less than this.
    pub rk4_tol: f64,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            edge_threshold: 1e-10,
            agreement: 1e-9,
            rk4_tol: 1e-11,
        }
    }
}

const RK4_BASE_STEP: f64 = 0.02;
const RK4_MAX_HALVINGS: u32 = 10;

/// `exp(+iHt)|m⟩`, cross-checked by two schemes; see the module docs for the sign.
pub fn evolve_exact_oracle(m: usize, t: f64, eta: f64, truncation: usize) -> Result<FockState> {
    evolve_exact_oracle_with(m, t, eta, truncation, &OracleSettings::default())
}

pub fn evolve_exact_oracle_with(
    m: usize,
    t: f64,
    eta: f64,
    truncation: usize,
    settings: &OracleSettings,
) -> Result<FockState> {
    propagate(m, t, eta, truncation, settings, 1.0)
}

/// `exp(−iHt)|m⟩`, the textbook Schrödinger direction.
pub fn evolve_schrodinger(m: usize, t: f64, eta: f64, truncation: usize) -> Result<FockState> {
    propagate(m, t, eta, truncation, &OracleSettings::default(), -1.0)
}

fn propagate(
    m: usize,
    t: f64,
    eta: f64,
    truncation: usize,
    settings: &OracleSettings,
    direction: f64,
) -> Result<FockState> {
    ensure_finite("t", t)?;
    ensure_finite("eta", eta)?;
    if m > truncation {
        return Err(Error::Domain(format!(
            "initial index {m} exceeds truncation {truncation}"
        )));
    }
    let h = hamiltonian(eta, truncation.max(1))?;
    let tau = eta * t;
    let finish = |coeffs: Vec<Complex64>| {
        FockState::built(
            coeffs,
            Recipe::Oracle,
            tau,
            Some(m),
            evolved_tail_bound(m, tau, truncation),
        )
    };
    if tau == 0.0 {
        let mut c = vec![Complex64::new(0.0, 0.0); truncation + 1];
        c[m] = Complex64::new(1.0, 0.0);
        return Ok(finish(c));
    }

    let (stepped, edge) = rk4_converged(&h, m, direction * t, settings.rk4_tol);
    if edge > settings.edge_threshold {
        return Err(Error::Truncation {
            edge,
            threshold: settings.edge_threshold,
            suggested: truncation_for(tau.abs() + m as f64, AUTO_EPS) + 32,
        });
    }
    let dense = expm_column(&h, direction * t, m);
    let deviation = max_deviation(&dense, &stepped);
    if deviation > settings.agreement {
        return Err(Error::OracleDisagreement {
            deviation,
            limit: settings.agreement,
        });
    }
    Ok(finish(dense))
}

fn max_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Column `m` of `exp(i·t·H)`.
fn expm_column(h: &TridiagonalHamiltonian, t: f64, m: usize) -> Vec<Complex64> {
    let a: DMatrix<Complex64> = h.to_dense().map(|v| Complex64::new(0.0, v * t));
    // ‖iHt‖₁ ≤ 2|ηt|
    let norm = 2.0 * (h.coupling() * t).abs();
    let mut squarings = 0u32;
    while norm / f64::from(1u32 << squarings.min(30)) > 0.5 {
        squarings += 1;
    }
    let scaled = a / Complex64::new(f64::from(1u32 << squarings), 0.0);
    let n = h.dimension();
    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=30 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        result += &term;
        let size = term.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if size < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result.column(m).iter().copied().collect()
}

/// RK4 for `dc/dt = i·H·c`, halving the step until two runs agree.
/// Returns the finer solution and the largest `|c_N|` it passed through.
fn rk4_converged(
    h: &TridiagonalHamiltonian,
    m: usize,
    t: f64,
    tol: f64,
) -> (Vec<Complex64>, f64) {
    let scale = h.coupling().abs().max(f64::MIN_POSITIVE);
    let base = ((t.abs() * scale / RK4_BASE_STEP).ceil() as usize).max(1);
    let mut prev = rk4_run(h, m, t, base);
    let mut steps = base;
    for _ in 0..RK4_MAX_HALVINGS {
        steps *= 2;
        let next = rk4_run(h, m, t, steps);
        let diff = max_deviation(&prev.0, &next.0);
        prev = next;
        if diff < tol {
            break;
        }
    }
    prev
}

fn rk4_run(h: &TridiagonalHamiltonian, m: usize, t: f64, steps: usize) -> (Vec<Complex64>, f64) {
    let n = h.dimension();
    let dt = t / steps as f64;
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    c[m] = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut edge = c[n - 1].norm();
    let (mut k1, mut k2, mut k3, mut k4) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut tmp = vec![Complex64::new(0.0, 0.0); n];
    for _ in 0..steps {
        h.apply_into(&c, &mut k1);
        k1.iter_mut().for_each(|v| *v *= i);
        for j in 0..n {
            tmp[j] = c[j] + k1[j] * (0.5 * dt);
        }
        h.apply_into(&tmp, &mut k2);
        k2.iter_mut().for_each(|v| *v *= i);
        for j in 0..n {
            tmp[j] = c[j] + k2[j] * (0.5 * dt);
        }
        h.apply_into(&tmp, &mut k3);
        k3.iter_mut().for_each(|v| *v *= i);
        for j in 0..n {
            tmp[j] = c[j] + k3[j] * dt;
        }
        h.apply_into(&tmp, &mut k4);
        k4.iter_mut().for_each(|v| *v *= i);
        for j in 0..n {
            c[j] += (k1[j] + (k2[j] + k3[j]) * 2.0 + k4[j]) * (dt / 6.0);
        }
        edge = edge.max(c[n - 1].norm());
    }
    (c, edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::sg_evolved;

    #[test]
    fn zero_time_is_initial_state() {
        let s = evolve_exact_oracle(3, 0.0, 1.0, 20).unwrap();
        assert_eq!(s.coeffs()[3], Complex64::new(1.0, 0.0));
        assert_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn schemes_agree_and_conserve_norm() {
        let s = evolve_exact_oracle(2, 3.0, 0.7, 60).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        assert_eq!(s.recipe(), Recipe::Oracle);
        assert!((s.param() - 2.1).abs() < 1e-15);
    }

    #[test]
    fn matches_closed_form() {
        let tau = 2.32;
        let n = 128;
        let oracle = evolve_exact_oracle(0, tau, 1.0, n).unwrap();
        let closed = sg_evolved(0, tau, Some(n)).unwrap();
        assert!(max_deviation(oracle.coeffs(), closed.coeffs()) < 1e-8);
    }

    #[test]
    fn schrodinger_direction_is_the_conjugate() {
        let fwd = evolve_schrodinger(1, 1.0, 1.0, 48).unwrap();
        let closed = sg_evolved(1, 1.0, Some(48)).unwrap();
        for (a, b) in fwd.coeffs().iter().zip(closed.coeffs()) {
            assert!((a - b.conj()).norm() < 1e-10);
        }
        // and it is not the closed form itself
        assert!((fwd.coeffs()[0] - closed.coeffs()[0]).norm() > 1e-3);
    }

    #[test]
    fn too_small_basis_is_reported() {
        match evolve_exact_oracle(0, 10.0, 1.0, 12) {
            Err(Error::Truncation { suggested, .. }) => assert!(suggested > 12),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn initial_index_must_fit() {
        assert!(evolve_exact_oracle(9, 1.0, 1.0, 8).is_err());
    }
}
