//! Susskind-Glogower coherent states in a truncated Fock basis.
//!
//! Three constructions are provided: the approximate displacement of the
//! vacuum ([`sg_displaced_approx`]), the exact displacement
//! ([`sg_vacuum_displaced`]) and the closed-form evolution of an arbitrary
//! number state under `H = η(V + V†)` ([`sg_evolved`]). The dimensionless
//! parameter is always `τ = ηt` (interaction picture, `ħ = 1`).

mod hamiltonian;
mod oracle;
pub mod truncation;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::phase::i_pow;
use crate::specfun::bessel_row;

pub use hamiltonian::{chebyshev_eigvec_residual, hamiltonian, EigvecResidual, TridiagonalHamiltonian};
pub use oracle::{evolve_exact_oracle, evolve_schrodinger, OracleSettings};
pub use truncation::{tail_bound, truncation_for};

/// Tail mass targeted when a constructor picks its own cutoff.
pub const AUTO_EPS: f64 = 1e-15;

/// How a state was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recipe {
    ApproxDisplaced,
    ExactDisplaced,
    Evolved,
    Oracle,
    Raw,
}

impl Recipe {
    pub fn as_str(self) -> &'static str {
        match self {
            Recipe::ApproxDisplaced => "approx-displaced",
            Recipe::ExactDisplaced => "exact-displaced",
            Recipe::Evolved => "evolved",
            Recipe::Oracle => "oracle",
            Recipe::Raw => "raw",
        }
    }
}

impl std::fmt::Display for Recipe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Amplitudes `c_0..c_N` over `|0⟩..|N⟩` plus how they were obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    coeffs: Vec<Complex64>,
    recipe: Recipe,
    param: f64,
    initial_m: Option<usize>,
    tail_bound: f64,
}

impl FockState {
    /// Wrap raw amplitudes; the tail bound is taken as zero.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a state needs at least one amplitude".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("amplitudes must be finite".into()));
        }
        Ok(Self {
            coeffs,
            recipe: Recipe::Raw,
            param: 0.0,
            initial_m: None,
            tail_bound: 0.0,
        })
    }

    /// The number state `|n⟩` in a basis cut at `truncation`.
    pub fn number(n: usize, truncation: usize) -> Result<Self> {
        if n > truncation {
            return Err(Error::Domain(format!(
                "|{n}> does not fit below truncation {truncation}"
            )));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); truncation + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self::from_coeffs(coeffs)
    }

    pub fn vacuum(truncation: usize) -> Self {
        Self::number(0, truncation).expect("vacuum always fits")
    }

    pub(crate) fn built(
        coeffs: Vec<Complex64>,
        recipe: Recipe,
        param: f64,
        initial_m: Option<usize>,
        tail_bound: f64,
    ) -> Self {
        Self {
            coeffs,
            recipe,
            param,
            initial_m,
            tail_bound,
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn recipe(&self) -> Recipe {
        self.recipe
    }

    /// `x` for displaced states, `τ = ηt` for evolved ones.
    pub fn param(&self) -> f64 {
        self.param
    }

    pub fn initial_m(&self) -> Option<usize> {
        self.initial_m
    }

    /// Largest retained number-state index `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Upper bound on probability mass lost to the cutoff.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨self|other⟩` over the common part of the two bases.
    pub fn inner(&self, other: &FockState) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Same amplitudes times a global phase `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> FockState {
        let rot = Complex64::from_polar(1.0, phi);
        FockState {
            coeffs: self.coeffs.iter().map(|c| c * rot).collect(),
            ..self.clone()
        }
    }
}

/// `V|n⟩ = |n−1⟩`, `V|0⟩ = 0`.
pub fn apply_v(state: &FockState) -> FockState {
    let n = state.coeffs.len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    coeffs[..n - 1].copy_from_slice(&state.coeffs[1..]);
    FockState {
        coeffs,
        recipe: Recipe::Raw,
        ..state.clone()
    }
}

/// `V†|n⟩ = |n+1⟩`. The amplitude pushed past the cutoff is added to the tail bound.
pub fn apply_vdag(state: &FockState) -> FockState {
    let n = state.coeffs.len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    coeffs[1..].copy_from_slice(&state.coeffs[..n - 1]);
    let lost = state.coeffs[n - 1].norm_sqr();
    FockState {
        coeffs,
        recipe: Recipe::Raw,
        tail_bound: state.tail_bound + lost,
        ..state.clone()
    }
}

fn resolve_cutoff(param: f64, truncation: Option<usize>) -> usize {
    truncation.unwrap_or_else(|| truncation_for(param, AUTO_EPS))
}

/// `c_n = c_0 J_n(2x)` with `c_0 = √(2 / (1 + J_0²(2x)))`.
pub fn sg_displaced_approx(x: f64, truncation: Option<usize>) -> Result<FockState> {
    ensure_finite("x", x)?;
    let n = resolve_cutoff(x, truncation);
    let row = bessel_row(n, 2.0 * x)?;
    let j0 = row.get(0);
    let c0 = (2.0 / (1.0 + j0 * j0)).sqrt();
    let coeffs = row
        .values()
        .iter()
        .map(|j| Complex64::new(c0 * j, 0.0))
        .collect();
    Ok(FockState::built(
        coeffs,
        Recipe::ApproxDisplaced,
        x,
        None,
        tail_bound(x, n),
    ))
}

/// Exact displaced vacuum, `c_n = (n+1) J_{n+1}(2x) / x`, with `|0⟩` at `x = 0`.
pub fn sg_vacuum_displaced(x: f64, truncation: Option<usize>) -> Result<FockState> {
    ensure_finite("x", x)?;
    let n = resolve_cutoff(x, truncation);
    if x == 0.0 {
        let mut state = FockState::vacuum(n);
        state.recipe = Recipe::ExactDisplaced;
        return Ok(state);
    }
    let row = bessel_row(n + 1, 2.0 * x)?;
    let coeffs = (0..=n)
        .map(|k| Complex64::new((k + 1) as f64 * row.get(k as i64 + 1) / x, 0.0))
        .collect();
    Ok(FockState::built(
        coeffs,
        Recipe::ExactDisplaced,
        x,
        None,
        tail_bound(x, n),
    ))
}

/// Closed-form evolution of `|m⟩`:
/// `c_n = i^{n−m} J_{n−m}(2τ) + i^{n+m} J_{n+m+2}(2τ)`.
pub fn sg_evolved(m: usize, tau: f64, truncation: Option<usize>) -> Result<FockState> {
    ensure_finite("tau", tau)?;
    let n = truncation.unwrap_or_else(|| truncation_for(tau.abs() + m as f64, AUTO_EPS));
    if n < m {
        return Err(Error::Domain(format!(
            "truncation {n} is below the initial index {m}"
        )));
    }
    let row = bessel_row(n + m + 2, 2.0 * tau)?;
    let m_i = m as i64;
    let coeffs = (0..=n as i64)
        .map(|k| {
            i_pow(k - m_i) * row.get(k - m_i) + i_pow(k + m_i) * row.get(k + m_i + 2)
        })
        .collect();
    Ok(FockState::built(
        coeffs,
        Recipe::Evolved,
        tau,
        Some(m),
        truncation::evolved_tail_bound(m, tau, n),
    ))
}
