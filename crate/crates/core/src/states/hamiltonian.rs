use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::specfun::chebyshev_u_row;

/// `H = η(V + V†)` on `|0⟩..|N⟩`: zero diagonal, `η` on both off-diagonals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagonalHamiltonian {
    dimension: usize,
    coupling: f64,
}

pub fn hamiltonian(eta: f64, truncation: usize) -> Result<TridiagonalHamiltonian> {
    ensure_finite("eta", eta)?;
    if truncation < 1 {
        return Err(Error::Domain("truncation must be at least 1".into()));
    }
    Ok(TridiagonalHamiltonian {
        dimension: truncation + 1,
        coupling: eta,
    })
}

impl TridiagonalHamiltonian {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dimension;
        DMatrix::from_fn(n, n, |r, c| {
            if r.abs_diff(c) == 1 {
                self.coupling
            } else {
                0.0
            }
        })
    }

    /// `H·v` without forming the matrix.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::new();
        self.apply_into(v, &mut out);
        out
    }

    pub(crate) fn apply_into(&self, v: &[Complex64], out: &mut Vec<Complex64>) {
        let n = v.len();
        debug_assert_eq!(n, self.dimension);
        out.clear();
        out.extend((0..n).map(|k| {
            let below = if k > 0 { v[k - 1] } else { Complex64::new(0.0, 0.0) };
            let above = if k + 1 < n { v[k + 1] } else { Complex64::new(0.0, 0.0) };
            (below + above) * self.coupling
        }));
    }

    /// Ascending eigenvalues of the dense matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = SymmetricEigen::new(self.to_dense())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        vals.sort_by(f64::total_cmp);
        vals
    }
}

/// Residuals of the Chebyshev vector `v_n = U_n(ξ)` as an eigenvector of `H`
/// with eigenvalue `2ηξ`, each normalized by `‖v‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigvecResidual {
    /// Rows `0..N`; zero up to round-off.
    pub interior: f64,
    /// All rows, including the cut at row `N`.
    pub full: f64,
}

pub fn chebyshev_eigvec_residual(xi: f64, eta: f64, truncation: usize) -> Result<EigvecResidual> {
    ensure_finite("xi", xi)?;
    if !(xi > -1.0 && xi < 1.0) {
        return Err(Error::Domain(format!("xi must lie in (-1, 1), got {xi}")));
    }
    if truncation < 8 {
        return Err(Error::Domain("truncation must be at least 8".into()));
    }
    let h = hamiltonian(eta, truncation)?;
    let v: Vec<Complex64> = chebyshev_u_row(truncation, xi)
        .into_iter()
        .map(|u| Complex64::new(u, 0.0))
        .collect();
    let hv = h.apply(&v);
    let energy = 2.0 * eta * xi;
    let rows: Vec<f64> = hv
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - b * energy).norm_sqr())
        .collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let interior: f64 = rows[..truncation].iter().sum();
    let full = interior + rows[truncation];
    Ok(EigvecResidual {
        interior: interior.sqrt() / norm,
        full: full.sqrt() / norm,
    })
}
