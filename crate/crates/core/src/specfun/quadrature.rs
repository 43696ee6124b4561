//! Composite Gauss-Legendre quadrature with panel doubling.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const NODES: usize = 20;
const MAX_LEVELS: u32 = 14;

/// Default relative tolerance between successive refinements.
pub const DEFAULT_TOL: f64 = 1e-12;

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(NODES))
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite rule on `[a, b]` with `panels` equal panels.
fn composite<F>(f: &F, a: f64, b: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (nodes, weights) = rule();
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in nodes.iter().zip(weights) {
            acc += f(mid + 0.5 * h * x) * *w;
        }
        total += acc * (0.5 * h);
    }
    total
}

/// Integrate a complex-valued `f` over `[a, b]`.
///
/// The panel count doubles until two successive estimates agree to
/// `tol * max(1, |I|)`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut prev = composite(&f, a, b, 1);
    let mut diff = f64::INFINITY;
    for level in 1..=MAX_LEVELS {
        let next = composite(&f, a, b, 1 << level);
        diff = (next - prev).norm();
        if diff <= tol * next.norm().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature {
        achieved: diff,
        requested: tol,
    })
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate(|x| Complex64::new(f(x), 0.0), a, b, tol).map(|z| z.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre(NODES);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        // exact through degree 2n-1
        let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(38)).sum();
        assert!((m - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integrals() {
        let v = integrate_real(|x| x.sin(), 0.0, PI, DEFAULT_TOL).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
        let v = integrate(|y| Complex64::new(0.0, y).exp(), -PI, PI, DEFAULT_TOL).unwrap();
        assert!(v.norm() < 1e-13);
    }

    #[test]
    fn non_convergence_reports_tolerance() {
        // 1/sqrt(x) near 0 converges too slowly for 1e-15
        let err = integrate_real(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-15).unwrap_err();
        match err {
            Error::Quadrature { achieved, requested } => {
                assert!(achieved > requested);
                assert_eq!(requested, 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
