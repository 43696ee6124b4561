//! Fock-basis cutoffs with an analytic tail bound.
//!
//! Every constructor's coefficients are bounded in modulus by sums of
//! `|J_k(2x)|` terms, and `|J_k(2x)| ≤ x^k / k!`. The worst recipe is the
//! approximate displacement, whose squared coefficients are at most
//! `2 J_n²(2x)`; evolved states add two Bessel terms, so a factor 4 covers all.

use crate::specfun::moments::squared_tail_bound;

/// Smallest cutoff ever returned.
pub const MIN_TRUNCATION: usize = 8;

const WORST_RECIPE_FACTOR: f64 = 4.0;

/// Bound on `Σ_{n>cutoff} |c_n|²` for any recipe at parameter magnitude `x`.
pub fn tail_bound(x: f64, cutoff: usize) -> f64 {
    (WORST_RECIPE_FACTOR * squared_tail_bound(0, x.abs(), cutoff + 1)).min(1.0)
}

/// Tail bound for an evolved state from `|m⟩`, whose Bessel index is shifted by `m`.
pub fn evolved_tail_bound(m: usize, tau: f64, cutoff: usize) -> f64 {
    if cutoff < m {
        return 1.0;
    }
    tail_bound(tau, cutoff - m)
}

/// Smallest `N ≥ 8` whose discarded tail is certified below `eps`.
pub fn truncation_for(x: f64, eps: f64) -> usize {
    assert!(eps > 0.0, "eps must be positive");
    let x = x.abs();
    let mut n = MIN_TRUNCATION.max(x.ceil() as usize);
    while tail_bound(x, n) >= eps {
        n += 1;
    }
    // the loop starts at ceil(x) so walk back to the true minimum
    while n > MIN_TRUNCATION && tail_bound(x, n - 1) < eps {
        n -= 1;
    }
    n
}
