//! Self-checks run by `nlcs verify`.
//!
//! Each check compares two independent routes to the same number and reports
//! the worst deviation it saw. A check that errors counts as a failure, with
//! the error text as its detail.

use num_complex::Complex64;

use crate::analysis::{
    angular_lobes, husimi_grid, mandel_q, mandel_q_closed, mandel_scan, photon_distribution,
    GridSpec, LobeSettings,
};
use crate::error::Result;
use crate::specfun::{bell_complete, bell_complete_det, bessel_even_moment, bessel_moment_direct};
use crate::states::{
    chebyshev_eigvec_residual, evolve_exact_oracle, sg_evolved, sg_vacuum_displaced,
    truncation_for, AUTO_EPS,
};
use crate::waveguide::{analogy_report, modal_amplitude_closed, propagate_ode, DEFAULT_ODE_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("bell-determinant", bell_determinant),
    ("even-moments", even_moments),
    ("cubic-closed-form", cubic_closed_form),
    ("initial-conditions", initial_conditions),
    ("oracle-equivalence", oracle_equivalence),
    ("norm-conservation", norm_conservation),
    ("modulus-and-quarter-turn", modulus_and_quarter_turn),
    ("waveguide-analogy", waveguide_analogy),
    ("two-lobes", two_lobes),
    ("chebyshev-eigenvector", chebyshev_eigenvector),
    ("mandel-minimum", mandel_minimum),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs every check, in a fixed order.
pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS.iter().map(|(name, f)| outcome(name, *f)).collect()
}

/// Runs the named check, or `None` if there is no such check.
pub fn run_one(name: &str) -> Option<CheckOutcome> {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, f)| outcome(n, *f))
}

fn outcome(name: &'static str, f: Check) -> CheckOutcome {
    match f() {
        Ok((passed, detail)) => CheckOutcome {
            name,
            passed,
            detail,
        },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

const FIG_TAUS: [f64; 4] = [1.0, 2.32, 5.0, 20.0];
const FIG_MS: [usize; 4] = [0, 1, 5, 10];

fn bell_determinant() -> Result<(bool, String)> {
    let mut worst = 0.0_f64;
    for n in 1..=10 {
        let xs: Vec<Complex64> = (1..=n)
            .map(|k| Complex64::new(0.3 * k as f64 - 1.0, 0.2 * (k % 3) as f64))
            .collect();
        let a = bell_complete(n, &xs)?;
        let b = bell_complete_det(n, &xs)?;
        worst = worst.max((a - b).norm() / a.norm().max(1.0));
    }
    Ok((worst < 1e-10, format!("max relative deviation {worst:.3e}")))
}

fn even_moments() -> Result<(bool, String)> {
    let mut worst = 0.0_f64;
    for k in 0..50 {
        let x = 20.0 * k as f64 / 49.0;
        let m1 = bessel_even_moment(1, x)?;
        let m2 = bessel_even_moment(2, x)?;
        let e1 = (m1 - x * x / 4.0).abs();
        let e2 = (m2 - (3.0 * x.powi(4) / 16.0 + x * x / 4.0)).abs();
        let d1 = (m1 - bessel_moment_direct(2, x, 1e-15)?.value).abs();
        let d2 = (m2 - bessel_moment_direct(4, x, 1e-15)?.value).abs();
        if e1 >= 1e-10 || e2 >= 1e-9 || d1 >= 1e-9 || d2 >= 1e-9 {
            return Ok((
                false,
                format!("x={x}: closed {e1:.2e}/{e2:.2e}, direct {d1:.2e}/{d2:.2e}"),
            ));
        }
        worst = worst.max(e1).max(e2 / 10.0);
    }
    Ok((true, format!("50 samples on [0,20], worst ν=1 error {worst:.3e}")))
}

fn cubic_closed_form() -> Result<(bool, String)> {
    let mut worst = 0.0_f64;
    for k in 1..=40 {
        let x = 0.25 * k as f64;
        let a = mandel_q_closed(x)?;
        let b = mandel_q(&sg_vacuum_displaced(x, None)?)?;
        worst = worst.max((a - b).abs());
    }
    Ok((worst < 1e-8, format!("max |ΔQ| {worst:.3e} on (0,10]")))
}

fn initial_conditions() -> Result<(bool, String)> {
    for m in 0..=12 {
        let s = sg_evolved(m, 0.0, None)?;
        for (n, c) in s.coeffs().iter().enumerate() {
            let want = if n == m { 1.0 } else { 0.0 };
            if *c != Complex64::new(want, 0.0) {
                return Ok((false, format!("m={m}: c_{n} = {c}")));
            }
        }
    }
    Ok((true, "τ=0 gives |m⟩ exactly for m ≤ 12".into()))
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let mut worst = 0.0_f64;
    for &m in &FIG_MS {
        for &tau in &FIG_TAUS {
            let n = truncation_for(tau + m as f64, AUTO_EPS);
            let closed = sg_evolved(m, tau, Some(n))?;
            // a wider basis keeps the cut far from every compared entry
            let oracle = evolve_exact_oracle(m, tau, 1.0, n + 32)?;
            worst = worst.max(max_dev(closed.coeffs(), &oracle.coeffs()[..=n]));
        }
    }
    Ok((worst < 1e-8, format!("max coefficient deviation {worst:.3e}")))
}

fn norm_conservation() -> Result<(bool, String)> {
    let mut worst = 0.0_f64;
    for &m in &FIG_MS {
        for &tau in &FIG_TAUS {
            let total = photon_distribution(&sg_evolved(m, tau, None)?).total();
            worst = worst.max((total - 1.0).abs());
        }
    }
    Ok((worst < 1e-10, format!("max |ΣP − 1| {worst:.3e}")))
}

fn modulus_and_quarter_turn() -> Result<(bool, String)> {
    let mut modulus = 0.0_f64;
    for &tau in &FIG_TAUS {
        let n = truncation_for(tau, AUTO_EPS);
        let ev = sg_evolved(0, tau, Some(n))?;
        let ex = sg_vacuum_displaced(tau, Some(n))?;
        for (a, b) in ev.coeffs().iter().zip(ex.coeffs()) {
            modulus = modulus.max((a.norm() - b.norm()).abs());
        }
    }
    let tau = 2.32;
    let n = truncation_for(tau, AUTO_EPS);
    let spec = GridSpec::square(5.0, 41);
    let ev = husimi_grid(&sg_evolved(0, tau, Some(n))?, &spec)?;
    let ex = husimi_grid(&sg_vacuum_displaced(tau, Some(n))?, &spec)?;
    let res = spec.resolution;
    let mut turn = 0.0_f64;
    for i in 0..res {
        for j in 0..res {
            // Q_evolved(a + ib) = Q_exact(b − ia)
            turn = turn.max((ev.value(i, j) - ex.value(j, res - 1 - i)).abs());
        }
    }
    Ok((
        modulus < 1e-12 && turn < 1e-10,
        format!("modulus {modulus:.3e}, quarter turn {turn:.3e}"),
    ))
}

fn waveguide_analogy() -> Result<(bool, String)> {
    let (mut analogy, mut ode) = (0.0_f64, 0.0_f64);
    for &m in &[0usize, 1, 5] {
        for &z in &[1.0, 5.0, 20.0] {
            analogy = analogy.max(analogy_report(m, z, None)?);
            let sites = truncation_for(z + m as f64, AUTO_EPS) + 16;
            let field = propagate_ode(m, z, sites, DEFAULT_ODE_TOL)?;
            for (n, a) in field.amplitudes.iter().enumerate() {
                ode = ode.max((a - modal_amplitude_closed(n, m, z)?).norm());
            }
        }
    }
    Ok((
        analogy < 1e-12 && ode < 1e-6,
        format!("intensity vs P {analogy:.3e}, ODE vs closed form {ode:.3e}"),
    ))
}

fn two_lobes() -> Result<(bool, String)> {
    let settings = LobeSettings::default();
    let a = angular_lobes(&sg_vacuum_displaced(20.0, None)?, &settings).count();
    let b = angular_lobes(&sg_evolved(1, 5.0, None)?, &settings).count();
    Ok((
        a == 2 && b == 2,
        format!("exact displaced x=20: {a} lobes, evolved m=1 τ=5: {b} lobes"),
    ))
}

fn chebyshev_eigenvector() -> Result<(bool, String)> {
    let mut worst = 0.0_f64;
    for &xi in &[-0.9, 0.0, 0.5] {
        worst = worst.max(chebyshev_eigvec_residual(xi, 1.0, 256)?.interior);
    }
    Ok((worst < 1e-12, format!("max interior residual {worst:.3e}")))
}

fn mandel_minimum() -> Result<(bool, String)> {
    let scan = mandel_scan(0.05, 20.0, 400, 0)?;
    let (t, q) = scan.minimum;
    let crossing = scan.zero_crossing.unwrap_or(f64::NAN);
    let passed =
        (t - 2.32).abs() <= 0.02 && (q + 0.64).abs() <= 0.01 && (crossing - 13.48).abs() <= 0.05;
    Ok((
        passed,
        format!("minimum Q={q:.5} at τ={t:.5}, zero crossing at τ={crossing:.5}"),
    ))
}
