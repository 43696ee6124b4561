//! Special functions checked against routes that share no code with them.

use std::f64::consts::PI;

use nlcs::specfun::{
    bell_complete, bell_partial, bessel_even_moment, bessel_j, bessel_moment_direct, bessel_row,
    cubed_sum_check, sine_phase_derivatives,
};
use nlcs::Complex64;
use proptest::prelude::*;

/// `J_n(x) = (1/2π) ∫_0^{2π} cos(nθ − x sin θ) dθ` by the trapezoid rule,
/// which converges geometrically for this periodic integrand.
fn bessel_integral_oracle(n: i64, x: f64) -> f64 {
    let m = 2048;
    let h = 2.0 * PI / m as f64;
    (0..m)
        .map(|i| {
            let t = i as f64 * h;
            (n as f64 * t - x * t.sin()).cos()
        })
        .sum::<f64>()
        / m as f64
}

/// `B_{n,k}` by literally walking every `(j_1, ..., j_{n−k+1})` in the box.
fn bell_partial_bruteforce(n: usize, k: usize, xs: &[Complex64]) -> Complex64 {
    let width = n - k + 1;
    let fact = |m: usize| (1..=m).fold(1.0, |a, b| a * b as f64);
    let mut js = vec![0usize; width];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let count: usize = js.iter().sum();
        let weight: usize = js.iter().enumerate().map(|(i, j)| (i + 1) * j).sum();
        if count == k && weight == n {
            let mut term = Complex64::new(fact(n), 0.0);
            for (i, &j) in js.iter().enumerate() {
                term /= fact(j);
                term *= (xs[i] / fact(i + 1)).powu(j as u32);
            }
            total += term;
        }
        // odometer over 0..=k in each slot
        let mut pos = 0;
        loop {
            if pos == width {
                return total;
            }
            js[pos] += 1;
            if js[pos] <= k {
                break;
            }
            js[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn bessel_matches_integral_representation() {
    let oracle = bessel_integral_oracle(1, 4.64);
    let got = bessel_j(1, 4.64).unwrap();
    assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");

    let mut worst = 0.0_f64;
    for &x in &[0.0005, 0.01, 0.7, 2.0, 4.64, 9.9, 23.0, 40.0, 64.0, 99.5, -17.3] {
        for n in [-7_i64, -1, 0, 1, 2, 3, 10, 25, 50, 99, 130] {
            let d = (bessel_j(n, x).unwrap() - bessel_integral_oracle(n, x)).abs();
            worst = worst.max(d);
        }
    }
    assert!(worst < 1e-12, "worst deviation {worst:e}");
}

#[test]
fn high_orders_decay_monotonically() {
    let row = bessel_row(200, 2.0).unwrap();
    let v = row.values();
    for n in 20..200 {
        assert!(v[n + 1].abs() <= v[n].abs(), "n={n}");
        assert!(v[n] > 0.0 || v[n] == 0.0);
    }
    for n in [20, 40, 80] {
        let oracle = bessel_integral_oracle(n as i64, 2.0);
        assert!((v[n] - oracle).abs() < 1e-15 + 1e-6 * oracle.abs());
    }
}

#[test]
fn recurrence_residual() {
    let mut x = 0.25;
    while x <= 50.0 {
        let row = bessel_row(51, x).unwrap();
        let j = row.values();
        for n in 1..=50 {
            let r = j[n - 1] + j[n + 1] - 2.0 * n as f64 / x * j[n];
            assert!(r.abs() < 1e-10 * j[n].abs().max(1.0), "n={n} x={x} r={r:e}");
        }
        x += 0.75;
    }
}

#[test]
fn normalization_identity() {
    for &x in &[0.1, 1.0, 7.5, 20.0, 49.0, 90.0] {
        let n = (x as usize) + 40;
        let row = bessel_row(n, x).unwrap();
        let j = row.values();
        let s = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
        assert!((s - 1.0).abs() < 1e-10, "x={x}: {s}");
    }
}

#[test]
fn jacobi_anger_expansion() {
    for &x in &[0.5, 3.0, 12.0, 30.0] {
        let n_max = x as usize + 40;
        let row = bessel_row(n_max, x).unwrap();
        for i in 0..=64 {
            let y = -PI + 2.0 * PI * i as f64 / 64.0;
            let lhs = Complex64::from_polar(1.0, x * y.sin());
            let mut rhs = Complex64::new(0.0, 0.0);
            for n in -(n_max as i64)..=(n_max as i64) {
                rhs += Complex64::from_polar(1.0, n as f64 * y) * row.get(n);
            }
            assert!((lhs - rhs).norm() < 1e-9, "x={x} y={y}");
        }
    }
}

/// Central `n`-th difference of `f` with three Richardson levels.
fn nth_derivative<F: Fn(f64) -> Complex64>(f: F, y: f64, n: usize, h: f64) -> Complex64 {
    let binom = |n: usize, k: usize| (1..=k).fold(1.0, |a, i| a * (n + 1 - i) as f64 / i as f64);
    let diff = |h: f64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += f(y + (n as f64 / 2.0 - j as f64) * h) * (sign * binom(n, j));
        }
        acc / h.powi(n as i32)
    };
    let d0 = diff(h);
    let d1 = diff(h / 2.0);
    let d2 = diff(h / 4.0);
    let r1 = (d1 * 4.0 - d0) / 3.0;
    let r2 = (d2 * 4.0 - d1) / 3.0;
    (r2 * 16.0 - r1) / 15.0
}

#[test]
fn faa_di_bruno_with_bell_polynomials() {
    for &x in &[0.5, 1.2] {
        let f = |y: f64| Complex64::from_polar(1.0, x * y.sin());
        for &y in &[-2.0, -0.4, 0.3, 1.7, 2.9] {
            for n in 1..=4 {
                let seeds = sine_phase_derivatives(x, y, n);
                let bell: Complex64 = (1..=n).map(|k| bell_partial(n, k, &seeds).unwrap()).sum();
                let analytic = f(y) * bell;
                let numeric = nth_derivative(f, y, n, 0.08);
                let rel = (analytic - numeric).norm() / analytic.norm().max(1.0);
                assert!(rel < 1e-6, "x={x} y={y} n={n}: rel {rel:e}");
            }
        }
    }
}

#[test]
fn bell_partial_against_literal_enumeration() {
    let xs = [
        Complex64::new(1.0, 0.5),
        Complex64::new(-0.3, 2.0),
        Complex64::new(0.7, -1.1),
    ];
    let b = bell_partial(4, 2, &xs).unwrap();
    let want = xs[0] * xs[2] * 4.0 + xs[1] * xs[1] * 3.0;
    assert!((b - want).norm() < 1e-13);
    assert!((b - bell_partial_bruteforce(4, 2, &xs)).norm() < 1e-13);
}

#[test]
fn bell_complete_printed_forms() {
    let xs = [
        Complex64::new(0.9, -0.2),
        Complex64::new(1.7, 0.4),
        Complex64::new(-0.6, 1.5),
        Complex64::new(2.2, -0.8),
    ];
    let [x1, x2, x3, x4] = xs;
    let b2 = bell_complete(2, &xs[..2]).unwrap();
    assert!((b2 - (x1 * x1 + x2)).norm() < 1e-14);
    let b4 = bell_complete(4, &xs).unwrap();
    let want = x1.powu(4) + x1 * x1 * x2 * 6.0 + x1 * x3 * 4.0 + x2 * x2 * 3.0 + x4;
    assert!((b4 - want).norm() < 1e-12);
}

#[test]
fn even_moments_match_direct_summation() {
    for i in 0..=40 {
        let x = i as f64;
        for nu in 1..=3u32 {
            let quad = bessel_even_moment(nu, x).unwrap();
            let direct = bessel_moment_direct(2 * nu, x, 1e-12).unwrap().value;
            let tol = 1e-9 * direct.abs().max(1.0);
            assert!((quad - direct).abs() < tol, "nu={nu} x={x}: {quad} vs {direct}");
        }
    }
}

#[test]
fn cubed_closed_form_against_direct_sum() {
    for &x in &[0.5, 1.0, 2.32, 5.0] {
        let check = cubed_sum_check(x).unwrap();
        assert!(check.valid, "{check:?}");
        assert!(check.deviation < 1e-9 * check.direct.abs().max(1.0));
    }
}

#[test]
fn truncation_index_is_reported() {
    let s = bessel_moment_direct(2, 4.64, 1e-12).unwrap();
    assert!((s.value - 5.3824).abs() < 1e-11);
    assert!(s.truncation_index > 5 && s.truncation_index < 60);
    assert!(s.tail_bound < 1e-12);
}

proptest! {
    #[test]
    fn bessel_is_bounded(n in -300i64..300, x in -100.0f64..100.0) {
        let v = bessel_j(n, x).unwrap();
        prop_assert!(v.abs() <= 1.0 + 1e-15);
    }

    #[test]
    fn bessel_parity(n in 0i64..80, x in 0.0f64..60.0) {
        let v = bessel_j(n, x).unwrap();
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(bessel_j(-n, x).unwrap(), s * v);
        prop_assert_eq!(bessel_j(n, -x).unwrap(), s * v);
    }

    #[test]
    fn bell_complete_is_sum_of_partials(re in prop::collection::vec(-2.0f64..2.0, 1..9),
                                         im in prop::collection::vec(-2.0f64..2.0, 9)) {
        let n = re.len();
        let xs: Vec<Complex64> = re.iter().zip(&im).map(|(a, b)| Complex64::new(*a, *b)).collect();
        let sum: Complex64 = (1..=n).map(|k| bell_partial(n, k, &xs).unwrap()).sum();
        prop_assert_eq!(bell_complete(n, &xs).unwrap(), sum);
    }
}
