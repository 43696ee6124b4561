use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use nlcs::analysis::{
    angular_lobes, husimi_grid, husimi_q, mandel_at, mandel_q, mandel_q_closed, mandel_scan,
    photon_distribution, GridSpec, LobeSettings,
};
use nlcs::specfun::bessel_j;
use nlcs::states::{sg_displaced_approx, sg_evolved, sg_vacuum_displaced, FockState};
use nlcs::Complex64;
use proptest::prelude::*;

/// Q straight from `Σ n|c_n|²` and `Σ n²|c_n|²`, without going through the distribution.
fn mandel_from_amplitudes(state: &FockState) -> f64 {
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for (n, c) in state.coeffs().iter().enumerate() {
        let w = c.norm_sqr();
        let n = n as f64;
        s0 += w;
        s1 += n * w;
        s2 += n * n * w;
    }
    let mean = s1 / s0;
    (s2 / s0 - mean * mean) / mean - 1.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn summation_orders_agree(x in 0.05..20.0f64, m in 0usize..8, tau in 0.05..20.0f64) {
        for s in [
            sg_vacuum_displaced(x, None).unwrap(),
            sg_displaced_approx(x, None).unwrap(),
            sg_evolved(m, tau, None).unwrap(),
        ] {
            let a = mandel_q(&s).unwrap();
            let b = mandel_from_amplitudes(&s);
            prop_assert!((a - b).abs() < 1e-12, "{} vs {}", a, b);
        }
    }

    #[test]
    fn closed_mandel_matches_coefficients(x in 0.01..20.0f64) {
        let a = mandel_q_closed(x).unwrap();
        let b = mandel_q(&sg_vacuum_displaced(x, None).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn husimi_is_phase_blind(phi in -PI..PI, re in -6.0..6.0f64, im in -6.0..6.0f64) {
        let s = sg_evolved(2, 3.0, None).unwrap();
        let alpha = Complex64::new(re, im);
        let a = husimi_q(&s, alpha);
        let b = husimi_q(&s.with_global_phase(phi), alpha);
        prop_assert!((a - b).abs() <= 1e-15 + 1e-13 * a);
        prop_assert!(a >= 0.0);
    }

    #[test]
    fn quarter_turn_pointwise(tau in 0.1..20.0f64, re in -8.0..8.0f64, im in -8.0..8.0f64) {
        let n = nlcs::states::truncation_for(tau, nlcs::states::AUTO_EPS);
        let ev = sg_evolved(0, tau, Some(n)).unwrap();
        let ex = sg_vacuum_displaced(tau, Some(n)).unwrap();
        let a = husimi_q(&ev, Complex64::new(re, im));
        let b = husimi_q(&ex, Complex64::new(im, -re));
        prop_assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn distributions_follow_their_closed_forms() {
    let x = 3.1;
    let p = photon_distribution(&sg_vacuum_displaced(x, None).unwrap());
    for (n, got) in p.probs.iter().enumerate() {
        let want = ((n + 1) as f64 * bessel_j(n as i64 + 1, 2.0 * x).unwrap() / x).powi(2);
        assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
    }
    let (m, tau) = (3usize, 4.4);
    let p = photon_distribution(&sg_evolved(m, tau, None).unwrap());
    for (n, got) in p.probs.iter().enumerate() {
        let (n, m) = (n as i64, m as i64);
        // (i^{n−m} a + i^{n+m} b)·conj(...) with i^{2m} = (−1)^m
        let a = bessel_j(n - m, 2.0 * tau).unwrap();
        let b = bessel_j(n + m + 2, 2.0 * tau).unwrap();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let want = a * a + b * b + 2.0 * sign * a * b;
        assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
    }
    let p = photon_distribution(&sg_evolved(5, 0.0, None).unwrap());
    assert_eq!(p.probs[5], 1.0);
    assert_eq!(p.total(), 1.0);
}

#[test]
fn husimi_mass_and_positivity() {
    for state in [
        sg_vacuum_displaced(2.32, None).unwrap(),
        sg_evolved(1, 5.0, None).unwrap(),
        sg_vacuum_displaced(20.0, None).unwrap(),
    ] {
        let grid = husimi_grid(&state, &GridSpec::default()).unwrap();
        assert!(grid.values.iter().all(|q| *q >= 0.0));
        let mass = grid.mass();
        assert!((mass - 1.0).abs() < 1e-3, "mass {mass}");
    }
}

#[test]
fn grid_agrees_with_pointwise_evaluation() {
    let state = sg_evolved(1, 2.0, None).unwrap();
    let spec = GridSpec {
        re_range: (-3.0, 2.0),
        im_range: (-1.0, 4.0),
        resolution: 11,
    };
    let grid = husimi_grid(&state, &spec).unwrap();
    for (re, im, q) in grid.points() {
        assert_eq!(q, husimi_q(&state, Complex64::new(re, im)));
    }
}

#[test]
fn mandel_series_shape() {
    let scan = mandel_scan(0.05, 20.0, 400, 0).unwrap();
    assert!(scan.samples.windows(2).all(|w| w[0].0 < w[1].0));
    let (t, q) = scan.minimum;
    assert!(scan.samples.iter().all(|s| s.1 >= q));
    assert_abs_diff_eq!(t, 2.3227, epsilon = 1e-3);
    assert_abs_diff_eq!(q, -0.6402, epsilon = 1e-3);
    assert_abs_diff_eq!(scan.zero_crossing.unwrap(), 13.4795, epsilon = 1e-3);
    assert_abs_diff_eq!(mandel_at(0, 0.1).unwrap(), -0.005, epsilon = 5e-5);
}

#[test]
fn excited_starts_report_their_minima() {
    // these are printed for inspection, not pinned to any value
    for m in [1usize, 2, 5, 10] {
        let scan = mandel_scan(0.0, 20.0, 400, m).unwrap();
        println!(
            "m = {m}: min Q = {:.5} at τ = {:.4}, last sign change {:?}",
            scan.minimum.1, scan.minimum.0, scan.zero_crossing
        );
        assert!(scan.minimum.1 >= -1.0 - 1e-12);
    }
    assert!((mandel_at(5, 1e-6).unwrap() + 1.0).abs() < 1e-9);
}

#[test]
fn cat_states_have_two_lobes_while_a_small_displacement_has_one() {
    let settings = LobeSettings::default();
    assert_eq!(
        angular_lobes(&sg_vacuum_displaced(20.0, None).unwrap(), &settings).count(),
        2
    );
    assert_eq!(
        angular_lobes(&sg_evolved(1, 5.0, None).unwrap(), &settings).count(),
        2
    );
    assert_eq!(
        angular_lobes(&sg_vacuum_displaced(1.0, None).unwrap(), &settings).count(),
        1
    );
}
