//! Light in a semi-infinite array of evanescently coupled waveguides.
//!
//! With unit nearest-neighbour coupling and propagation distance `Z = cz`,
//! the modal amplitudes obey
//!
//! ```text
//! i·da_0/dZ + a_1 = 0
//! i·da_n/dZ + a_{n+1} + a_{n−1} = 0,   n ≥ 1
//! ```
//!
//! and light launched into site `m` evolves as
//! `a_n(Z) = A_0 [i^{n−m} J_{n−m}(2Z) + i^{n+m} J_{n+m+2}(2Z)]`.
//! The intensity `|a_n|²` is then the photon-number distribution of the
//! evolved SG state with `τ = Z`. This module evaluates the amplitudes
//! element by element and integrates the lattice equations independently of
//! [`crate::states`].

use num_complex::Complex64;

use crate::analysis::photon_distribution;
use crate::error::{ensure_finite, Error, Result};
use crate::specfun::bessel_j;
use crate::states::{sg_evolved, truncation_for, AUTO_EPS};

/// Field across sites `0..=N` at distance `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveguideField {
    pub amplitudes: Vec<Complex64>,
    pub z: f64,
    pub excited_site: usize,
    pub input_amplitude: f64,
}

impl WaveguideField {
    pub fn intensities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn power(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

fn unit_phase(k: i64) -> Complex64 {
    const CYCLE: [Complex64; 4] = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    CYCLE[k.rem_euclid(4) as usize]
}

/// `i^{n−m} J_{n−m}(2Z) + i^{n+m} J_{n+m+2}(2Z)` for unit input.
pub fn modal_amplitude_closed(n: usize, m: usize, z: f64) -> Result<Complex64> {
    modal_amplitude(n, m, z, 1.0)
}

pub fn modal_amplitude(n: usize, m: usize, z: f64, a0: f64) -> Result<Complex64> {
    ensure_finite("z", z)?;
    ensure_finite("a0", a0)?;
    let (n, m) = (n as i64, m as i64);
    let direct = unit_phase(n - m) * bessel_j(n - m, 2.0 * z)?;
    let reflected = unit_phase(n + m) * bessel_j(n + m + 2, 2.0 * z)?;
    Ok((direct + reflected) * a0)
}

fn auto_sites(m: usize, z: f64) -> usize {
    truncation_for(z.abs() + m as f64, AUTO_EPS)
}

/// Closed-form field over sites `0..=sites` (auto-sized when `None`).
pub fn closed_field(m: usize, z: f64, sites: Option<usize>, a0: f64) -> Result<WaveguideField> {
    let n_max = sites.unwrap_or_else(|| auto_sites(m, z));
    let amplitudes = (0..=n_max)
        .map(|n| modal_amplitude(n, m, z, a0))
        .collect::<Result<Vec<_>>>()?;
    Ok(WaveguideField {
        amplitudes,
        z,
        excited_site: m,
        input_amplitude: a0,
    })
}

/// `I_n(Z) = |a_n(Z)|²` for unit input.
pub fn intensity_profile(m: usize, z: f64, sites: Option<usize>) -> Result<Vec<f64>> {
    closed_field(m, z, sites, 1.0).map(|f| f.intensities())
}

/// `|i·da_n/dZ + a_{n+1} + a_{n−1}|` for the closed form, with
/// `d/dZ J_k(2Z) = J_{k−1}(2Z) − J_{k+1}(2Z)`.
pub fn coupled_mode_residual(n: usize, m: usize, z: f64) -> Result<f64> {
    ensure_finite("z", z)?;
    let (ni, mi) = (n as i64, m as i64);
    let w = 2.0 * z;
    let dj = |k: i64| -> Result<f64> { Ok(bessel_j(k - 1, w)? - bessel_j(k + 1, w)?) };
    let derivative =
        unit_phase(ni - mi) * dj(ni - mi)? + unit_phase(ni + mi) * dj(ni + mi + 2)?;
    let mut neighbours = modal_amplitude_closed(n + 1, m, z)?;
    if n > 0 {
        neighbours += modal_amplitude_closed(n - 1, m, z)?;
    }
    Ok((Complex64::new(0.0, 1.0) * derivative + neighbours).norm())
}

/// Largest `|a_N|` tolerated while integrating.
pub const EDGE_LIMIT: f64 = 1e-10;

/// Default local error tolerance for [`propagate_ode`].
pub const DEFAULT_ODE_TOL: f64 = 1e-10;

/// Integrates the lattice equations on sites `0..=sites` from `δ_{n,m}`
/// with an adaptive Dormand–Prince 5(4) pair.
pub fn propagate_ode(m: usize, z_end: f64, sites: usize, tol: f64) -> Result<WaveguideField> {
    ensure_finite("z_end", z_end)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    if m > sites {
        return Err(Error::Domain(format!(
            "excited site {m} is outside the {} simulated sites",
            sites + 1
        )));
    }
    let mut a = vec![Complex64::new(0.0, 0.0); sites + 1];
    a[m] = Complex64::new(1.0, 0.0);
    let field = |amplitudes: Vec<Complex64>| WaveguideField {
        amplitudes,
        z: z_end,
        excited_site: m,
        input_amplitude: 1.0,
    };
    if z_end == 0.0 {
        return Ok(field(a));
    }
    let edge_check = |a: &[Complex64]| -> Result<()> {
        let edge = a[a.len() - 1].norm();
        if edge > EDGE_LIMIT {
            return Err(Error::Truncation {
                edge,
                threshold: EDGE_LIMIT,
                suggested: auto_sites(m, z_end) + 16,
            });
        }
        Ok(())
    };

    let dir = z_end.signum();
    let span = z_end.abs();
    let mut z = 0.0;
    let mut h = 0.01_f64.min(span);
    let mut rhs = Rhs::new(sites + 1);
    while z < span {
        if z + h > span {
            h = span - z;
        }
        let (next, err) = rhs.dopri_step(&a, dir * h);
        let scale = next
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .max(1.0);
        // error per unit length, so the accumulated error stays near tol·|Z|
        let ratio = err / (tol * scale * h.min(1.0));
        if ratio <= 1.0 {
            z += h;
            a = next;
            edge_check(&a)?;
        }
        let factor = if ratio == 0.0 {
            5.0
        } else {
            (0.9 * ratio.powf(-0.25)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h < 1e-12 {
            return Err(Error::Domain("ODE step size underflow".into()));
        }
    }
    Ok(field(a))
}

/// Workspace for `da/dZ = i(a_{n+1} + a_{n−1})`.
struct Rhs {
    k: [Vec<Complex64>; 7],
    tmp: Vec<Complex64>,
}

// Dormand–Prince tableau; the system is autonomous so the nodes are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

impl Rhs {
    fn new(n: usize) -> Self {
        let zero = vec![Complex64::new(0.0, 0.0); n];
        Self {
            k: std::array::from_fn(|_| zero.clone()),
            tmp: zero,
        }
    }

    fn eval(a: &[Complex64], out: &mut [Complex64]) {
        let n = a.len();
        let i = Complex64::new(0.0, 1.0);
        for s in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            if s > 0 {
                acc += a[s - 1];
            }
            if s + 1 < n {
                acc += a[s + 1];
            }
            out[s] = i * acc;
        }
    }

    fn dopri_step(&mut self, a: &[Complex64], h: f64) -> (Vec<Complex64>, f64) {
        let n = a.len();
        for stage in 0..7 {
            for s in 0..n {
                let mut v = a[s];
                for (j, coef) in A[stage].iter().enumerate().take(stage) {
                    if *coef != 0.0 {
                        v += self.k[j][s] * (h * coef);
                    }
                }
                self.tmp[s] = v;
            }
            Self::eval(&self.tmp, &mut self.k[stage]);
        }
        let mut next = a.to_vec();
        let mut err = 0.0_f64;
        for s in 0..n {
            let mut hi = Complex64::new(0.0, 0.0);
            let mut lo = Complex64::new(0.0, 0.0);
            for j in 0..7 {
                hi += self.k[j][s] * B5[j];
                lo += self.k[j][s] * B4[j];
            }
            next[s] += hi * h;
            err = err.max(((hi - lo) * h).norm());
        }
        (next, err)
    }
}

/// `max_n |I_n(Z = x) − P_m(n, τ = x)|` between this module's intensities and
/// the photon distribution of [`sg_evolved`].
pub fn analogy_report(m: usize, x: f64, sites: Option<usize>) -> Result<f64> {
    let n_max = sites.unwrap_or_else(|| auto_sites(m, x));
    let intensity = intensity_profile(m, x, Some(n_max))?;
    let photons = photon_distribution(&sg_evolved(m, x, Some(n_max))?);
    Ok(intensity
        .iter()
        .zip(&photons.probs)
        .map(|(i, p)| (i - p).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn launch_conditions() {
        for m in [0usize, 1, 4] {
            assert_eq!(
                modal_amplitude_closed(m, m, 0.0).unwrap(),
                Complex64::new(1.0, 0.0)
            );
            for n in 0..8 {
                if n != m {
                    assert_eq!(modal_amplitude_closed(n, m, 0.0).unwrap().norm(), 0.0);
                }
            }
        }
        let f = propagate_ode(2, 0.0, 10, 1e-10).unwrap();
        assert_eq!(f.amplitudes[2], Complex64::new(1.0, 0.0));
        assert_eq!(f.power(), 1.0);
    }

    #[test]
    fn lossless_profile() {
        let p = intensity_profile(1, 3.5, None).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn closed_form_solves_lattice() {
        for m in [0usize, 1, 3] {
            for &z in &[0.3, 1.7, 6.0] {
                for n in 0..20 {
                    assert!(coupled_mode_residual(n, m, z).unwrap() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn input_amplitude_scales() {
        let f = closed_field(1, 2.0, None, 3.0).unwrap();
        assert!((f.power() - 9.0).abs() < 1e-9);
    }

    #[test]
    fn ode_short_run() {
        let f = propagate_ode(1, 1.0, 40, 1e-10).unwrap();
        for n in 0..=40 {
            let want = modal_amplitude_closed(n, 1, 1.0).unwrap();
            assert!((f.amplitudes[n] - want).norm() < 1e-8);
        }
    }

    #[test]
    fn ode_edge_leak_is_an_error() {
        assert!(matches!(
            propagate_ode(0, 8.0, 10, 1e-10),
            Err(Error::Truncation { .. })
        ));
        assert!(propagate_ode(5, 1.0, 3, 1e-10).is_err());
        assert!(propagate_ode(0, 1.0, 10, 0.0).is_err());
    }

    #[test]
    fn analogy_at_origin_is_exact() {
        assert_eq!(analogy_report(5, 0.0, None).unwrap(), 0.0);
    }
}
