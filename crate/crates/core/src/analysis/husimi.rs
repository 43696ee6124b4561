//! Husimi Q function `Q(α) = ⟨α|ψ⟩⟨ψ|α⟩ / π`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::states::FockState;

/// `(1/π) e^{−|α|²} |Σ_n (α*)ⁿ/√n! · c_n|²`.
///
/// Each term's magnitude is assembled in log space together with its share
/// of `e^{−|α|²/2}`, so neither `n!` nor `|α|^{2n}` ever overflows.
pub fn husimi_q(state: &FockState, alpha: Complex64) -> f64 {
    overlap_with_coherent(state.coeffs(), alpha).norm_sqr() / PI
}

/// `⟨α|ψ⟩` for the coefficient vector `c`.
pub(crate) fn overlap_with_coherent(coeffs: &[Complex64], alpha: Complex64) -> Complex64 {
    let r = alpha.norm();
    if r == 0.0 {
        return coeffs[0];
    }
    let ln_r = r.ln();
    let theta = alpha.arg();
    let gauss = -0.5 * r * r;
    let mut ln_fact = 0.0_f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, c) in coeffs.iter().enumerate() {
        if n > 0 {
            ln_fact += (n as f64).ln();
        }
        let ln_mag = n as f64 * ln_r - 0.5 * ln_fact + gauss;
        // (α*)ⁿ = rⁿ e^{−inθ}
        sum += c * Complex64::from_polar(ln_mag.exp(), -(n as f64) * theta);
    }
    sum
}

/// Rectangular window in the complex `α` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    /// Points per axis, endpoints included.
    pub resolution: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::square(8.0, 257)
    }
}

impl GridSpec {
    /// `[−half_width, half_width]²`.
    pub fn square(half_width: f64, resolution: usize) -> Self {
        Self {
            re_range: (-half_width, half_width),
            im_range: (-half_width, half_width),
            resolution,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::Domain(format!(
                "grid resolution must be at least 2, got {}",
                self.resolution
            )));
        }
        let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && b > a;
        if !ok(self.re_range) || !ok(self.im_range) {
            return Err(Error::Domain("grid ranges must be finite and increasing".into()));
        }
        Ok(())
    }

    pub fn re(&self, i: usize) -> f64 {
        let (a, b) = self.re_range;
        a + (b - a) * i as f64 / (self.resolution - 1) as f64
    }

    pub fn im(&self, j: usize) -> f64 {
        let (a, b) = self.im_range;
        a + (b - a) * j as f64 / (self.resolution - 1) as f64
    }

    pub fn cell_area(&self) -> f64 {
        let steps = (self.resolution - 1) as f64;
        (self.re_range.1 - self.re_range.0) / steps * (self.im_range.1 - self.im_range.0) / steps
    }
}

/// Husimi values on a [`GridSpec`], row-major with the real part as the row.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl PhaseGrid {
    pub fn value(&self, i_re: usize, j_im: usize) -> f64 {
        self.values[i_re * self.spec.resolution + j_im]
    }

    /// Riemann sum of `Q` over the window; approaches 1 as the window covers the state.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec.cell_area()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `(re, im, q)` triples in storage order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let res = self.spec.resolution;
        self.values
            .iter()
            .enumerate()
            .map(move |(k, q)| (self.spec.re(k / res), self.spec.im(k % res), *q))
    }
}

/// Evaluates [`husimi_q`] at every grid point, rows in parallel.
pub fn husimi_grid(state: &FockState, spec: &GridSpec) -> Result<PhaseGrid> {
    spec.validate()?;
    let res = spec.resolution;
    let mut values = vec![0.0; res * res];
    values
        .par_chunks_mut(res)
        .enumerate()
        .for_each(|(i, row)| {
            let re = spec.re(i);
            for (j, v) in row.iter_mut().enumerate() {
                *v = husimi_q(state, Complex64::new(re, spec.im(j)));
            }
        });
    Ok(PhaseGrid { spec: *spec, values })
}

/// Sampling used by [`angular_lobes`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LobeSettings {
    pub radial_points: usize,
    pub radial_angles: usize,
    pub angular_points: usize,
    /// Outer radius of the radial scan; `None` picks `2√(⟨n⟩+1) + 3`.
    pub r_max: Option<f64>,
    /// Peaks below this fraction of the ring maximum are ignored.
    pub threshold: f64,
}

impl Default for LobeSettings {
    fn default() -> Self {
        Self {
            radial_points: 240,
            radial_angles: 180,
            angular_points: 720,
            r_max: None,
            threshold: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LobeReport {
    /// Radius carrying the most Q mass, `argmax_r r∫Q(r,φ)dφ`.
    pub radius: f64,
    /// Angles of the qualifying local maxima of `Q(radius, φ)`.
    pub peak_angles: Vec<f64>,
    /// Largest `Q` on the ring.
    pub ring_max: f64,
}

impl LobeReport {
    pub fn count(&self) -> usize {
        self.peak_angles.len()
    }
}

/// Counts the lobes of `Q` on the ring of maximal radial mass.
pub fn angular_lobes(state: &FockState, settings: &LobeSettings) -> LobeReport {
    let r_max = settings.r_max.unwrap_or_else(|| {
        let mean: f64 = state
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum::<f64>()
            / state.norm_sqr();
        2.0 * (mean + 1.0).sqrt() + 3.0
    });
    let ring = |r: f64, count: usize| -> Vec<f64> {
        (0..count)
            .map(|k| {
                let phi = 2.0 * PI * k as f64 / count as f64;
                husimi_q(state, Complex64::from_polar(r, phi))
            })
            .collect()
    };
    let radial: Vec<(f64, f64)> = (1..=settings.radial_points)
        .into_par_iter()
        .map(|k| {
            let r = r_max * k as f64 / settings.radial_points as f64;
            (r, r * ring(r, settings.radial_angles).iter().sum::<f64>())
        })
        .collect();
    let radius = radial
        .iter()
        .copied()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(r, _)| r)
        .unwrap_or(0.0);

    let profile = ring(radius, settings.angular_points);
    let ring_max = profile.iter().copied().fold(0.0, f64::max);
    let n = profile.len();
    let peak_angles = (0..n)
        .filter(|&k| {
            let here = profile[k];
            here > profile[(k + n - 1) % n]
                && here >= profile[(k + 1) % n]
                && here > settings.threshold * ring_max
        })
        .map(|k| 2.0 * PI * k as f64 / n as f64)
        .collect();
    LobeReport {
        radius,
        peak_angles,
        ring_max,
    }
}
