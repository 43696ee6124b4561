use crate::error::{ensure_finite, Error, Result};
use crate::states::sg_evolved;

use super::statistics::mandel_q;

/// Golden-section stops once the bracket is this narrow.
pub const MINIMUM_TOL: f64 = 1e-6;
const CROSSING_TOL: f64 = 1e-9;

/// `Q(τ)` for the evolved state from `|m⟩`, sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MandelSeries {
    pub m: usize,
    /// `(τ, Q)` sorted by `τ`.
    pub samples: Vec<(f64, f64)>,
    /// Refined `(τ*, Q*)` of the smallest Q.
    pub minimum: (f64, f64),
    /// Largest `τ` at which Q changes sign, if any.
    pub zero_crossing: Option<f64>,
}

pub fn mandel_at(m: usize, tau: f64) -> Result<f64> {
    mandel_q(&sg_evolved(m, tau, None)?)
}

pub fn mandel_scan(tau_min: f64, tau_max: f64, steps: usize, m: usize) -> Result<MandelSeries> {
    ensure_finite("tau_min", tau_min)?;
    ensure_finite("tau_max", tau_max)?;
    if steps < 2 {
        return Err(Error::Domain(format!("steps must be at least 2, got {steps}")));
    }
    if tau_max <= tau_min {
        return Err(Error::Domain("tau_max must exceed tau_min".into()));
    }
    if m == 0 && tau_min <= 0.0 {
        return Err(Error::Domain(
            "tau_min must be positive for m = 0 (Q is undefined at the vacuum)".into(),
        ));
    }

    let taus: Vec<f64> = (0..steps)
        .map(|k| tau_min + (tau_max - tau_min) * k as f64 / (steps - 1) as f64)
        .collect();
    let samples = taus
        .iter()
        .map(|&t| mandel_at(m, t).map(|q| (t, q)))
        .collect::<Result<Vec<_>>>()?;

    let best = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(k, _)| k)
        .expect("at least two samples");
    let lo = taus[best.saturating_sub(1)];
    let hi = taus[(best + 1).min(steps - 1)];
    let refined = golden_section(|t| mandel_at(m, t), lo, hi, MINIMUM_TOL)?;
    let minimum = if refined.1 <= samples[best].1 {
        refined
    } else {
        samples[best]
    };

    let zero_crossing = match samples
        .windows(2)
        .rposition(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0))
    {
        Some(k) => Some(bisect(
            |t| mandel_at(m, t),
            samples[k],
            samples[k + 1],
        )?),
        None => None,
    };

    Ok(MandelSeries {
        m,
        samples,
        minimum,
        zero_crossing,
    })
}

fn golden_section<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, f(t)?))
}

fn bisect<F>(f: F, lo: (f64, f64), hi: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut fa) = lo;
    let (mut b, _) = hi;
    while b - a > CROSSING_TOL {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (t, v) = golden_section(|x| Ok((x - 1.3) * (x - 1.3) - 2.0), 0.0, 3.0, 1e-8).unwrap();
        assert!((t - 1.3).abs() < 1e-7);
        assert!((v + 2.0).abs() < 1e-12);
    }

    #[test]
    fn bisection_finds_root() {
        let r = bisect(|x| Ok(x * x - 2.0), (0.0, -2.0), (2.0, 2.0)).unwrap();
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn argument_checks() {
        assert!(mandel_scan(0.0, 5.0, 10, 0).is_err());
        assert!(mandel_scan(0.1, 5.0, 1, 0).is_err());
        assert!(mandel_scan(5.0, 1.0, 10, 2).is_err());
        assert!(mandel_scan(0.0, 5.0, 10, 2).is_ok());
    }

    #[test]
    fn number_state_start() {
        let s = mandel_scan(0.0, 1.0, 11, 5).unwrap();
        assert!((s.samples[0].1 + 1.0).abs() < 1e-15);
        assert!((mandel_at(5, 1e-4).unwrap() + 1.0).abs() < 1e-6);
    }
}
