//! Photon-number statistics and the Mandel Q-parameter.

use crate::error::{Error, Result};
use crate::specfun::moments::{cubed_sum_check, CubedSumCheck};
use crate::states::FockState;

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    pub probs: Vec<f64>,
    /// Bound on the probability beyond the last entry.
    pub tail_bound: f64,
}

impl PhotonDistribution {
    /// A caller-supplied `P(n)`; entries must be finite and non-negative.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() || probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Domain(
                "probabilities must be finite, non-negative and non-empty".into(),
            ));
        }
        Ok(Self {
            probs,
            tail_bound: 0.0,
        })
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// `⟨n̂⟩` normalized by the retained probability.
    pub fn mean(&self) -> f64 {
        self.raw_moment(1) / self.total()
    }

    /// `⟨n̂²⟩` normalized by the retained probability.
    pub fn second_moment(&self) -> f64 {
        self.raw_moment(2) / self.total()
    }

    fn raw_moment(&self, power: i32) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(n, p)| (n as f64).powi(power) * p)
            .sum()
    }

    /// `(⟨n̂²⟩ − ⟨n̂⟩²)/⟨n̂⟩ − 1`.
    pub fn mandel_q(&self) -> Result<f64> {
        mandel_from_moments(self.mean(), self.second_moment())
    }
}

pub(crate) fn mandel_from_moments(mean: f64, second: f64) -> Result<f64> {
    if !(mean > 0.0) {
        return Err(Error::UndefinedMoment);
    }
    Ok((second - mean * mean) / mean - 1.0)
}

/// `P(n) = |c_n|²`.
pub fn photon_distribution(state: &FockState) -> PhotonDistribution {
    PhotonDistribution {
        probs: state.coeffs().iter().map(|c| c.norm_sqr()).collect(),
        tail_bound: state.tail_bound(),
    }
}

pub fn mandel_q(state: &FockState) -> Result<f64> {
    photon_distribution(state).mandel_q()
}

/// Mandel Q of the exact displaced vacuum from the weighted Bessel sums
/// `S_p = Σ k^p J_k²(2x)`: `⟨n̂⟩ = (S₃ − S₂)/x²`, `⟨n̂²⟩ = (S₄ − 2S₃ + S₂)/x²`
/// with `S₂ = x²` and `S₄ = 3x⁴ + x²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedMandel {
    pub q: f64,
    pub mean: f64,
    pub second_moment: f64,
    /// Which `S₃` was used and how far the closed form was from the direct sum.
    pub cubic: CubedSumCheck,
}

pub fn mandel_closed_report(x: f64) -> Result<ClosedMandel> {
    if x == 0.0 {
        return Err(Error::UndefinedMoment);
    }
    let cubic = cubed_sum_check(x)?;
    let x2 = x * x;
    let s2 = x2;
    let s3 = cubic.preferred();
    let s4 = 3.0 * x2 * x2 + x2;
    let mean = (s3 - s2) / x2;
    let second = (s4 - 2.0 * s3 + s2) / x2;
    Ok(ClosedMandel {
        q: mandel_from_moments(mean, second)?,
        mean,
        second_moment: second,
        cubic,
    })
}

pub fn mandel_q_closed(x: f64) -> Result<f64> {
    mandel_closed_report(x).map(|r| r.q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::sg_vacuum_displaced;

    #[test]
    fn number_state_is_minus_one() {
        for m in 1..8 {
            let s = FockState::number(m, 12).unwrap();
            assert!((mandel_q(&s).unwrap() + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn vacuum_is_undefined() {
        let s = FockState::vacuum(5);
        assert_eq!(mandel_q(&s), Err(Error::UndefinedMoment));
        assert_eq!(mandel_q_closed(0.0), Err(Error::UndefinedMoment));
    }

    #[test]
    fn poissonian_is_zero() {
        let lambda: f64 = 3.7;
        let mut probs = Vec::new();
        let mut p = (-lambda).exp();
        for n in 0..80 {
            if n > 0 {
                p *= lambda / n as f64;
            }
            probs.push(p);
        }
        let d = PhotonDistribution::from_probs(probs).unwrap();
        assert!(d.mandel_q().unwrap().abs() < 1e-10);
    }

    #[test]
    fn rejects_negative_probabilities() {
        assert!(PhotonDistribution::from_probs(vec![0.5, -0.1]).is_err());
        assert!(PhotonDistribution::from_probs(vec![]).is_err());
    }

    #[test]
    fn closed_form_matches_coefficients() {
        for &x in &[0.05, 0.7, 2.32, 6.0, 13.48, 19.5] {
            let state = sg_vacuum_displaced(x, None).unwrap();
            let a = mandel_q(&state).unwrap();
            let b = mandel_q_closed(x).unwrap();
            assert!((a - b).abs() < 1e-8, "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn most_squeezed_value() {
        let q = mandel_q_closed(2.32).unwrap();
        assert!((q + 0.64).abs() < 0.01, "{q}");
    }
}
