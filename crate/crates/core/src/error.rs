use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of refinement levels.
    #[error("quadrature did not converge: achieved {achieved:.3e}, requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    /// Amplitude reached the top of the truncated basis.
    #[error("truncation too small: edge amplitude {edge:.3e} exceeds {threshold:.1e}; try N >= {suggested}")]
    Truncation {
        edge: f64,
        threshold: f64,
        suggested: usize,
    },

    /// Mandel Q requested for a state with zero mean photon number.
    #[error("mean photon number is zero; Mandel Q is undefined")]
    UndefinedMoment,

    /// Two independent integration schemes disagree.
    #[error("oracle schemes disagree by {deviation:.3e} (limit {limit:.1e})")]
    OracleDisagreement { deviation: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
