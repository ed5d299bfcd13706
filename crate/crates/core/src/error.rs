use thiserror::Error;

/// Errors raised by the Gaussian-channel toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode count must be at least 1")]
    ZeroModes,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("invalid covariance matrix: {0}")]
    InvalidCovariance(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("channel is not phase-insensitive")]
    NotPhaseInsensitive,
    #[error("infeasible constraint: {0}")]
    Infeasible(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("Fock truncation at cutoff {cutoff}: trace deficit {deficit:e}")]
    Truncation { cutoff: usize, deficit: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
