use thiserror::Error;

use crate::params::Phase;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("quantization bits must be >= 1, got {0}")]
    InvalidBits(i64),

    #[error("distortion factor must lie in (0, 1], got {0}")]
    InvalidDistortion(f64),

    #[error("antenna roles do not match phase {phase}: {reason}")]
    RoleMismatch { phase: Phase, reason: String },

    #[error("limit requires a common Rician K-factor across all links")]
    HeterogeneousK,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ADC power is undefined for infinite resolution")]
    InfiniteResolution,

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    pub(crate) fn roles(phase: Phase, reason: impl Into<String>) -> Self {
        Error::RoleMismatch {
            phase,
            reason: reason.into(),
        }
    }
}
