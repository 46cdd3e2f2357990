use thiserror::Error;

/// Errors raised by the Fock-space, deformation, state and analysis layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: need at least {1} levels")]
    InvalidDimension(usize, usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("evaluation failed at level {level}: {reason}")]
    Evaluation { level: usize, reason: String },

    #[error("matrix exponential overflow (1-norm of argument = {norm:e})")]
    ExponentialOverflow { norm: f64 },

    #[error("invalid parameter for family `{family}`: {reason}")]
    Parameter { family: String, reason: String },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation too coarse: tail mass {tail:e} exceeds {tolerance:e} at dim {dim}; use a larger dimension")]
    Truncation { tail: f64, tolerance: f64, dim: usize },

    #[error("T operator not invertible: zero entry at level {0}")]
    NonInvertible(usize),

    #[error("operation not supported for this label: {0}")]
    UnsupportedLabel(String),

    #[error("degenerate photon statistics: {0}")]
    DegenerateStatistics(String),
}

impl Error {
    /// Short machine-readable kind used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDimension(..) => "invalid-dimension",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Evaluation { .. } => "evaluation",
            Error::ExponentialOverflow { .. } => "exponential-overflow",
            Error::Parameter { .. } => "parameter",
            Error::UnknownFamily(_) => "unknown-family",
            Error::Domain(_) => "domain",
            Error::Truncation { .. } => "truncation",
            Error::NonInvertible(_) => "non-invertible",
            Error::UnsupportedLabel(_) => "unsupported-label",
            Error::DegenerateStatistics(_) => "degenerate-statistics",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
