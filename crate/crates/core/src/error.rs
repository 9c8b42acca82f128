use thiserror::Error;

/// Errors raised by the numeric modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("dimension {0} must be even")]
    OddDimension(usize),
    #[error("trial count must be positive")]
    ZeroTrials,
    #[error("family list must not be empty")]
    NoFamilies,
    #[error("matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("negative argument {0} to f_alpha")]
    NegativeArgument(f64),
    #[error("alpha mismatch: {left} vs {right}")]
    AlphaMismatch { left: f64, right: f64 },
}
