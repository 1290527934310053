use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),
    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(f64),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("operation requires a commutative algebra")]
    NonCommutative,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("Paley constant is infinite")]
    InfinitePaleyConstant,
    #[error("profile is not admissible: {0}")]
    Profile(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
