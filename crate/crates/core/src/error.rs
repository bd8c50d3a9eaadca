use thiserror::Error;

/// Errors produced by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("Jacobi identity violated at (i, j, k, l) = {0:?}")]
    JacobiViolation((usize, usize, usize, usize)),

    #[error("generator index {index} out of range for dimension {dim}")]
    GeneratorOutOfRange { index: usize, dim: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid Casimir data: {0}")]
    InvalidCasimir(String),

    #[error("element is not in the sphere basis: {0}")]
    NotSphereBasis(String),

    #[error("invalid spin {0}: must be a positive half-integer")]
    InvalidSpin(String),

    #[error("Casimir mismatch: quotient level c(h0) = {quotient}, representation scalar = {rep}")]
    CasimirMismatch { quotient: String, rep: String },

    #[error("non-scalar Casimir in representation")]
    NonScalarCasimir,

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
