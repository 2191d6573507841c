use num::complex::Complex64;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must share a rank or dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A cyclic group order with no built-in lattice symmetry.
    #[error("unsupported cyclic order {0}: built-in generators exist for orders 2, 3, 4, 6")]
    UnsupportedOrder(u32),

    /// The requested matrix is singular where an invertible one is required.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// An extrapolation whose successive estimates stopped converging.
    /// The partial estimate sequence is kept for inspection.
    #[error("extrapolation did not converge after {} estimates", estimates.len())]
    NumericalFailure { estimates: Vec<Complex64> },

    /// A group action that is not regular enough for quotient construction,
    /// together with a witness of the violation.
    #[error("action is not regular: {witness}")]
    NotRegular { witness: String },

    /// A computation whose size exceeds the configured resource cap.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// Disagreement between two rank methods that must coincide.
    #[error("integrity failure: {0}")]
    Integrity(String),

    /// Instance file validation failure, with the offending field path.
    #[error("invalid instance at `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for [`Error::InvalidParameter`].
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Shorthand for [`Error::Validation`].
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
