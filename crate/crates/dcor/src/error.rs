//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is singular or not positive definite (critical value {value:e})")]
    SingularMatrix { value: f64 },

    #[error("entry ({i}, {j}) breaks symmetry")]
    NotSymmetric { i: usize, j: usize },

    #[error("sample counts differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("argument outside the valid domain: {message}")]
    DomainError { message: String },

    #[error("covariance specification is not positive definite (offending eigenvalue {eigenvalue})")]
    NotPositiveDefinite { eigenvalue: f64 },

    #[error("covariance blocks must be positive scalar matrices")]
    NotScalarCovariance,

    #[error("lag {lag} too large for series of length {len}")]
    LagTooLarge { lag: usize, len: usize },

    #[error("file not found: {path}")]
    FileNotFound { path: String },

    #[error("missing column '{name}'")]
    MissingColumn { name: String },

    #[error("duplicate column '{name}'")]
    DuplicateColumn { name: String },

    #[error("non-numeric cell at data row {row}, column '{column}': '{value}'")]
    NonNumericCell {
        row: usize,
        column: String,
        value: String,
    },

    #[error("data row {row} has {found} fields, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid specification file '{path}': {message}")]
    SpecParse { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(message: impl Into<String>) -> Self {
        Error::DomainError {
            message: message.into(),
        }
    }
}
