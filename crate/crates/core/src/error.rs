use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The requested backend cannot hold the problem size.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("missing expectation value for {0}")]
    MissingExpectation(String),

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NonHermitian { residual: f64 },

    #[error("no convergence after {iterations} iterations: {what}")]
    NoConvergence { iterations: usize, what: String },

    #[error("insufficient shots: {shots} (need at least {minimum})")]
    InsufficientShots { shots: u64, minimum: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status for command-line use: 2 configuration or
    /// validation error, 3 capacity, 4 numeric failure, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity(_) => 3,
            Error::NonHermitian { .. } | Error::NoConvergence { .. } => 4,
            Error::Io(_) => 1,
            Error::InvalidInput(_)
            | Error::MissingExpectation(_)
            | Error::InsufficientShots { .. }
            | Error::DimensionMismatch { .. }
            | Error::Json(_) => 2,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
