//! Crate-wide error type.
//!
//! Errors fall into two classes that the CLI maps onto distinct exit codes:
//! validation errors (bad inputs, bad config — exit code 1) and numerical
//! errors (an algorithm failed to converge — exit code 2). Numerical errors
//! carry the best value reached so a caller can still inspect partial results.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input failed a precondition (dimension mismatch, value out of range, …).
    #[error("validation error: {0}")]
    Validation(String),

    /// An iterative algorithm exceeded its budget without meeting tolerance.
    #[error("numerical error: {what}{}", best.map(|b| format!(" (best value reached: {b})")).unwrap_or_default())]
    Numerical { what: String, best: Option<f64> },

    /// One or more config fields were rejected; all offending fields reported.
    #[error("invalid config:\n{}", .0.join("\n"))]
    Config(Vec<String>),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn numerical(what: impl Into<String>, best: Option<f64>) -> Self {
        Error::Numerical { what: what.into(), best }
    }

    /// Exit code the CLI reports for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Config(_) | Error::Io(_) => 1,
            Error::Numerical { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
