//! Modified Gram-Schmidt QR and least squares in complex double,
//! double-double and quad-double arithmetic, with a deterministic
//! multi-threaded executor and the experiment drivers around them.

pub mod cfield;
pub mod expgen;
pub mod parexec;
pub mod precision;
pub mod qrls;
pub mod xreal;

pub use precision::Precision;

use cfield::random::RangeError;
use xreal::ArithError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("breakdown at column {column}: pivot {pivot:e} below threshold {threshold:e}")]
    Breakdown {
        column: usize,
        pivot: f64,
        threshold: f64,
    },
    #[error("overflow at column {column}")]
    Overflow { column: usize },
    #[error("zero diagonal entry at index {index}")]
    ZeroDiagonal { index: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precision mismatch: {0}")]
    Precision(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Range(#[from] RangeError),
    #[error("worker pool: {0}")]
    Exec(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Data,
    Numerical,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) | Error::Range(_) => ErrorClass::Usage,
            Error::Dimension(_) | Error::Parse { .. } | Error::Precision(_) | Error::Io { .. } => {
                ErrorClass::Data
            }
            Error::Breakdown { .. }
            | Error::Overflow { .. }
            | Error::ZeroDiagonal { .. }
            | Error::Arith(_) => ErrorClass::Numerical,
            Error::Exec(_) => ErrorClass::Internal,
        }
    }

    /// Stable short tag for machine consumption.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Breakdown { .. } => "breakdown",
            Error::Overflow { .. } => "overflow",
            Error::ZeroDiagonal { .. } => "zero-diagonal",
            Error::Arith(_) => "arith",
            Error::Dimension(_) => "dimension",
            Error::Parse { .. } => "parse",
            Error::Precision(_) => "precision",
            Error::Config(_) => "config",
            Error::Range(_) => "config",
            Error::Exec(_) => "exec",
            Error::Io { .. } => "io",
        }
    }
}
