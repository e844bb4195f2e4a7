use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("dimension {0} is not one of the suite dimensions (2, 3, 5, 10, 20, 40)")]
    NonStandardDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unknown base function id {0}")]
    UnknownFunction(u32),

    #[error("invalid instance id {0}")]
    InvalidInstance(u32),

    #[error("pair index {0} out of range 1..=55")]
    PairIndexOutOfRange(u32),

    #[error("invalid pair ({0}, {1}): positions must satisfy 1 <= i <= j <= 10")]
    InvalidPair(u32, u32),

    #[error("degenerate normalization: ideal {ideal:?} does not lie strictly below nadir {nadir:?}")]
    DegenerateNormalization { ideal: (f64, f64), nadir: (f64, f64) },

    #[error("problem {0} violates a suite invariant: {1}")]
    InvariantViolation(String, String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("archive is empty")]
    EmptyArchive,

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
