//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by ingestion, solvers, and the pipeline.
#[derive(Debug)]
pub enum Error {
    /// Underlying I/O failure.
    Io(std::io::Error),
    /// CSV that does not match the expected schema; carries the 1-based line.
    MalformedCsv { line: u64, message: String },
    /// A gold label outside [1, 5] or off the half-point grid.
    BadLabel { id: String, column: String, value: f64 },
    /// Duplicate record id within one dataset.
    DuplicateId(String),
    /// Binary feature file whose magic bytes are not `EMB1`.
    BadMagic { found: [u8; 4] },
    /// Matrix dimensions disagree with the header or the expected row count.
    DimensionMismatch { expected: String, found: String },
    /// NaN or infinity where a finite value is required.
    NonFinite { context: String },
    /// Singular normal equations; regularization would fix it.
    SingularSystem { context: String },
    /// Optimizer exceeded its iteration budget.
    NoConvergence { iterations: usize, gap: f64 },
    /// Training loss became non-finite.
    Divergence { epoch: usize },
    /// Caller passed arguments that violate a documented precondition.
    InvalidArgument(String),
    /// JSON artifact that does not parse or fails validation.
    BadArtifact { path: String, message: String },
    /// Artifact produced under a different format version or config.
    VersionMismatch { path: String, expected: String, found: String },
    /// Pseudo-label ids overlap the gold set.
    IdCollision(String),
    /// Configuration problems, all of them at once.
    InvalidConfig(Vec<String>),
    /// Another process holds the output-directory lock.
    OutputLocked(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::MalformedCsv { line, message } => {
                write!(f, "malformed csv at line {line}: {message}")
            }
            Error::BadLabel { id, column, value } => {
                write!(f, "off-grid label for id {id}, column {column}: {value}")
            }
            Error::DuplicateId(id) => write!(f, "duplicate id: {id}"),
            Error::BadMagic { found } => {
                write!(f, "bad magic bytes {found:?}, expected EMB1")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonFinite { context } => write!(f, "non-finite value in {context}"),
            Error::SingularSystem { context } => write!(
                f,
                "singular system in {context}; use a regularization strength > 0"
            ),
            Error::NoConvergence { iterations, gap } => {
                write!(f, "no convergence after {iterations} iterations, gap {gap:e}")
            }
            Error::Divergence { epoch } => {
                write!(f, "training diverged at epoch {epoch}; lower the learning rate")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::BadArtifact { path, message } => {
                write!(f, "bad artifact {path}: {message}")
            }
            Error::VersionMismatch { path, expected, found } => {
                write!(f, "artifact version mismatch in {path}: expected {expected}, found {found}")
            }
            Error::IdCollision(id) => {
                write!(f, "pseudo-label id collides with gold set: {id}")
            }
            Error::InvalidConfig(problems) => {
                write!(f, "invalid config: {}", problems.join("; "))
            }
            Error::OutputLocked(path) => {
                write!(f, "output directory locked by another run: {path}")
            }
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
