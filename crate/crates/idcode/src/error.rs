use crate::lattice::GridPoint;
use thiserror::Error;

/// Errors produced by library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A ball radius above [`crate::MAX_RADIUS`] was requested.
    #[error("radius {radius} exceeds the supported maximum {max}")]
    RadiusTooLarge { radius: u32, max: u32 },

    /// A coordinate left the documented overflow-safe range.
    #[error("coordinate magnitude {value} exceeds the safe bound {bound}")]
    CoordinateOutOfRange { value: i64, bound: i64 },

    /// An operation needed a ball that is not contained in the window support.
    #[error("support window does not contain the radius-{radius} ball around {center}")]
    InsufficientWindow { center: GridPoint, radius: u32 },

    /// A vertex required to be a codeword is not one.
    #[error("{vertex} is not a codeword of the window")]
    NotACodeword { vertex: GridPoint },

    /// A vertex inside the summation ball has an empty I-set.
    #[error("{vertex} is not covered by any codeword")]
    Uncovered { vertex: GridPoint },

    /// A problem set handed to stage 2 violates the stage-1 contract.
    #[error("malformed problem set: {reason}")]
    MalformedProblemSet { reason: String },

    /// A parameter violated an operation precondition.
    #[error("{reason}")]
    InvalidParameter { reason: String },

    /// A pattern file failed to parse; positions are 1-based.
    #[error("pattern parse error at line {line}, column {column}: {reason}")]
    PatternParse { line: usize, column: usize, reason: String },

    /// A checkpoint file was unreadable or inconsistent with the run.
    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
