use thiserror::Error;

use crate::verdict::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error (line {line}): {message}")]
    Parse { line: usize, message: String },

    #[error("ground-set mismatch: {left} vs {right} elements")]
    GroundMismatch { left: usize, right: usize },

    #[error("ground set of {0} elements exceeds the supported maximum of 64")]
    GroundTooLarge(usize),

    #[error("invalid ground set: {0}")]
    InvalidGround(String),

    #[error("invalid sign vector: {0}")]
    InvalidVector(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("face lattice is not graded; rank is undefined")]
    NotGraded,

    #[error("{0} is not a covector of the system")]
    NotCovector(String),

    #[error("{0} is not a tope of the system")]
    NotTope(String),

    #[error("{0} is not a vertex of the graph")]
    NotVertex(String),

    #[error("hull of an empty tuple is undefined")]
    EmptyTuple,

    #[error("hypothesis not met: {0}")]
    Hypothesis(Box<Violation>),

    #[error("hypothesis not met: {0}")]
    NotUniform(String),

    #[error("matrix has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("column {0} of the matrix is zero")]
    ZeroColumn(usize),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("sampling budget exhausted after {0} attempts")]
    SamplingExhausted(usize),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    /// True when the input does not satisfy (C0)–(C2), or is not uniform where that is required.
    pub fn is_hypothesis(&self) -> bool {
        matches!(self, Error::Hypothesis(_) | Error::NotUniform(_))
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Budget(_) | Error::GroundTooLarge(_) | Error::SamplingExhausted(_))
    }
}
