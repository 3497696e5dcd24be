use thiserror::Error;

use crate::partition::SpecialViolation;
use crate::sequence::SequenceViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text does not follow the partition or sequence grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed text that does not describe a partition of `[m]`.
    #[error("not a partition: {0}")]
    InvalidPartition(String),

    #[error("partition is crossing: {0}")]
    Crossing(String),

    #[error("not a special partition: {0}")]
    NotSpecial(SpecialViolation),

    #[error("not a valid sequence: {0}")]
    InvalidSequence(SequenceViolation),

    #[error("invalid arc diagram: {0}")]
    InvalidDiagram(String),

    #[error("value {value} exceeds governing bound {bound} at position {position}")]
    BoundExceeded {
        position: usize,
        value: u32,
        bound: u32,
    },

    /// A stretch step found arcs that do not match the expected chain shape.
    #[error("stretch step {step}: {reason}")]
    Structure { step: usize, reason: String },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

impl Error {
    /// True for errors caused by malformed input text rather than by the
    /// value failing a combinatorial condition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
