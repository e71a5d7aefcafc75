//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for digraph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("edge ({0},{0}) is a self-pair; loops must be declared in the loop list")]
    SelfPairEdge(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("orientation word must have length >= 3, got {0}")]
    WordTooShort(usize),

    #[error("invalid orientation letter {0:?} (expected F or B)")]
    BadWordLetter(char),

    #[error("cycle lengths sum to {total} but the host has {order} vertices")]
    LengthMismatch { total: usize, order: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("dead end: {0}")]
    DeadEnd(String),

    #[error("retries exhausted after {attempts} attempts: {what}")]
    RetriesExhausted { attempts: usize, what: String },

    #[error("blow-up of order {order} exceeds the configured limit {limit}")]
    BlowupTooLarge { order: usize, limit: usize },

    #[error("stage failed in round {round}: {stage}")]
    StageFailed { round: usize, stage: String },

    #[error("unknown theorem suite {0:?}")]
    UnknownTheorem(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
