use thiserror::Error;

use crate::rational::Rational;

/// A violated structural invariant of a game.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("vertex {0} has no outgoing edge")]
    Deadlock(String),
    #[error("distribution at {vertex} sums to {sum}")]
    DistributionSum { vertex: String, sum: Rational },
    #[error("probability {prob} on edge {vertex} -> {succ} is not positive")]
    NonPositiveProbability {
        vertex: String,
        succ: String,
        prob: Rational,
    },
    #[error("probability {prob} on edge {vertex} -> {succ} exceeds 1")]
    ProbabilityAboveOne {
        vertex: String,
        succ: String,
        prob: Rational,
    },
    #[error("edge {vertex} -> {succ} carries a probability but {vertex} is not random")]
    ProbabilityOnOwned { vertex: String, succ: String },
    #[error("edge {vertex} -> {succ} out of random vertex {vertex} has no probability")]
    MissingProbability { vertex: String, succ: String },
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
    #[error("edge {0} -> {1} declared twice")]
    DuplicateEdge(String, String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("game has no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid game: {0}")]
    Validation(#[from] ValidationError),
    #[error("invalid selection: {0}")]
    Selection(String),
    #[error("{0} is not a path of the game")]
    NotAPath(String),
    #[error("invalid strategy: {0}")]
    Strategy(String),
}
