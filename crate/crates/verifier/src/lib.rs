//! Certificate checking for expected window mean-payoff values.
//!
//! A candidate vector is accepted when it satisfies the Bellman equations and,
//! inside every value class, each player wins almost surely on their trap
//! (the part of the class they cannot leave towards the boundary) with a
//! threshold one granularity step on their side of the class value.

mod certificate;
mod check;
mod decompose;
mod synth;

pub use certificate::{parse_certificate, serialize_certificate};
pub use check::{check_bellman, check_condition, verify, BellmanViolation, ClassCheck, Condition, VerificationReport};
pub use decompose::{decompose, Decomposition, TrapSplit, ValueClass};
pub use synth::{synthesize_optimal, trap_strategy, Synthesized};

use num_bigint::BigInt;
use thiserror::Error;
use wmp_game::Rational;
use wmp_qualitative::QualitativeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("vector has {got} entries for {expected} vertices")]
    Length { expected: usize, got: usize },
    #[error("value of {vertex} has denominator {denominator}, above the bound {bound}")]
    DenominatorOverflow {
        vertex: String,
        denominator: BigInt,
        bound: BigInt,
    },
    #[error("class {value}: {message}")]
    Structure { value: Rational, message: String },
    #[error(transparent)]
    Oracle(#[from] QualitativeError),
    #[error("synthesis needs a verified decomposition: {0}")]
    Unverified(String),
}
