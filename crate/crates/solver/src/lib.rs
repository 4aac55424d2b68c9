//! Expected window mean-payoff values.
//!
//! Candidates come from strategy improvement on the history product (fixed
//! windows) or on the game (bounded windows), with Min always playing an
//! exact best response. Every reported vector has passed the verifier.

mod arena;
mod boundary;
mod bounds;
mod brute;
mod chain;
mod estimate;
pub mod linalg;
pub mod markov;
mod montecarlo;
mod response;
mod solve;
mod ssg;

pub use arena::Arena;
pub use boundary::{solve_boundary_system, BoundaryLinearSystem};
pub use bounds::{compute_bounds, DenominatorBounds};
pub use brute::{brute_force_expected_values, DEFAULT_PAIR_CAP};
pub use chain::{bscc_value, exact_chain_value, exact_chain_values, ChainObjective};
pub use estimate::{approx, base_values, estimate_and_round, improve, improve_min, Estimate};
pub use montecarlo::{default_horizon, monte_carlo_value, MonteCarloEstimate};
pub use response::{max_response_liminf, min_response, Response, Settle};
pub use solve::{solve, Method, Provenance, SolveParams, SolveReport};
pub use ssg::ssg_to_fwmp;

use thiserror::Error;
use wmp_verifier::VerifyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{count} {what} exceed the cap of {cap}")]
    TooLarge { what: &'static str, count: u128, cap: u128 },
    #[error("boundary system is singular")]
    Singular,
    #[error("malformed partition: {0}")]
    Partition(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("no candidate verified: {0}")]
    NoCandidate(String),
    #[error("target {0} is not an absorbing vertex")]
    NotAbsorbing(String),
}
