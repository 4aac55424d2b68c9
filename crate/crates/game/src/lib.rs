//! Turn-based stochastic games with exact rational payoffs and probabilities.
//!
//! Vertices carry stable string ids in the text format and dense indices
//! internally. Every set is iterated in ascending index order.

pub mod chain;
pub mod error;
pub mod game;
pub mod lasso;
pub mod parse;
pub mod random;
pub mod rational;
pub mod strategy;
pub mod subgame;

pub use chain::{induce_chain, ChainState, InducedChain};
pub use error::{GameError, ValidationError};
pub use game::{Edge, GameBuilder, Owner, Player, StochasticGame};
pub use lasso::Lasso;
pub use parse::{parse_game, serialize_game};
pub use rational::{parse_rational, Rational};
pub use strategy::StrategyMachine;
pub use subgame::{class_restriction, restrict, Subgame};

/// A set of vertex indices iterated in ascending order.
pub type VertexSet = std::collections::BTreeSet<usize>;
