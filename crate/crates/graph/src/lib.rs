//! Graph fixpoints shared by the solvers: positive attractors and traps,
//! strongly connected components, maximal end components and minimum
//! cycle means.

mod attractor;
mod mean_cycle;
mod mec;
mod scc;

pub use attractor::{attractor_mask, is_trap, positive_attractor, AttractorResult};
pub use mean_cycle::{min_mean_cycle, min_mean_cycle_edges, simple_cycles};
pub use mec::{end_components, mec_decompose, mec_decompose_within, MecDecomposition};
pub use scc::{bottom_sccs, bsccs, sccs};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("target is not contained in the analyzed set")]
    TargetOutside,
    #[error("analyzed set does not induce a subgame: {0}")]
    NotSubgame(String),
    #[error("the subgraph has no cycle")]
    Acyclic,
}
