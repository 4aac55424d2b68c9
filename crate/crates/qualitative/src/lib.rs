//! Almost-sure winning sets on stochastic games.
//!
//! Büchi is solved by repeatedly removing the opponent's positive attractor
//! to the region where the target can be avoided surely. Reachability is
//! Büchi with absorbing targets. CoBüchi for a player is the complement of
//! the opponent's positive Büchi region, computed by peeling off the
//! opponent's almost-sure Büchi region together with its positive attractor.
//! Window objectives go through the history product.

mod bwmp;
mod core;
mod fwmp;

pub use crate::bwmp::{almost_sure_bwmp, BwmpOracle, ExhaustiveBwmpOracle};
pub use crate::bwmp::{component_means, fix_max};
pub use crate::core::{almost_sure_buchi, almost_sure_cobuchi, almost_sure_reach, almost_sure_safety, positive_reach};
pub use crate::fwmp::{almost_sure_fwmp, almost_sure_fwmp_product, history_machine, FwmpProductResult};

use thiserror::Error;
use wmp_game::{StrategyMachine, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    AlmostSure,
    Positive,
}

#[derive(Debug, Clone)]
pub struct QualitativeResult {
    pub winning: VertexSet,
    /// Winning strategy on the analyzed game. `None` when the player may need
    /// unbounded memory.
    pub strategy: Option<StrategyMachine>,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QualitativeError {
    #[error("exhaustive oracle would enumerate {strategies} strategies, above the cap of {cap}")]
    TooLarge { strategies: u128, cap: u128 },
}

pub(crate) fn to_mask(n: usize, set: &VertexSet) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

pub(crate) fn to_set(mask: &[bool]) -> VertexSet {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
}
