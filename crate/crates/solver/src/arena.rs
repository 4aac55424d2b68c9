use wmp_game::{Owner, StochasticGame};
use wmp_window::{build_history_product, Objective, ProductGame};

use crate::response::Settle;

/// The game the values are computed on: the history product for fixed
/// windows, where the objective becomes a liminf, or the game itself for
/// bounded windows.
#[derive(Debug, Clone)]
pub struct Arena {
    pub game: StochasticGame,
    pub settle: Settle,
    /// Arena vertex standing for each base vertex at the start of a play.
    pub entry: Vec<usize>,
    pub product: Option<ProductGame>,
}

impl Arena {
    pub fn new(game: &StochasticGame, objective: Objective) -> Arena {
        match objective {
            Objective::Fwmp(l) => {
                let product = build_history_product(game, l, &game.all_vertices());
                Arena {
                    entry: game.vertices().map(|v| product.padded(v).unwrap()).collect(),
                    game: product.game.clone(),
                    settle: Settle::MinEdge,
                    product: Some(product),
                }
            }
            Objective::Bwmp => Arena {
                game: game.clone(),
                settle: Settle::MinCycleMean,
                entry: game.vertices().collect(),
                product: None,
            },
        }
    }

    /// Number of memoryless strategies of the owner on the arena.
    pub fn strategy_count(&self, owner: Owner) -> u128 {
        self.game
            .owned_by(owner)
            .map(|v| self.game.edges(v).len() as u128)
            .fold(1u128, |a, d| a.saturating_mul(d))
    }
}
