use wmp_game::{induce_chain, Owner, Player, Rational, StochasticGame, StrategyMachine};
use wmp_window::Objective;

use crate::arena::Arena;
use crate::chain::{exact_chain_value, ChainObjective};
use crate::SolveError;

pub const DEFAULT_PAIR_CAP: u128 = 1 << 14;

fn all_choices(game: &StochasticGame, owner: Owner) -> Vec<Vec<usize>> {
    let mut out = vec![game.vertices().map(|v| game.edges(v)[0].dst).collect::<Vec<_>>()];
    for v in game.owned_by(owner) {
        out = out
            .into_iter()
            .flat_map(|c| {
                game.successors(v).map(move |w| {
                    let mut c = c.clone();
                    c[v] = w;
                    c
                })
            })
            .collect();
    }
    out
}

/// Max-min over memoryless strategy pairs on the arena, each pair valued by
/// exact chain analysis. Fixed windows are played on the history product as a
/// liminf; bounded windows on the game, valuing each bottom component by its
/// smallest cycle mean.
pub fn brute_force_expected_values(
    game: &StochasticGame,
    objective: Objective,
    pair_cap: u128,
) -> Result<Vec<Rational>, SolveError> {
    let arena = Arena::new(game, objective);
    let g = &arena.game;
    let pairs = arena.strategy_count(Owner::Max).saturating_mul(arena.strategy_count(Owner::Min));
    if pairs > pair_cap {
        return Err(SolveError::TooLarge { what: "strategy pairs", count: pairs, cap: pair_cap });
    }
    let kind = match objective {
        Objective::Fwmp(_) => ChainObjective::Liminf,
        Objective::Bwmp => ChainObjective::Window(Objective::Bwmp),
    };
    let maxes: Vec<StrategyMachine> = all_choices(g, Owner::Max)
        .into_iter()
        .map(|c| StrategyMachine::memoryless(g, Player::Max, |v| c[v]))
        .collect();
    let mins: Vec<StrategyMachine> = all_choices(g, Owner::Min)
        .into_iter()
        .map(|c| StrategyMachine::memoryless(g, Player::Min, |v| c[v]))
        .collect();
    Ok(arena
        .entry
        .iter()
        .map(|&start| {
            maxes
                .iter()
                .map(|a| {
                    mins.iter()
                        .map(|b| exact_chain_value(&induce_chain(g, a, b, start), kind))
                        .min()
                        .unwrap()
                })
                .max()
                .unwrap()
        })
        .collect())
}
