use num_traits::ToPrimitive;
use wmp_game::{GameBuilder, Owner, Player, Rational, StochasticGame, StrategyMachine, VertexSet};
use wmp_graph::{mec_decompose, min_mean_cycle};

use crate::core::almost_sure_reach;
use crate::{Mode, QualitativeError, QualitativeResult};

/// Decides the almost-sure bounded-window objective with threshold semantics
/// as in [`crate::almost_sure_fwmp`].
pub trait BwmpOracle {
    fn decide(
        &self,
        game: &StochasticGame,
        player: Player,
        threshold: &Rational,
        strict: bool,
    ) -> Result<QualitativeResult, QualitativeError>;
}

/// Enumerates Max's memoryless strategies. Against a fixed one, Min and
/// chance can steer into any reachable maximal end component and realize its
/// minimum cycle mean, so Max wins from a vertex iff every reachable end
/// component has a passing cycle mean. Min wins iff for every Max strategy
/// she reaches the components with a failing mean almost surely.
#[derive(Debug, Clone, Copy)]
pub struct ExhaustiveBwmpOracle {
    pub max_strategies: u128,
}

impl Default for ExhaustiveBwmpOracle {
    fn default() -> Self {
        ExhaustiveBwmpOracle {
            max_strategies: 1 << 16,
        }
    }
}

pub fn almost_sure_bwmp(
    game: &StochasticGame,
    player: Player,
    threshold: &Rational,
    strict: bool,
    oracle: &dyn BwmpOracle,
) -> Result<QualitativeResult, QualitativeError> {
    oracle.decide(game, player, threshold, strict)
}

/// All memoryless choices of `owner`, in mixed-radix order.
pub(crate) fn enumerate_choices(game: &StochasticGame, owner: Owner) -> impl Iterator<Item = Vec<usize>> + '_ {
    let owned: Vec<usize> = game.owned_by(owner).collect();
    let total: u128 = owned.iter().map(|&v| game.edges(v).len() as u128).product();
    (0..total).map(move |mut code| {
        let mut pick: Vec<usize> = game.vertices().map(|v| game.edges(v)[0].dst).collect();
        for &v in &owned {
            let d = game.edges(v).len() as u128;
            pick[v] = game.edges(v)[(code % d).to_usize().unwrap()].dst;
            code /= d;
        }
        pick
    })
}

pub(crate) fn count_choices(game: &StochasticGame, owner: Owner) -> u128 {
    game.owned_by(owner)
        .map(|v| game.edges(v).len() as u128)
        .fold(1u128, |a, d| a.saturating_mul(d))
}

/// The game where Max vertices keep only the edge picked by `pick`.
pub fn fix_max(game: &StochasticGame, pick: &[usize]) -> StochasticGame {
    let mut b = GameBuilder::new(game.name());
    for v in game.vertices() {
        b.vertex(game.id(v), game.owner(v));
    }
    for v in game.vertices() {
        for e in game.edges(v) {
            if game.owner(v) != Owner::Max || e.dst == pick[v] {
                b.edge(v, e.dst, e.payoff.clone(), e.prob.clone());
            }
        }
    }
    b.build().expect("fixing one edge per Max vertex keeps the game valid")
}

/// Maximal end components of the game with their minimum cycle means.
pub fn component_means(game: &StochasticGame) -> Vec<(VertexSet, Rational)> {
    mec_decompose(game)
        .mecs
        .into_iter()
        .map(|m| {
            let (mean, _) = min_mean_cycle(game, &m).expect("end components contain cycles");
            (m, mean)
        })
        .collect()
}

fn backward_reach(game: &StochasticGame, from: &VertexSet) -> VertexSet {
    let pred = game.predecessors();
    let mut seen = from.clone();
    let mut stack: Vec<usize> = from.iter().copied().collect();
    while let Some(v) = stack.pop() {
        for &u in &pred[v] {
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen
}

impl BwmpOracle for ExhaustiveBwmpOracle {
    fn decide(
        &self,
        game: &StochasticGame,
        player: Player,
        threshold: &Rational,
        strict: bool,
    ) -> Result<QualitativeResult, QualitativeError> {
        let strategies = count_choices(game, Owner::Max);
        if strategies > self.max_strategies {
            return Err(QualitativeError::TooLarge {
                strategies,
                cap: self.max_strategies,
            });
        }
        let passes = |m: &Rational| match (player, strict) {
            (Player::Max, true) => m > threshold,
            (Player::Max, false) => m >= threshold,
            (Player::Min, true) => m < threshold,
            (Player::Min, false) => m <= threshold,
        };
        let all = game.all_vertices();
        match player {
            Player::Max => {
                let mut per: Vec<(Vec<usize>, VertexSet)> = Vec::new();
                for pick in enumerate_choices(game, Owner::Max) {
                    let g = fix_max(game, &pick);
                    let bad: VertexSet = component_means(&g)
                        .into_iter()
                        .filter(|(_, m)| !passes(m))
                        .flat_map(|(c, _)| c)
                        .collect();
                    let lose = backward_reach(&g, &bad);
                    per.push((pick, all.difference(&lose).copied().collect()));
                }
                let union: VertexSet = per.iter().flat_map(|(_, w)| w.iter().copied()).collect();
                let (pick, _) = per
                    .iter()
                    .find(|(_, w)| *w == union)
                    .or_else(|| per.iter().max_by_key(|(_, w)| w.len()))
                    .unwrap();
                Ok(QualitativeResult {
                    strategy: Some(StrategyMachine::memoryless(game, Player::Max, |v| pick[v])),
                    winning: union,
                    mode: Mode::AlmostSure,
                })
            }
            Player::Min => {
                let mut winning = all;
                for pick in enumerate_choices(game, Owner::Max) {
                    let g = fix_max(game, &pick);
                    let good: VertexSet = component_means(&g)
                        .into_iter()
                        .filter(|(_, m)| passes(m))
                        .flat_map(|(c, _)| c)
                        .collect();
                    let r = almost_sure_reach(&g, Player::Min, &good);
                    winning = winning.intersection(&r.winning).copied().collect();
                }
                Ok(QualitativeResult {
                    winning,
                    strategy: None,
                    mode: Mode::AlmostSure,
                })
            }
        }
    }
}
