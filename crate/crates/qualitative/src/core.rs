use wmp_game::{GameBuilder, Owner, Player, Rational, StochasticGame, StrategyMachine, VertexSet};
use wmp_graph::attractor_mask;

use crate::{to_mask, to_set, Mode, QualitativeResult};

/// Outcome of the Büchi fixpoint inside `within`.
pub(crate) struct BuchiCore {
    pub winning: Vec<bool>,
    /// Successor for the player's winning vertices.
    pub player_choice: Vec<Option<usize>>,
    /// Successor for opponent vertices outside the winning region that keeps
    /// the target at bay with positive probability.
    pub spoil_choice: Vec<Option<usize>>,
}

pub(crate) fn buchi_core(game: &StochasticGame, player: Player, target: &[bool], within: &[bool]) -> BuchiCore {
    let n = game.len();
    let opp = player.opponent();
    let mut w = within.to_vec();
    let mut spoil = vec![None; n];
    loop {
        let t: Vec<bool> = (0..n).map(|v| target[v] && w[v]).collect();
        let (attr, wit) = attractor_mask(game, player, &t, &w);
        let z: Vec<bool> = (0..n).map(|v| w[v] && !attr[v]).collect();
        if !z.iter().any(|&b| b) {
            let player_choice = (0..n)
                .map(|v| {
                    if !w[v] || game.owner(v) != player.owner() {
                        None
                    } else if t[v] {
                        game.successors(v).find(|&s| w[s])
                    } else {
                        wit[v]
                    }
                })
                .collect();
            return BuchiCore {
                winning: w,
                player_choice,
                spoil_choice: spoil,
            };
        }
        for v in (0..n).filter(|&v| z[v] && game.owner(v) == opp.owner()) {
            spoil[v] = game.successors(v).find(|&s| z[s]);
        }
        let (b, wit2) = attractor_mask(game, opp, &z, &w);
        for v in 0..n {
            if b[v] && !z[v] && game.owner(v) == opp.owner() {
                spoil[v] = wit2[v];
            }
            if b[v] {
                w[v] = false;
            }
        }
    }
}

/// Memoryless machine from partial choices; other owned vertices take their
/// smallest successor.
pub(crate) fn machine(game: &StochasticGame, player: Player, choice: &[Option<usize>]) -> StrategyMachine {
    StrategyMachine::memoryless(game, player, |v| choice[v].unwrap_or_else(|| game.edges(v)[0].dst))
}

pub(crate) fn cobuchi_core(game: &StochasticGame, player: Player, safe: &[bool]) -> (Vec<bool>, Vec<Option<usize>>) {
    let n = game.len();
    let opp = player.opponent();
    let bad: Vec<bool> = safe.iter().map(|&s| !s).collect();
    let mut w = vec![true; n];
    loop {
        let core = buchi_core(game, opp, &bad, &w);
        if !core.winning.iter().any(|&b| b) {
            return (w, core.spoil_choice);
        }
        let (y, _) = attractor_mask(game, opp, &core.winning, &w);
        for v in 0..n {
            if y[v] {
                w[v] = false;
            }
        }
    }
}

/// Almost-sure Büchi: visit `target` infinitely often with probability 1.
pub fn almost_sure_buchi(game: &StochasticGame, player: Player, target: &VertexSet) -> QualitativeResult {
    let core = buchi_core(game, player, &to_mask(game.len(), target), &vec![true; game.len()]);
    QualitativeResult {
        winning: to_set(&core.winning),
        strategy: Some(machine(game, player, &core.player_choice)),
        mode: Mode::AlmostSure,
    }
}

/// Almost-sure coBüchi: eventually stay inside `safe` forever with probability 1.
pub fn almost_sure_cobuchi(game: &StochasticGame, player: Player, safe: &VertexSet) -> QualitativeResult {
    let (w, choice) = cobuchi_core(game, player, &to_mask(game.len(), safe));
    QualitativeResult {
        winning: to_set(&w),
        strategy: Some(machine(game, player, &choice)),
        mode: Mode::AlmostSure,
    }
}

/// Same game with every target vertex turned into a self-loop.
fn absorbing(game: &StochasticGame, target: &VertexSet) -> StochasticGame {
    let mut b = GameBuilder::new(game.name());
    for v in game.vertices() {
        b.vertex(game.id(v), game.owner(v));
    }
    for v in game.vertices() {
        if target.contains(&v) {
            let prob = (game.owner(v) == Owner::Random).then(|| Rational::from_integer(1.into()));
            b.edge(v, v, Rational::from_integer(0.into()), prob);
        } else {
            for e in game.edges(v) {
                b.edge(v, e.dst, e.payoff.clone(), e.prob.clone());
            }
        }
    }
    b.build().expect("absorbing targets keep the game valid")
}

/// Almost-sure reachability of `target`.
pub fn almost_sure_reach(game: &StochasticGame, player: Player, target: &VertexSet) -> QualitativeResult {
    let g = absorbing(game, target);
    let core = buchi_core(&g, player, &to_mask(g.len(), target), &vec![true; g.len()]);
    let choice: Vec<Option<usize>> = game
        .vertices()
        .map(|v| if target.contains(&v) { None } else { core.player_choice[v] })
        .collect();
    QualitativeResult {
        winning: to_set(&core.winning),
        strategy: Some(machine(game, player, &choice)),
        mode: Mode::AlmostSure,
    }
}

/// Positive reachability of `target`: its positive attractor.
pub fn positive_reach(game: &StochasticGame, player: Player, target: &VertexSet) -> QualitativeResult {
    let (attr, wit) = attractor_mask(game, player, &to_mask(game.len(), target), &vec![true; game.len()]);
    QualitativeResult {
        winning: to_set(&attr),
        strategy: Some(machine(game, player, &wit)),
        mode: Mode::Positive,
    }
}

/// Almost-sure safety: never leave `safe`. Chance counts as hostile, since any
/// positive-probability exit is eventually taken.
pub fn almost_sure_safety(game: &StochasticGame, player: Player, safe: &VertexSet) -> QualitativeResult {
    let n = game.len();
    let unsafe_mask: Vec<bool> = (0..n).map(|v| !safe.contains(&v)).collect();
    let (attr, _) = attractor_mask(game, player.opponent(), &unsafe_mask, &vec![true; n]);
    let choice: Vec<Option<usize>> = (0..n)
        .map(|v| (!attr[v]).then(|| game.successors(v).find(|&s| !attr[s])).flatten())
        .collect();
    QualitativeResult {
        winning: (0..n).filter(|&v| !attr[v]).collect(),
        strategy: Some(machine(game, player, &choice)),
        mode: Mode::AlmostSure,
    }
}
