use num_traits::{One, Zero};
use wmp_game::{GameBuilder, Rational, StochasticGame};

use crate::SolveError;

/// Fixed-window instance of a reachability game: the absorbing `target` pays 1
/// on its self-loop and every other edge pays 0, so for every window length
/// the expected value is the optimal probability of reaching `target`.
pub fn ssg_to_fwmp(game: &StochasticGame, target: usize) -> Result<StochasticGame, SolveError> {
    if game.successors(target).any(|w| w != target) || !game.has_edge(target, target) {
        return Err(SolveError::NotAbsorbing(game.id(target).to_string()));
    }
    let mut b = GameBuilder::new(format!("{}-fwmp", game.name()));
    for v in game.vertices() {
        b.vertex(game.id(v), game.owner(v));
    }
    for v in game.vertices() {
        for e in game.edges(v) {
            let pay = if v == target { Rational::one() } else { Rational::zero() };
            b.edge(v, e.dst, pay, e.prob.clone());
        }
    }
    Ok(b.build().expect("payoff changes keep the game valid"))
}
