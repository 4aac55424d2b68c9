//! Window mean-payoff semantics on finite objects and the history product
//! that turns a fixed-window objective into a liminf objective.

mod product;

pub use product::{build_history_product, ProductGame};

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;
use wmp_game::{Lasso, Owner, Rational, StochasticGame, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("mean of an empty sequence")]
    Empty,
    #[error("window length must be at least 1")]
    ZeroWindow,
}

/// Fixed window of a given length, or a window of some finite length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Fwmp(usize),
    Bwmp,
}

impl Objective {
    pub fn fwmp(window: usize) -> Result<Self, WindowError> {
        if window == 0 {
            Err(WindowError::ZeroWindow)
        } else {
            Ok(Objective::Fwmp(window))
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Fwmp(l) => write!(f, "fwmp({l})"),
            Objective::Bwmp => f.write_str("bwmp"),
        }
    }
}

/// Which side of the threshold a play value must fall on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    AtLeast,
    Complement,
}

/// A threshold objective on play values. With `AtLeast` it asks for
/// `value > threshold` when strict and `value >= threshold` otherwise; with
/// `Complement` it asks for `value < threshold` or `value <= threshold`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowObjectiveSpec {
    pub objective: Objective,
    pub threshold: Rational,
    pub strict: bool,
    pub direction: Direction,
}

impl WindowObjectiveSpec {
    pub fn holds(&self, value: &Rational) -> bool {
        match (self.direction, self.strict) {
            (Direction::AtLeast, true) => value > &self.threshold,
            (Direction::AtLeast, false) => value >= &self.threshold,
            (Direction::Complement, true) => value < &self.threshold,
            (Direction::Complement, false) => value <= &self.threshold,
        }
    }
}

fn ratio(n: usize) -> Rational {
    Rational::from_integer((n as i64).into())
}

pub fn infix_mean(payoffs: &[Rational]) -> Result<Rational, WindowError> {
    if payoffs.is_empty() {
        return Err(WindowError::Empty);
    }
    Ok(payoffs.iter().sum::<Rational>() / ratio(payoffs.len()))
}

/// Smallest `k <= max_len` whose first `k` payoffs have mean at least
/// `threshold`, or `None` while the window stays open.
pub fn window_closes(payoffs: &[Rational], threshold: &Rational, max_len: usize) -> Option<usize> {
    let mut sum = Rational::zero();
    for (k, p) in payoffs.iter().take(max_len).enumerate() {
        sum += p;
        if sum >= threshold * ratio(k + 1) {
            return Some(k + 1);
        }
    }
    None
}

/// Best mean over the first `1..=max_len` payoffs of the periodic sequence
/// starting at `start`.
fn best_prefix_mean(cycle: &[Rational], start: usize, max_len: usize) -> Rational {
    let k = cycle.len();
    let mut sum = Rational::zero();
    let mut best: Option<Rational> = None;
    for j in 1..=max_len {
        sum += &cycle[(start + j - 1) % k];
        let m = &sum / ratio(j);
        if best.as_ref().is_none_or(|b| &m > b) {
            best = Some(m);
        }
    }
    best.unwrap()
}

/// Largest threshold for which every window of the periodic part closes
/// within `window` steps.
pub fn fwmp_value_lasso(game: &StochasticGame, lasso: &Lasso, window: usize) -> Rational {
    fwmp_value_cycle(&lasso.cycle_payoffs(game), window)
}

pub fn fwmp_value_cycle(cycle: &[Rational], window: usize) -> Rational {
    (0..cycle.len())
        .map(|i| best_prefix_mean(cycle, i, window))
        .min()
        .expect("nonempty cycle")
}

/// Limit of the fixed-window value as the window grows. Windows are scanned
/// up to two periods and compared with the cycle mean.
pub fn bwmp_value_lasso(game: &StochasticGame, lasso: &Lasso) -> Rational {
    bwmp_value_cycle(&lasso.cycle_payoffs(game))
}

pub fn bwmp_value_cycle(cycle: &[Rational]) -> Rational {
    let k = cycle.len();
    let mean = infix_mean(cycle).expect("nonempty cycle");
    (0..k)
        .map(|i| best_prefix_mean(cycle, i, 2 * k).max(mean.clone()))
        .min()
        .unwrap()
}

/// Means of all multisets of at most `window` payoffs drawn from edges with
/// both ends in `within`.
pub fn candidate_values(game: &StochasticGame, within: &VertexSet, window: usize) -> BTreeSet<Rational> {
    let payoffs: BTreeSet<Rational> = within
        .iter()
        .flat_map(|&u| {
            game.edges(u)
                .iter()
                .filter(|e| within.contains(&e.dst))
                .map(|e| e.payoff.clone())
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut sums: BTreeSet<Rational> = BTreeSet::from([Rational::zero()]);
    for j in 1..=window {
        sums = sums
            .iter()
            .flat_map(|s| payoffs.iter().map(move |p| s + p))
            .collect();
        out.extend(sums.iter().map(|s| s / ratio(j)));
    }
    out
}

/// Vertices that make the fixed-window objective of length 1 fail at
/// `threshold`: Max vertices whose edges all pay less, Min vertices with
/// some edge paying less, and random vertices with some edge paying less.
pub fn fwmp1_cobuchi_target(game: &StochasticGame, threshold: &Rational) -> VertexSet {
    game.vertices()
        .filter(|&v| {
            let mut low = game.edges(v).iter().map(|e| &e.payoff < threshold);
            match game.owner(v) {
                Owner::Max => low.all(|b| b),
                Owner::Min | Owner::Random => low.any(|b| b),
            }
        })
        .collect()
}

/// Largest absolute payoff rounded up to an integer.
pub fn payoff_bound(game: &StochasticGame) -> Rational {
    let k = game.max_abs_payoff();
    if k.is_integer() {
        k
    } else {
        k.ceil()
    }
}
