use num_bigint::BigInt;
use num_traits::{One, Pow};
use wmp_game::rational::max_denominator;
use wmp_game::{Rational, StochasticGame};
use wmp_window::{candidate_values, payoff_bound, Objective};

/// Denominator bounds for expected values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorBounds {
    /// Bound for classes without boundary vertices.
    pub no_boundary_bound: BigInt,
    pub global_bound: BigInt,
    /// `1 / global_bound^2`.
    pub granularity: Rational,
    pub payoff_bound: BigInt,
    pub max_payoff_denominator: BigInt,
    pub max_prob_denominator: BigInt,
    /// Largest denominator among achievable window values. Valid as a global
    /// bound only when no class has boundary vertices.
    pub theta_bound: Option<BigInt>,
}

pub fn compute_bounds(game: &StochasticGame, objective: Objective) -> DenominatorBounds {
    let n = game.len();
    let q_w = max_denominator(game.payoffs());
    let q = max_denominator(game.probabilities());
    let nb = match objective {
        Objective::Fwmp(l) => Pow::pow(&q_w, l) * BigInt::from(l),
        Objective::Bwmp => Pow::pow(&q_w, n) * BigInt::from(n),
    };
    let global = Pow::pow(BigInt::from(2), n) * Pow::pow(&q, n * n * n) * Pow::pow(&nb, n);
    let g = Rational::new(BigInt::one(), &global * &global);
    let theta_bound = match objective {
        Objective::Fwmp(l) => Some(max_denominator(candidate_values(game, &game.all_vertices(), l).iter())),
        Objective::Bwmp => None,
    };
    DenominatorBounds {
        no_boundary_bound: nb,
        granularity: g,
        global_bound: global,
        payoff_bound: payoff_bound(game).to_integer(),
        max_payoff_denominator: q_w,
        max_prob_denominator: q,
        theta_bound,
    }
}
