use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wmp_game::{Owner, StochasticGame, StrategyMachine};
use wmp_window::Objective;

use crate::estimate::approx;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    /// Hoeffding radius at confidence `1 - 1e-3`.
    pub radius: f64,
    pub episodes: usize,
    pub horizon: usize,
}

pub fn default_horizon(game: &StochasticGame, objective: Objective) -> usize {
    let l = match objective {
        Objective::Fwmp(l) => l,
        Objective::Bwmp => game.len(),
    };
    50 * game.len() * l
}

fn best_prefix_mean(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut best = f64::NEG_INFINITY;
    for (i, x) in xs.iter().enumerate() {
        sum += x;
        best = best.max(sum / (i + 1) as f64);
    }
    best
}

/// Window value of a finite payoff sample, standing in for its infinite
/// continuation.
fn sample_value(payoffs: &[f64], objective: Objective) -> f64 {
    match objective {
        Objective::Fwmp(l) => (0..=payoffs.len().saturating_sub(l))
            .map(|i| best_prefix_mean(&payoffs[i..i + l]))
            .fold(f64::INFINITY, f64::min),
        Objective::Bwmp => (0..payoffs.len() / 2)
            .map(|i| best_prefix_mean(&payoffs[i..]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Mean sampled window value of the profile from `start`. Each episode draws
/// its own seed from `seed`; the first `10 |V|` steps are dropped.
pub fn monte_carlo_value(
    game: &StochasticGame,
    max: &StrategyMachine,
    min: &StrategyMachine,
    start: usize,
    objective: Objective,
    episodes: usize,
    horizon: Option<usize>,
    seed: u64,
) -> MonteCarloEstimate {
    let horizon = horizon.unwrap_or_else(|| default_horizon(game, objective));
    let discard = (10 * game.len()).min(horizon / 2);
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    let mut payoffs = Vec::with_capacity(horizon);
    for _ in 0..episodes {
        let mut rng = ChaCha8Rng::seed_from_u64(seeds.gen());
        payoffs.clear();
        let (mut qa, mut qb, mut v) = (max.initial(), min.initial(), start);
        for t in 0..horizon {
            let (na, oa) = max.step(qa, v);
            let (nb, ob) = min.step(qb, v);
            qa = na;
            qb = nb;
            let w = match game.owner(v) {
                Owner::Max => oa.unwrap(),
                Owner::Min => ob.unwrap(),
                Owner::Random => {
                    let mut x: f64 = rng.gen();
                    let edges = game.edges(v);
                    let mut pick = edges[edges.len() - 1].dst;
                    for e in edges {
                        let p = approx(e.prob.as_ref().unwrap());
                        if x < p {
                            pick = e.dst;
                            break;
                        }
                        x -= p;
                    }
                    pick
                }
            };
            if t >= discard {
                payoffs.push(approx(game.payoff(v, w).unwrap()));
            }
            v = w;
        }
        total += sample_value(&payoffs, objective);
    }
    let k = approx(&game.max_abs_payoff());
    let radius = 2.0 * k * ((2.0f64 / 1e-3).ln() / (2.0 * episodes as f64)).sqrt();
    MonteCarloEstimate {
        mean: total / episodes as f64,
        radius,
        episodes,
        horizon,
    }
}
