//! Seeded random games for property tests and oracle comparisons.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::game::{GameBuilder, Owner, StochasticGame};
use crate::rational::{frac, int};

#[derive(Debug, Clone)]
pub struct RandomGameParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_out_degree: usize,
    pub min_payoff: i64,
    pub max_payoff: i64,
    /// Distributions used for random vertices with two successors.
    pub two_way: Vec<(i64, i64)>,
    pub allow_random: bool,
}

impl Default for RandomGameParams {
    fn default() -> Self {
        RandomGameParams {
            min_vertices: 1,
            max_vertices: 4,
            max_out_degree: 2,
            min_payoff: -2,
            max_payoff: 2,
            two_way: vec![(1, 2), (1, 3), (2, 3)],
            allow_random: true,
        }
    }
}

/// A game with vertices `v0..`, owners uniform among the allowed kinds,
/// out-degree between 1 and `max_out_degree`, and integer payoffs.
pub fn random_game(rng: &mut impl Rng, p: &RandomGameParams) -> StochasticGame {
    let n = rng.gen_range(p.min_vertices..=p.max_vertices);
    let owners: &[Owner] = if p.allow_random {
        &[Owner::Max, Owner::Min, Owner::Random]
    } else {
        &[Owner::Max, Owner::Min]
    };
    let mut b = GameBuilder::new("random");
    for i in 0..n {
        b.vertex(format!("v{i}"), *owners.choose(rng).unwrap());
    }
    let all: Vec<usize> = (0..n).collect();
    for u in 0..n {
        let deg = rng.gen_range(1..=p.max_out_degree.min(n));
        let mut targets: Vec<usize> = all.choose_multiple(rng, deg).copied().collect();
        targets.sort_unstable();
        let random = b.owner(u) == Owner::Random;
        let probs = if !random {
            vec![None; deg]
        } else if deg == 1 {
            vec![Some(int(1))]
        } else if deg == 2 {
            let &(a, d) = p.two_way.choose(rng).unwrap();
            vec![Some(frac(a, d)), Some(frac(d - a, d))]
        } else {
            vec![Some(frac(1, deg as i64)); deg]
        };
        for (t, pr) in targets.into_iter().zip(probs) {
            let payoff = int(rng.gen_range(p.min_payoff..=p.max_payoff));
            b.edge(u, t, payoff, pr);
        }
    }
    b.build().expect("generated games are valid")
}

