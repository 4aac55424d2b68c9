use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use wmp_game::rational::best_approximation;
use wmp_game::{Player, Rational, StochasticGame};
use wmp_window::Objective;

use crate::arena::Arena;
use crate::response::{max_response_liminf, min_response, Response, Settle};

#[derive(Debug, Clone)]
pub struct Estimate {
    /// The improving player's memoryless choice on the arena.
    pub pick: Vec<usize>,
    pub response: Response,
    pub iterations: usize,
}

fn dominates(a: &[Rational], b: &[Rational], player: Player) -> bool {
    let (a, b) = match player {
        Player::Max => (a, b),
        Player::Min => (b, a),
    };
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

/// Strategy improvement for Max against exact Min best responses. Max
/// switches to strictly better successors. When none exists it tries single
/// switches to equally valued successors: one that improves some vertex
/// without hurting any is taken, and one that changes nothing is taken as a
/// sideways step if its strategy is new. The number of Min best responses is
/// capped by `budget`.
pub fn improve(arena: &Arena, budget: usize) -> Estimate {
    improve_for(arena, Player::Max, budget, &|pick| min_response(&arena.game, pick, arena.settle))
}

/// The same scheme for Min against exact Max best responses. Only the liminf
/// arena of fixed windows has an exact Max reply.
pub fn improve_min(arena: &Arena, budget: usize) -> Option<Estimate> {
    (arena.settle == Settle::MinEdge)
        .then(|| improve_for(arena, Player::Min, budget, &|pick| max_response_liminf(&arena.game, pick)))
}

fn improve_for(arena: &Arena, player: Player, budget: usize, respond: &dyn Fn(&[usize]) -> Response) -> Estimate {
    let g = &arena.game;
    let better = |a: &Rational, b: &Rational| match player {
        Player::Max => a > b,
        Player::Min => a < b,
    };
    let mut pick: Vec<usize> = g.vertices().map(|v| g.edges(v)[0].dst).collect();
    let mut resp = respond(&pick);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([pick.clone()]);
    let mut iterations = 0;
    let mut calls = 1;
    'outer: while calls < budget {
        iterations += 1;
        let x = resp.values.clone();
        let mut next = pick.clone();
        let mut switched = false;
        for v in g.owned_by(player.owner()) {
            let mut best = pick[v];
            for w in g.successors(v) {
                if better(&x[w], &x[best]) {
                    best = w;
                }
            }
            if best != pick[v] {
                next[v] = best;
                switched = true;
            }
        }
        if switched {
            let r = respond(&next);
            calls += 1;
            if dominates(&r.values, &resp.values, player) {
                seen.insert(next.clone());
                pick = next;
                resp = r;
                continue;
            }
        }
        let mut sideways = None;
        for v in g.owned_by(player.owner()) {
            for w in g.successors(v) {
                if w == pick[v] || better(&x[pick[v]], &x[w]) {
                    continue;
                }
                let mut trial = pick.clone();
                trial[v] = w;
                if seen.contains(&trial) || calls >= budget {
                    continue;
                }
                let r = respond(&trial);
                calls += 1;
                if dominates(&r.values, &resp.values, player) {
                    seen.insert(trial.clone());
                    pick = trial;
                    resp = r;
                    continue 'outer;
                }
                if sideways.is_none() && r.values == resp.values {
                    sideways = Some((trial, r));
                }
            }
        }
        match sideways {
            Some((trial, r)) => {
                seen.insert(trial.clone());
                pick = trial;
                resp = r;
            }
            None => break,
        }
    }
    Estimate {
        pick,
        response: resp,
        iterations,
    }
}

/// Base-game values of an arena value vector.
pub fn base_values(arena: &Arena, values: &[Rational]) -> Vec<Rational> {
    arena.entry.iter().map(|&p| values[p].clone()).collect()
}

/// Strategy-improvement estimate, each value rounded to the closest fraction
/// with denominator at most `bound`. Only a candidate: it still has to pass
/// verification.
pub fn estimate_and_round(game: &StochasticGame, objective: Objective, bound: &BigInt, budget: usize) -> Vec<Rational> {
    let arena = Arena::new(game, objective);
    let est = improve(&arena, budget);
    base_values(&arena, &est.response.values)
        .iter()
        .map(|x| best_approximation(x, bound))
        .collect()
}

/// Floating-point view of a rational, for reporting.
pub fn approx(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
