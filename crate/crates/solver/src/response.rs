use wmp_game::{Owner, Rational, StochasticGame};
use wmp_graph::{mec_decompose, min_mean_cycle, sccs};
use wmp_qualitative::fix_max;

use crate::markov::{absorb, Node};

/// How Min cashes in once she settles in an end component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Settle {
    /// Smallest payoff on an edge inside the component.
    MinEdge,
    /// Smallest cycle mean inside the component.
    MinCycleMean,
}

#[derive(Debug, Clone)]
pub struct Response {
    pub values: Vec<Rational>,
    /// Successor chosen at the responding player's vertices.
    pub choice: Vec<Option<usize>>,
    /// Vertices where the responder settles in their end component.
    pub settle: Vec<bool>,
}

/// Min's optimal reply to a memoryless Max choice `pick`.
///
/// With Max fixed the game is an MDP; Min's optimum is to steer into end
/// components and settle there for their cheapest behaviour. That is a
/// stopping problem, solved by policy iteration from the policy that settles
/// wherever it can. Improving switches are strict, which keeps every policy
/// stopping with probability 1.
pub fn min_response(game: &StochasticGame, pick: &[usize], settle: Settle) -> Response {
    let fixed = fix_max(game, pick);
    let mecs = mec_decompose(&fixed);
    let worth: Vec<Rational> = mecs
        .mecs
        .iter()
        .map(|m| match settle {
            Settle::MinEdge => m
                .iter()
                .flat_map(|&u| fixed.edges(u).iter().filter(|e| m.contains(&e.dst)).map(|e| e.payoff.clone()))
                .min()
                .unwrap(),
            Settle::MinCycleMean => min_mean_cycle(&fixed, m).unwrap().0,
        })
        .collect();
    let stop_value = |v: usize| mecs.membership[v].map(|i| &worth[i]);
    let n = game.len();
    let mut stop: Vec<bool> = (0..n).map(|v| stop_value(v).is_some()).collect();
    let mut choice: Vec<Option<usize>> = (0..n)
        .map(|v| (game.owner(v) == Owner::Min).then(|| game.edges(v)[0].dst))
        .collect();
    loop {
        let nodes: Vec<Node> = (0..n)
            .map(|v| {
                if stop[v] {
                    return Node::Terminal(stop_value(v).unwrap().clone());
                }
                match game.owner(v) {
                    Owner::Max => Node::Step(vec![(pick[v], Rational::from_integer(1.into()))]),
                    Owner::Min => Node::Step(vec![(choice[v].unwrap(), Rational::from_integer(1.into()))]),
                    Owner::Random => Node::Step(
                        game.edges(v)
                            .iter()
                            .map(|e| (e.dst, e.prob.clone().unwrap()))
                            .collect(),
                    ),
                }
            })
            .collect();
        let x = absorb(&nodes).expect("strict improvements keep the policy stopping");
        let mut changed = false;
        for v in 0..n {
            if let Some(c) = stop_value(v) {
                if *c < x[v] {
                    stop[v] = true;
                    changed = true;
                    continue;
                }
            }
            match game.owner(v) {
                Owner::Min => {
                    let best = game.successors(v).min_by(|&a, &b| x[a].cmp(&x[b])).unwrap();
                    if x[best] < x[v] {
                        choice[v] = Some(best);
                        stop[v] = false;
                        changed = true;
                    }
                }
                _ if stop[v] => {
                    let go: Rational = match game.owner(v) {
                        Owner::Max => x[pick[v]].clone(),
                        _ => game.edges(v).iter().map(|e| e.prob.as_ref().unwrap() * &x[e.dst]).sum(),
                    };
                    if go < x[v] {
                        stop[v] = false;
                        changed = true;
                    }
                }
                _ => {}
            }
        }
        if !changed {
            return Response {
                values: x,
                choice,
                settle: stop,
            };
        }
    }
}

/// End components of the graph where vertex `v` may use the edges in
/// `allowed[v]`. Vertices with `all[v]` set must keep every one of their
/// edges inside; the others need just one.
fn end_components(allowed: &[Vec<usize>], all: &[bool], degree: &[usize]) -> Vec<Vec<usize>> {
    let n = allowed.len();
    let mut alive: Vec<bool> = (0..n).map(|v| !allowed[v].is_empty() && (!all[v] || allowed[v].len() == degree[v])).collect();
    loop {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| if alive[v] { allowed[v].iter().copied().filter(|&w| alive[w]).collect() } else { Vec::new() })
            .collect();
        let mut comp = vec![usize::MAX; n];
        let comps = sccs(&adj);
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp[v] = i;
            }
        }
        let mut changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let inside = allowed[v].iter().filter(|&&w| alive[w] && comp[w] == comp[v]).count();
            let keep = if all[v] { inside == allowed[v].len() } else { inside > 0 };
            if !keep {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            return comps
                .into_iter()
                .filter(|c| c.iter().all(|&v| alive[v]) && c.iter().any(|&v| adj[v].iter().any(|w| c.contains(w))))
                .collect();
        }
    }
}

/// Max's optimal reply to a memoryless Min choice `pick` for the liminf of
/// edge payoffs.
///
/// Max settles in an end component at the largest threshold for which he can
/// stay inside using only edges paying at least that much, and otherwise
/// maximizes the expected settle value, again by policy iteration.
pub fn max_response_liminf(game: &StochasticGame, pick: &[usize]) -> Response {
    let n = game.len();
    let mut thresholds: Vec<&Rational> = game.payoffs().collect();
    thresholds.sort();
    thresholds.dedup();
    let degree: Vec<usize> = (0..n)
        .map(|v| if game.owner(v) == Owner::Min { 1 } else { game.edges(v).len() })
        .collect();
    let all: Vec<bool> = (0..n).map(|v| game.owner(v) != Owner::Max).collect();
    let mut worth: Vec<Option<Rational>> = vec![None; n];
    for t in thresholds.into_iter().rev() {
        let allowed: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                game.edges(v)
                    .iter()
                    .filter(|e| (game.owner(v) != Owner::Min || e.dst == pick[v]) && &e.payoff >= t)
                    .map(|e| e.dst)
                    .collect()
            })
            .collect();
        for c in end_components(&allowed, &all, &degree) {
            for v in c {
                worth[v].get_or_insert_with(|| t.clone());
            }
        }
    }
    let one = || Rational::from_integer(1.into());
    let mut stop: Vec<bool> = worth.iter().map(Option::is_some).collect();
    let mut choice: Vec<Option<usize>> = (0..n)
        .map(|v| (game.owner(v) == Owner::Max).then(|| game.edges(v)[0].dst))
        .collect();
    loop {
        let nodes: Vec<Node> = (0..n)
            .map(|v| {
                if stop[v] {
                    return Node::Terminal(worth[v].clone().unwrap());
                }
                match game.owner(v) {
                    Owner::Min => Node::Step(vec![(pick[v], one())]),
                    Owner::Max => Node::Step(vec![(choice[v].unwrap(), one())]),
                    Owner::Random => Node::Step(game.edges(v).iter().map(|e| (e.dst, e.prob.clone().unwrap())).collect()),
                }
            })
            .collect();
        let x = absorb(&nodes).expect("strict improvements keep the policy stopping");
        let mut changed = false;
        for v in 0..n {
            if let Some(c) = &worth[v] {
                if *c > x[v] {
                    stop[v] = true;
                    changed = true;
                    continue;
                }
            }
            match game.owner(v) {
                Owner::Max => {
                    let best = game.successors(v).max_by(|&a, &b| x[a].cmp(&x[b]).then(b.cmp(&a))).unwrap();
                    if x[best] > x[v] {
                        choice[v] = Some(best);
                        stop[v] = false;
                        changed = true;
                    }
                }
                _ if stop[v] => {
                    let go: Rational = match game.owner(v) {
                        Owner::Min => x[pick[v]].clone(),
                        _ => game.edges(v).iter().map(|e| e.prob.as_ref().unwrap() * &x[e.dst]).sum(),
                    };
                    if go > x[v] {
                        stop[v] = false;
                        changed = true;
                    }
                }
                _ => {}
            }
        }
        if !changed {
            return Response {
                values: x,
                choice,
                settle: stop,
            };
        }
    }
}
