use wmp_game::{InducedChain, Rational};
use wmp_graph::{bsccs, min_mean_cycle_edges};
use wmp_window::{infix_mean, Objective};

use crate::markov::{absorb, Node};

/// What a bottom component of a chain is worth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainObjective {
    /// Smallest payoff seen infinitely often.
    Liminf,
    Window(Objective),
}

fn best_prefix_mean(payoffs: &[Rational]) -> Rational {
    (1..=payoffs.len())
        .map(|j| infix_mean(&payoffs[..j]).unwrap())
        .max()
        .unwrap()
}

/// Every path of every length inside a bottom component recurs almost surely,
/// so its value is the worst play behaviour it contains.
pub fn bscc_value(chain: &InducedChain, bscc: &wmp_game::VertexSet, objective: ChainObjective) -> Rational {
    let inside = |i: usize| chain.steps[i].iter().filter(|s| bscc.contains(&s.to));
    match objective {
        ChainObjective::Liminf => bscc.iter().flat_map(|&i| inside(i).map(|s| s.payoff.clone())).min().unwrap(),
        ChainObjective::Window(Objective::Fwmp(l)) => {
            let mut worst: Option<Rational> = None;
            let mut stack: Vec<(usize, Vec<Rational>)> = bscc.iter().map(|&i| (i, Vec::new())).collect();
            while let Some((at, acc)) = stack.pop() {
                if acc.len() == l {
                    let b = best_prefix_mean(&acc);
                    if worst.as_ref().is_none_or(|w| b < *w) {
                        worst = Some(b);
                    }
                    continue;
                }
                for s in inside(at) {
                    let mut next = acc.clone();
                    next.push(s.payoff.clone());
                    stack.push((s.to, next));
                }
            }
            worst.unwrap()
        }
        ChainObjective::Window(Objective::Bwmp) => {
            let local: Vec<usize> = bscc.iter().copied().collect();
            let idx = |i: usize| local.binary_search(&i).unwrap();
            let edges: Vec<(usize, usize, Rational)> = local
                .iter()
                .flat_map(|&i| inside(i).map(move |s| (idx(i), idx(s.to), s.payoff.clone())))
                .collect();
            min_mean_cycle_edges(local.len(), &edges).unwrap().0
        }
    }
}

/// Expected value from every chain state: bottom components are valued by
/// `bscc_value`, the rest by absorption probabilities.
pub fn exact_chain_values(chain: &InducedChain, objective: ChainObjective) -> Vec<Rational> {
    let mut terminal: Vec<Option<Rational>> = vec![None; chain.len()];
    for b in bsccs(chain) {
        let v = bscc_value(chain, &b, objective);
        for i in b {
            terminal[i] = Some(v.clone());
        }
    }
    let nodes: Vec<Node> = (0..chain.len())
        .map(|i| match &terminal[i] {
            Some(v) => Node::Terminal(v.clone()),
            None => Node::Step(chain.steps[i].iter().map(|s| (s.to, s.prob.clone())).collect()),
        })
        .collect();
    absorb(&nodes).expect("every closed set of a finite chain holds a bottom component")
}

/// Expected value from the chain's initial state.
pub fn exact_chain_value(chain: &InducedChain, objective: ChainObjective) -> Rational {
    exact_chain_values(chain, objective).swap_remove(0)
}
