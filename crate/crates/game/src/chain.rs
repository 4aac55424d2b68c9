use std::collections::{HashMap, VecDeque};

use num_traits::One;

use crate::game::{Owner, StochasticGame};
use crate::rational::Rational;
use crate::strategy::StrategyMachine;

/// A chain state: the current vertex and both machine states before reading it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainState {
    pub vertex: usize,
    pub max_state: usize,
    pub min_state: usize,
}

/// A transition: target state, probability, and the payoff of the game edge taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub to: usize,
    pub prob: Rational,
    pub payoff: Rational,
}

/// The finite Markov chain obtained by fixing both strategies. State 0 is
/// the start.
#[derive(Debug, Clone)]
pub struct InducedChain {
    pub states: Vec<ChainState>,
    pub steps: Vec<Vec<Step>>,
}

impl InducedChain {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.steps.iter().map(|s| s.iter().map(|t| t.to).collect()).collect()
    }
}

/// Fixes both strategies and explores the chain reachable from `start`.
pub fn induce_chain(
    game: &StochasticGame,
    sigma_max: &StrategyMachine,
    sigma_min: &StrategyMachine,
    start: usize,
) -> InducedChain {
    let init = ChainState {
        vertex: start,
        max_state: sigma_max.initial(),
        min_state: sigma_min.initial(),
    };
    let mut index = HashMap::from([(init, 0usize)]);
    let mut states = vec![init];
    let mut steps: Vec<Vec<Step>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let s = states[i];
        let v = s.vertex;
        let (qa, oa) = sigma_max.step(s.max_state, v);
        let (qb, ob) = sigma_min.step(s.min_state, v);
        let moves: Vec<(usize, Rational)> = match game.owner(v) {
            Owner::Max => vec![(oa.expect("max machine skipped at a max vertex"), Rational::one())],
            Owner::Min => vec![(ob.expect("min machine skipped at a min vertex"), Rational::one())],
            Owner::Random => game
                .edges(v)
                .iter()
                .map(|e| (e.dst, e.prob.clone().unwrap()))
                .collect(),
        };
        let mut out = Vec::with_capacity(moves.len());
        for (w, prob) in moves {
            let t = ChainState {
                vertex: w,
                max_state: qa,
                min_state: qb,
            };
            let to = *index.entry(t).or_insert_with(|| {
                states.push(t);
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            let payoff = game.payoff(v, w).unwrap().clone();
            out.push(Step { to, prob, payoff });
        }
        if steps.len() <= i {
            steps.resize(i + 1, Vec::new());
        }
        steps[i] = out;
    }
    steps.resize(states.len(), Vec::new());
    InducedChain { states, steps }
}
