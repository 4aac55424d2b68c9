use std::collections::{HashMap, VecDeque};

use num_traits::Zero;
use wmp_game::{GameBuilder, Rational, StochasticGame, VertexSet};

/// Game on histories of the last `window + 1` vertices. Every edge out of a
/// product vertex pays the best mean over the prefixes of its label, or 0
/// when the label is not a path of the base game.
#[derive(Debug, Clone)]
pub struct ProductGame {
    pub window: usize,
    pub game: StochasticGame,
    pub labels: Vec<Vec<usize>>,
    pub out_payoff: Vec<Rational>,
    index: HashMap<Vec<usize>, usize>,
    padded: Vec<Option<usize>>,
}

impl ProductGame {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Base vertex the token is on.
    pub fn base_vertex(&self, p: usize) -> usize {
        *self.labels[p].last().unwrap()
    }

    /// Product vertex of the label `(v, …, v)`.
    pub fn padded(&self, v: usize) -> Option<usize> {
        self.padded.get(v).copied().flatten()
    }

    pub fn lookup(&self, label: &[usize]) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Successor of `p` whose label ends in `v`.
    pub fn shift(&self, p: usize, v: usize) -> Option<usize> {
        let mut label = self.labels[p][1..].to_vec();
        label.push(v);
        self.lookup(&label)
    }
}

fn label_payoff(game: &StochasticGame, label: &[usize]) -> Rational {
    let mut sum = Rational::zero();
    let mut best: Option<Rational> = None;
    for (j, w) in label.windows(2).enumerate() {
        let Some(p) = game.payoff(w[0], w[1]) else {
            return Rational::zero();
        };
        sum += p;
        let m = &sum / Rational::from_integer(((j + 1) as i64).into());
        if best.as_ref().is_none_or(|b| &m > b) {
            best = Some(m);
        }
    }
    best.unwrap_or_else(Rational::zero)
}

/// Builds the part of the history product reachable from the padded labels
/// of `starts`.
pub fn build_history_product(game: &StochasticGame, window: usize, starts: &VertexSet) -> ProductGame {
    assert!(window >= 1, "window length must be at least 1");
    let mut labels: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut padded = vec![None; game.len()];
    for &v in starts {
        let label = vec![v; window + 1];
        let i = *index.entry(label.clone()).or_insert_with(|| {
            labels.push(label);
            queue.push_back(labels.len() - 1);
            labels.len() - 1
        });
        padded[v] = Some(i);
    }
    let mut edges: Vec<(usize, usize, Option<Rational>)> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let v = *labels[i].last().unwrap();
        for e in game.edges(v) {
            let mut next = labels[i][1..].to_vec();
            next.push(e.dst);
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    labels.push(next.clone());
                    index.insert(next, labels.len() - 1);
                    queue.push_back(labels.len() - 1);
                    labels.len() - 1
                }
            };
            edges.push((i, j, e.prob.clone()));
        }
    }
    let out_payoff: Vec<Rational> = labels.iter().map(|l| label_payoff(game, l)).collect();
    let mut b = GameBuilder::new(format!("{}|product{}", game.name(), window));
    for l in &labels {
        let id: Vec<&str> = l.iter().map(|&v| game.id(v)).collect();
        b.vertex(id.join(","), game.owner(*l.last().unwrap()));
    }
    for (i, j, prob) in edges {
        b.edge(i, j, out_payoff[i].clone(), prob);
    }
    let product = b.build().expect("the product of a valid game is valid");
    ProductGame {
        window,
        game: product,
        labels,
        out_payoff,
        index,
        padded,
    }
}
