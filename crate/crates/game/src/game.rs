use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::ValidationError;
use crate::rational::Rational;
use crate::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Max,
    Min,
    Random,
}

impl Owner {
    pub fn keyword(self) -> &'static str {
        match self {
            Owner::Max => "max",
            Owner::Min => "min",
            Owner::Random => "rand",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "max" => Some(Owner::Max),
            "min" => Some(Owner::Min),
            "rand" => Some(Owner::Random),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Max,
    Min,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }

    pub fn owner(self) -> Owner {
        match self {
            Player::Max => Owner::Max,
            Player::Min => Owner::Min,
        }
    }

    pub fn keyword(self) -> &'static str {
        self.owner().keyword()
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "max" => Some(Player::Max),
            "min" => Some(Player::Min),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// An outgoing edge. `prob` is set exactly when the source is random.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub dst: usize,
    pub payoff: Rational,
    pub prob: Option<Rational>,
}

/// A validated stochastic game. Successor lists are sorted by target index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticGame {
    name: String,
    ids: Vec<String>,
    owners: Vec<Owner>,
    succ: Vec<Vec<Edge>>,
    index: HashMap<String, usize>,
}

impl StochasticGame {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.ids.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn owner(&self, v: usize) -> Owner {
        self.owners[v]
    }

    pub fn edges(&self, v: usize) -> &[Edge] {
        &self.succ[v]
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[v].iter().map(|e| e.dst)
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<&Edge> {
        self.succ[u]
            .binary_search_by_key(&v, |e| e.dst)
            .ok()
            .map(|i| &self.succ[u][i])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge(u, v).is_some()
    }

    pub fn payoff(&self, u: usize, v: usize) -> Option<&Rational> {
        self.edge(u, v).map(|e| &e.payoff)
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Predecessor lists, sorted.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for u in self.vertices() {
            for e in &self.succ[u] {
                pred[e.dst].push(u);
            }
        }
        pred
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn owned_by(&self, owner: Owner) -> impl Iterator<Item = usize> + '_ {
        self.vertices().filter(move |&v| self.owners[v] == owner)
    }

    /// Largest absolute payoff.
    pub fn max_abs_payoff(&self) -> Rational {
        self.succ
            .iter()
            .flatten()
            .map(|e| e.payoff.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn payoffs(&self) -> impl Iterator<Item = &Rational> {
        self.succ.iter().flatten().map(|e| &e.payoff)
    }

    pub fn probabilities(&self) -> impl Iterator<Item = &Rational> {
        self.succ.iter().flatten().filter_map(|e| e.prob.as_ref())
    }

    /// Same graph with every payoff replaced through `f`.
    pub fn map_payoffs(&self, mut f: impl FnMut(usize, usize, &Rational) -> Rational) -> Self {
        let mut g = self.clone();
        for u in 0..g.len() {
            for e in &mut g.succ[u] {
                e.payoff = f(u, e.dst, &e.payoff);
            }
        }
        g
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Incremental construction of a [`StochasticGame`]; `build` validates.
#[derive(Debug, Clone, Default)]
pub struct GameBuilder {
    name: String,
    ids: Vec<String>,
    owners: Vec<Owner>,
    succ: Vec<Vec<Edge>>,
    index: HashMap<String, usize>,
    errors: Vec<ValidationError>,
}

impl GameBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        GameBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, id: impl Into<String>, owner: Owner) -> usize {
        let id = id.into();
        if let Some(&v) = self.index.get(&id) {
            self.errors.push(ValidationError::DuplicateVertex(id));
            return v;
        }
        let v = self.ids.len();
        self.index.insert(id.clone(), v);
        self.ids.push(id);
        self.owners.push(owner);
        self.succ.push(Vec::new());
        v
    }

    pub fn owner(&self, v: usize) -> Owner {
        self.owners[v]
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn edge(&mut self, src: usize, dst: usize, payoff: Rational, prob: Option<Rational>) {
        self.succ[src].push(Edge { dst, payoff, prob });
    }

    pub fn edge_by_id(&mut self, src: &str, dst: &str, payoff: Rational, prob: Option<Rational>) {
        match (self.index_of(src), self.index_of(dst)) {
            (Some(s), Some(d)) => self.edge(s, d, payoff, prob),
            (None, _) => self.errors.push(ValidationError::UnknownVertex(src.to_string())),
            (_, None) => self.errors.push(ValidationError::UnknownVertex(dst.to_string())),
        }
    }

    pub fn build(mut self) -> Result<StochasticGame, ValidationError> {
        if let Some(e) = self.errors.into_iter().next() {
            return Err(e);
        }
        if self.ids.is_empty() {
            return Err(ValidationError::Empty);
        }
        for (u, edges) in self.succ.iter_mut().enumerate() {
            edges.sort_by_key(|e| e.dst);
            for w in edges.windows(2) {
                if w[0].dst == w[1].dst {
                    return Err(ValidationError::DuplicateEdge(
                        self.ids[u].clone(),
                        self.ids[w[0].dst].clone(),
                    ));
                }
            }
        }
        for u in 0..self.ids.len() {
            validate_vertex(&self.ids, self.owners[u], u, &self.succ[u])?;
        }
        Ok(StochasticGame {
            name: self.name,
            ids: self.ids,
            owners: self.owners,
            succ: self.succ,
            index: self.index,
        })
    }
}

fn validate_vertex(
    ids: &[String],
    owner: Owner,
    u: usize,
    edges: &[Edge],
) -> Result<(), ValidationError> {
    if edges.is_empty() {
        return Err(ValidationError::Deadlock(ids[u].clone()));
    }
    if owner != Owner::Random {
        if let Some(e) = edges.iter().find(|e| e.prob.is_some()) {
            return Err(ValidationError::ProbabilityOnOwned {
                vertex: ids[u].clone(),
                succ: ids[e.dst].clone(),
            });
        }
        return Ok(());
    }
    let mut sum = Rational::zero();
    for e in edges {
        let Some(p) = &e.prob else {
            return Err(ValidationError::MissingProbability {
                vertex: ids[u].clone(),
                succ: ids[e.dst].clone(),
            });
        };
        if !p.is_positive() {
            return Err(ValidationError::NonPositiveProbability {
                vertex: ids[u].clone(),
                succ: ids[e.dst].clone(),
                prob: p.clone(),
            });
        }
        if p > &Rational::one() {
            return Err(ValidationError::ProbabilityAboveOne {
                vertex: ids[u].clone(),
                succ: ids[e.dst].clone(),
                prob: p.clone(),
            });
        }
        sum += p;
    }
    if !sum.is_one() {
        return Err(ValidationError::DistributionSum {
            vertex: ids[u].clone(),
            sum,
        });
    }
    Ok(())
}
