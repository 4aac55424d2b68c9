use num_traits::{One, Zero};

use crate::error::GameError;
use crate::game::{GameBuilder, Owner, StochasticGame};
use crate::rational::Rational;
use crate::VertexSet;

/// A game derived from a parent game on a subset of its vertices.
#[derive(Debug, Clone)]
pub struct Subgame {
    pub game: StochasticGame,
    /// Parent index of each subgame vertex.
    pub to_parent: Vec<usize>,
    /// Subgame index of each parent vertex, if kept.
    pub from_parent: Vec<Option<usize>>,
}

impl Subgame {
    pub fn parent_set(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|&v| self.to_parent[v]).collect()
    }

    pub fn local_set(&self, parent: &VertexSet) -> VertexSet {
        parent.iter().filter_map(|&v| self.from_parent[v]).collect()
    }
}

fn start_builder(game: &StochasticGame, kept: &VertexSet, suffix: &str) -> (GameBuilder, Vec<usize>, Vec<Option<usize>>) {
    let mut b = GameBuilder::new(format!("{}{}", game.name(), suffix));
    let mut from_parent = vec![None; game.len()];
    let mut to_parent = Vec::with_capacity(kept.len());
    for &v in kept {
        from_parent[v] = Some(b.vertex(game.id(v), game.owner(v)));
        to_parent.push(v);
    }
    (b, to_parent, from_parent)
}

/// The subgame induced by `kept`: every kept vertex needs a kept successor and
/// kept random vertices need all of theirs.
pub fn restrict(game: &StochasticGame, kept: &VertexSet) -> Result<Subgame, GameError> {
    if kept.is_empty() {
        return Err(GameError::Selection("empty selection".into()));
    }
    if let Some(&v) = kept.iter().find(|&&v| v >= game.len()) {
        return Err(GameError::Selection(format!("vertex index {v} out of range")));
    }
    for &v in kept {
        if game.owner(v) == Owner::Random {
            if let Some(w) = game.successors(v).find(|w| !kept.contains(w)) {
                return Err(GameError::Selection(format!(
                    "random vertex {} loses successor {}",
                    game.id(v),
                    game.id(w)
                )));
            }
        } else if !game.successors(v).any(|w| kept.contains(&w)) {
            return Err(GameError::Selection(format!(
                "vertex {} keeps no successor",
                game.id(v)
            )));
        }
    }
    let (mut b, to_parent, from_parent) = start_builder(game, kept, "");
    for &v in kept {
        for e in game.edges(v) {
            if let Some(dst) = from_parent[e.dst] {
                b.edge(from_parent[v].unwrap(), dst, e.payoff.clone(), e.prob.clone());
            }
        }
    }
    let game = b.build().map_err(|e| GameError::Selection(e.to_string()))?;
    Ok(Subgame {
        game,
        to_parent,
        from_parent,
    })
}

/// Random vertices of `class` with a successor outside it.
pub fn boundary(game: &StochasticGame, class: &VertexSet) -> VertexSet {
    class
        .iter()
        .copied()
        .filter(|&v| game.owner(v) == Owner::Random && game.successors(v).any(|w| !class.contains(&w)))
        .collect()
}

/// Restriction to a value class: boundary vertices become absorbing with a
/// payoff-0 self-loop and owned vertices keep their in-class successors.
pub fn class_restriction(game: &StochasticGame, class: &VertexSet) -> Result<Subgame, GameError> {
    if class.is_empty() {
        return Err(GameError::Selection("empty class".into()));
    }
    let bnd = boundary(game, class);
    let (mut b, to_parent, from_parent) = start_builder(game, class, "|class");
    for &v in class {
        let lv = from_parent[v].unwrap();
        if bnd.contains(&v) {
            b.edge(lv, lv, Rational::zero(), Some(Rational::one()));
            continue;
        }
        let mut any = false;
        for e in game.edges(v) {
            if let Some(dst) = from_parent[e.dst] {
                b.edge(lv, dst, e.payoff.clone(), e.prob.clone());
                any = true;
            }
        }
        if !any {
            return Err(GameError::Selection(format!(
                "vertex {} has no successor inside its class",
                game.id(v)
            )));
        }
    }
    let game = b.build().map_err(|e| GameError::Selection(e.to_string()))?;
    Ok(Subgame {
        game,
        to_parent,
        from_parent,
    })
}
