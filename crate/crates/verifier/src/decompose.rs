use std::collections::BTreeMap;

use wmp_game::subgame::boundary;
use wmp_game::{class_restriction, Player, Rational, StochasticGame, Subgame, VertexSet};
use wmp_graph::positive_attractor;

use crate::VerifyError;

/// Positive-attractor / trap split of a class for one player, in parent
/// indices.
#[derive(Debug, Clone)]
pub struct TrapSplit {
    pub attractor: VertexSet,
    pub trap: VertexSet,
    /// Attractor witness for the player's own vertices outside the boundary.
    pub witness: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone)]
pub struct ValueClass {
    pub value: Rational,
    pub vertices: VertexSet,
    pub boundary: VertexSet,
    pub restriction: Subgame,
    pub max_split: TrapSplit,
    pub min_split: TrapSplit,
}

impl ValueClass {
    pub fn split(&self, player: Player) -> &TrapSplit {
        match player {
            Player::Max => &self.max_split,
            Player::Min => &self.min_split,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Sorted by increasing value.
    pub classes: Vec<ValueClass>,
    pub class_of: Vec<usize>,
}

impl Decomposition {
    /// Whether every boundary vertex has successors in both a strictly lower
    /// and a strictly higher class.
    pub fn boundary_straddles(&self, game: &StochasticGame) -> bool {
        self.classes.iter().enumerate().all(|(i, c)| {
            c.boundary.iter().all(|&v| {
                game.successors(v).any(|w| self.class_of[w] < i) && game.successors(v).any(|w| self.class_of[w] > i)
            })
        })
    }
}

fn split(sub: &Subgame, player: Player, bnd: &VertexSet) -> TrapSplit {
    let g = &sub.game;
    let r = positive_attractor(g, player, &sub.local_set(bnd), &g.all_vertices())
        .expect("class restrictions are whole games");
    TrapSplit {
        attractor: sub.parent_set(&r.attractor),
        trap: sub.parent_set(&r.trap),
        witness: r
            .witness
            .into_iter()
            .filter(|&(v, _)| g.owner(v) == player.owner())
            .map(|(v, w)| (sub.to_parent[v], sub.to_parent[w]))
            .collect(),
    }
}

pub fn decompose(game: &StochasticGame, values: &[Rational]) -> Result<Decomposition, VerifyError> {
    if values.len() != game.len() {
        return Err(VerifyError::Length {
            expected: game.len(),
            got: values.len(),
        });
    }
    let mut groups: BTreeMap<&Rational, VertexSet> = BTreeMap::new();
    for v in game.vertices() {
        groups.entry(&values[v]).or_default().insert(v);
    }
    let mut class_of = vec![0; game.len()];
    let mut classes = Vec::with_capacity(groups.len());
    for (i, (value, vertices)) in groups.into_iter().enumerate() {
        for &v in &vertices {
            class_of[v] = i;
        }
        let bnd = boundary(game, &vertices);
        let restriction = class_restriction(game, &vertices).map_err(|e| VerifyError::Structure {
            value: value.clone(),
            message: e.to_string(),
        })?;
        classes.push(ValueClass {
            value: value.clone(),
            max_split: split(&restriction, Player::Max, &bnd),
            min_split: split(&restriction, Player::Min, &bnd),
            vertices,
            boundary: bnd,
            restriction,
        });
    }
    Ok(Decomposition { classes, class_of })
}
