use std::collections::{BTreeMap, BTreeSet};

use wmp_game::{Owner, Player, StochasticGame, VertexSet};

use crate::GraphError;

/// Positive attractor of `target` for one player inside a subgame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttractorResult {
    pub attractor: VertexSet,
    /// Chosen successor of every attracted vertex owned by the player,
    /// outside the target.
    pub witness: BTreeMap<usize, usize>,
    pub trap: VertexSet,
}

/// Mask form of [`positive_attractor`]. Returns the attractor and, for
/// attracted vertices owned by `player` outside the target, the witness.
///
/// Vertices join layer by layer; a witness always points into an earlier
/// layer and is the smallest such successor.
pub fn attractor_mask(
    game: &StochasticGame,
    player: Player,
    target: &[bool],
    within: &[bool],
) -> (Vec<bool>, Vec<Option<usize>>) {
    let n = game.len();
    let mut in_set: Vec<bool> = (0..n).map(|v| target[v] && within[v]).collect();
    let mut witness = vec![None; n];
    let mut pred = vec![Vec::new(); n];
    let mut remaining = vec![0usize; n];
    for u in 0..n {
        if !within[u] {
            continue;
        }
        for w in game.successors(u) {
            if within[w] {
                pred[w].push(u);
                remaining[u] += 1;
            }
        }
    }
    let mut frontier: Vec<usize> = (0..n).filter(|&v| in_set[v]).collect();
    while !frontier.is_empty() {
        let mut joining = BTreeSet::new();
        for &u in &frontier {
            for &p in &pred[u] {
                if in_set[p] {
                    continue;
                }
                let owner = game.owner(p);
                if owner == player.owner() || owner == Owner::Random {
                    joining.insert(p);
                } else {
                    remaining[p] -= 1;
                    if remaining[p] == 0 {
                        joining.insert(p);
                    }
                }
            }
        }
        for &p in &joining {
            if game.owner(p) == player.owner() {
                witness[p] = game.successors(p).find(|&w| within[w] && in_set[w]);
            }
        }
        for &p in &joining {
            in_set[p] = true;
        }
        frontier = joining.into_iter().collect();
    }
    (in_set, witness)
}

/// Checks that `set` induces a subgame inside `within`.
fn check_subgame(game: &StochasticGame, within: &[bool]) -> Result<(), GraphError> {
    for v in game.vertices().filter(|&v| within[v]) {
        let mut succ = game.successors(v);
        let ok = if game.owner(v) == Owner::Random {
            succ.all(|w| within[w])
        } else {
            succ.any(|w| within[w])
        };
        if !ok {
            return Err(GraphError::NotSubgame(format!("vertex {}", game.id(v))));
        }
    }
    Ok(())
}

pub(crate) fn mask(n: usize, set: &VertexSet) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

/// Least set containing `target` closed under: a vertex of `player` or a
/// random vertex with some successor in the set, an opponent vertex with all
/// of its successors inside `within` in the set.
pub fn positive_attractor(
    game: &StochasticGame,
    player: Player,
    target: &VertexSet,
    within: &VertexSet,
) -> Result<AttractorResult, GraphError> {
    if !target.is_subset(within) {
        return Err(GraphError::TargetOutside);
    }
    let w = mask(game.len(), within);
    check_subgame(game, &w)?;
    let (attr, wit) = attractor_mask(game, player, &mask(game.len(), target), &w);
    let attractor: VertexSet = within.iter().copied().filter(|&v| attr[v]).collect();
    let trap = within.difference(&attractor).copied().collect();
    let witness = wit
        .iter()
        .enumerate()
        .filter_map(|(v, w)| w.map(|w| (v, w)))
        .collect();
    Ok(AttractorResult {
        attractor,
        witness,
        trap,
    })
}

/// Whether the player cannot leave `set` (within `within`) against the
/// opponent: the player's and random vertices keep all successors inside,
/// opponent vertices keep at least one.
pub fn is_trap(game: &StochasticGame, player: Player, set: &VertexSet, within: &VertexSet) -> bool {
    set.iter().all(|&v| {
        let mut succ = game.successors(v).filter(|w| within.contains(w));
        if game.owner(v) == player.opponent().owner() {
            succ.any(|w| set.contains(&w))
        } else {
            succ.all(|w| set.contains(&w))
        }
    })
}
