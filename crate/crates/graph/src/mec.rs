use wmp_game::{Owner, StochasticGame, VertexSet};

use crate::scc::sccs;

/// Maximal end components with Min vertices handed to Max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MecDecomposition {
    pub mecs: Vec<VertexSet>,
    pub membership: Vec<Option<usize>>,
}

pub fn mec_decompose(game: &StochasticGame) -> MecDecomposition {
    mec_decompose_within(game, &game.all_vertices())
}

/// Maximal end components of the subgraph on `within`. Random vertices need
/// every successor inside their component.
pub fn mec_decompose_within(game: &StochasticGame, within: &VertexSet) -> MecDecomposition {
    let n = game.len();
    let mut alive = vec![false; n];
    for &v in within {
        alive[v] = true;
    }
    loop {
        let comps = alive_sccs(game, &alive);
        let mut comp_of = vec![usize::MAX; n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut removed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let c = comp_of[v];
            let keep = if game.owner(v) == Owner::Random {
                game.successors(v).all(|w| comp_of[w] == c)
            } else {
                game.successors(v).any(|w| comp_of[w] == c)
            };
            if !keep {
                alive[v] = false;
                removed = true;
            }
        }
        if !removed {
            let mut mecs: Vec<VertexSet> = comps.into_iter().map(|c| c.into_iter().collect()).collect();
            mecs.sort_by_key(|m| *m.iter().next().unwrap());
            let mut membership = vec![None; n];
            for (i, m) in mecs.iter().enumerate() {
                for &v in m {
                    membership[v] = Some(i);
                }
            }
            return MecDecomposition { mecs, membership };
        }
    }
}

fn alive_sccs(game: &StochasticGame, alive: &[bool]) -> Vec<Vec<usize>> {
    let adj: Vec<Vec<usize>> = game
        .vertices()
        .map(|v| {
            if alive[v] {
                game.successors(v).filter(|&w| alive[w]).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    sccs(&adj)
        .into_iter()
        .filter(|c| alive[c[0]])
        .collect()
}

/// Whether `set` is an end component: strongly connected through its own
/// edges, random vertices keep all successors inside, owned vertices some.
pub fn end_components(game: &StochasticGame, set: &VertexSet) -> bool {
    if set.is_empty() {
        return false;
    }
    let closed = set.iter().all(|&v| {
        let mut s = game.successors(v);
        if game.owner(v) == Owner::Random {
            s.all(|w| set.contains(&w))
        } else {
            s.any(|w| set.contains(&w))
        }
    });
    if !closed {
        return false;
    }
    let mut alive = vec![false; game.len()];
    for &v in set {
        alive[v] = true;
    }
    let comps = alive_sccs(game, &alive);
    comps.len() == 1 && comps[0].len() == set.len() && {
        let v = comps[0][0];
        set.len() > 1 || game.has_edge(v, v)
    }
}
