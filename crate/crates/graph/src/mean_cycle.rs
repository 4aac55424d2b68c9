use num_traits::Zero;
use wmp_game::{Rational, StochasticGame, VertexSet};

use crate::scc::sccs;
use crate::GraphError;

/// Minimum cycle mean of the subgraph induced by `within`, with a simple
/// cycle attaining it.
pub fn min_mean_cycle(game: &StochasticGame, within: &VertexSet) -> Result<(Rational, Vec<usize>), GraphError> {
    let edges: Vec<(usize, usize, Rational)> = within
        .iter()
        .flat_map(|&u| {
            game.edges(u)
                .iter()
                .filter(|e| within.contains(&e.dst))
                .map(move |e| (u, e.dst, e.payoff.clone()))
        })
        .collect();
    min_mean_cycle_edges(game.len(), &edges).ok_or(GraphError::Acyclic)
}

/// Karp's algorithm per strongly connected component, in exact arithmetic.
/// The witness cycle is read off the zero-reduced-cost edges after
/// subtracting the optimum mean. It starts at its smallest vertex.
pub fn min_mean_cycle_edges(n: usize, edges: &[(usize, usize, Rational)]) -> Option<(Rational, Vec<usize>)> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        adj[u].push((v, i));
    }
    let plain: Vec<Vec<usize>> = adj.iter().map(|a| a.iter().map(|&(v, _)| v).collect()).collect();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for comp in sccs(&plain) {
        let mut local = vec![usize::MAX; n];
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let inner: Vec<(usize, usize, &Rational)> = edges
            .iter()
            .filter(|(u, v, _)| local[*u] != usize::MAX && local[*v] != usize::MAX)
            .map(|(u, v, w)| (local[*u], local[*v], w))
            .collect();
        if inner.is_empty() {
            continue;
        }
        let k = comp.len();
        let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; k]; k + 1];
        d[0][0] = Some(Rational::zero());
        for j in 1..=k {
            for &(u, v, w) in &inner {
                if let Some(du) = &d[j - 1][u] {
                    let cand = du + w;
                    if d[j][v].as_ref().is_none_or(|dv| &cand < dv) {
                        d[j][v] = Some(cand);
                    }
                }
            }
        }
        let mut mu: Option<Rational> = None;
        for v in 0..k {
            let Some(dk) = &d[k][v] else { continue };
            let worst = (0..k)
                .filter_map(|j| d[j][v].as_ref().map(|dj| (dk - dj) / Rational::from_integer(((k - j) as i64).into())))
                .max();
            if let Some(worst) = worst {
                if mu.as_ref().is_none_or(|m| &worst < m) {
                    mu = Some(worst);
                }
            }
        }
        let mu = mu.expect("a strongly connected component with an edge has a cycle");
        if best.as_ref().is_some_and(|(b, _)| b <= &mu) {
            continue;
        }
        let cycle: Vec<usize> = tight_cycle(k, &inner, &mu).into_iter().map(|v| comp[v]).collect();
        best = Some((mu, cycle));
    }
    best
}

fn tight_cycle(k: usize, inner: &[(usize, usize, &Rational)], mu: &Rational) -> Vec<usize> {
    let mut pot = vec![Rational::zero(); k];
    for _ in 0..k {
        let mut changed = false;
        for &(u, v, w) in inner {
            let cand = &pot[u] + w - mu;
            if cand < pot[v] {
                pot[v] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut tight = vec![Vec::new(); k];
    for &(u, v, w) in inner {
        if &pot[u] + w - mu == pot[v] {
            tight[u].push(v);
        }
    }
    for t in &mut tight {
        t.sort_unstable();
    }
    // Depth-first search for a cycle among tight edges.
    let mut color = vec![0u8; k];
    let mut parent = vec![usize::MAX; k];
    for root in 0..k {
        if color[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color[root] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < tight[v].len() {
                let w = tight[v][*i];
                *i += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cyc = vec![v];
                        let mut x = v;
                        while x != w {
                            x = parent[x];
                            cyc.push(x);
                        }
                        cyc.reverse();
                        let m = (0..cyc.len()).min_by_key(|&i| cyc[i]).unwrap();
                        cyc.rotate_left(m);
                        return cyc;
                    }
                    _ => {}
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    unreachable!("the optimal cycle consists of tight edges")
}

/// Every simple cycle of the edge list, each starting at its smallest vertex.
pub fn simple_cycles(n: usize, edges: &[(usize, usize, Rational)]) -> Vec<(Vec<usize>, Rational)> {
    let mut adj = vec![Vec::new(); n];
    for (u, v, w) in edges {
        adj[*u].push((*v, w.clone()));
    }
    let mut out = Vec::new();
    for start in 0..n {
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start] = true;
        extend(&adj, start, &mut path, &mut on_path, Rational::zero(), &mut out);
    }
    out
}

fn extend(
    adj: &[Vec<(usize, Rational)>],
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    total: Rational,
    out: &mut Vec<(Vec<usize>, Rational)>,
) {
    let v = *path.last().unwrap();
    for (w, pay) in &adj[v] {
        let t = &total + pay;
        if *w == start {
            out.push((path.clone(), t));
        } else if *w > start && !on_path[*w] {
            on_path[*w] = true;
            path.push(*w);
            extend(adj, start, path, on_path, t, out);
            path.pop();
            on_path[*w] = false;
        }
    }
}
