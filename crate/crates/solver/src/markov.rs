//! Absorbing Markov chains with terminal rewards.

use num_traits::{One, Zero};
use wmp_game::Rational;
use wmp_graph::sccs;

use crate::linalg;

#[derive(Debug, Clone)]
pub enum Node {
    Terminal(Rational),
    Step(Vec<(usize, Rational)>),
}

/// Expected terminal reward from every node. `None` if some closed set of
/// nodes contains no terminal, so that the reward is undefined.
pub fn absorb(nodes: &[Node]) -> Option<Vec<Rational>> {
    let adj: Vec<Vec<usize>> = nodes
        .iter()
        .map(|n| match n {
            Node::Terminal(_) => Vec::new(),
            Node::Step(s) => s.iter().map(|&(t, _)| t).collect(),
        })
        .collect();
    let mut value: Vec<Option<Rational>> = vec![None; nodes.len()];
    for comp in sccs(&adj) {
        if let [v] = comp[..] {
            if let Node::Terminal(x) = &nodes[v] {
                value[v] = Some(x.clone());
                continue;
            }
        }
        let pos = |v: usize| comp.iter().position(|&c| c == v);
        let k = comp.len();
        let mut a = vec![vec![Rational::zero(); k]; k];
        let mut b = vec![Rational::zero(); k];
        for (i, &v) in comp.iter().enumerate() {
            a[i][i] = Rational::one();
            let Node::Step(steps) = &nodes[v] else { unreachable!() };
            for (t, p) in steps {
                match pos(*t) {
                    Some(j) => a[i][j] -= p,
                    None => b[i] += p * value[*t].as_ref().expect("successor components come first"),
                }
            }
        }
        let x = linalg::solve(a, b)?;
        for (i, &v) in comp.iter().enumerate() {
            value[v] = Some(x[i].clone());
        }
    }
    Some(value.into_iter().map(Option::unwrap).collect())
}
