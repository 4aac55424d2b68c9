use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use wmp_game::rational::lcm_denominators;
use wmp_game::subgame::boundary;
use wmp_game::{Rational, StochasticGame, VertexSet};

use crate::{linalg, SolveError};

/// Linear system tying the values of classes with boundary vertices to the
/// values of classes without.
#[derive(Debug, Clone)]
pub struct BoundaryLinearSystem {
    /// Indices of classes with boundary vertices, in input order.
    pub boundary_classes: Vec<usize>,
    pub other_classes: Vec<usize>,
    /// Lowest-index boundary vertex of each boundary class.
    pub representatives: Vec<usize>,
    pub q_b: Vec<Vec<Rational>>,
    pub q_c: Vec<Vec<Rational>>,
    pub rhs_values: Vec<Rational>,
    pub solution: Vec<Rational>,
    /// Least common multiple of the denominators of `q_b`.
    pub alpha: BigInt,
    /// Determinant of `alpha (I - Q_B)`.
    pub determinant: BigInt,
}

impl BoundaryLinearSystem {
    pub fn size(&self) -> usize {
        self.boundary_classes.len()
    }

    /// `|det(alpha (I - Q_B))| <= (2 alpha)^m`.
    pub fn determinant_within_bound(&self) -> bool {
        let bound = num_traits::Pow::pow(BigInt::from(2) * &self.alpha, self.size());
        !self.determinant.is_zero() && self.determinant.abs() <= bound
    }
}

/// `values[i]` must be given for every class without boundary vertices;
/// entries for boundary classes are ignored.
pub fn solve_boundary_system(
    game: &StochasticGame,
    classes: &[VertexSet],
    values: &[Option<Rational>],
) -> Result<BoundaryLinearSystem, SolveError> {
    let mut class_of = vec![usize::MAX; game.len()];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    if class_of.contains(&usize::MAX) {
        return Err(SolveError::Partition("classes do not cover every vertex".into()));
    }
    let mut boundary_classes = Vec::new();
    let mut other_classes = Vec::new();
    let mut representatives = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        match boundary(game, c).first() {
            Some(&r) => {
                boundary_classes.push(i);
                representatives.push(r);
            }
            None => other_classes.push(i),
        }
    }
    let rhs_values = other_classes
        .iter()
        .map(|&i| {
            values[i]
                .clone()
                .ok_or_else(|| SolveError::Partition(format!("class {i} has no boundary and no value")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = boundary_classes.len();
    let mut q_b = vec![vec![Rational::zero(); m]; m];
    let mut q_c = vec![vec![Rational::zero(); other_classes.len()]; m];
    for (row, &r) in representatives.iter().enumerate() {
        for e in game.edges(r) {
            let c = class_of[e.dst];
            let p = e.prob.as_ref().unwrap();
            match boundary_classes.iter().position(|&b| b == c) {
                Some(j) => q_b[row][j] += p,
                None => q_c[row][other_classes.iter().position(|&o| o == c).unwrap()] += p,
            }
        }
    }
    let i_minus: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Rational::one() - &q_b[i][j] } else { -q_b[i][j].clone() })
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = q_c
        .iter()
        .map(|row| row.iter().zip(&rhs_values).map(|(p, x)| p * x).sum())
        .collect();
    let solution = linalg::solve(i_minus.clone(), rhs).ok_or(SolveError::Singular)?;
    let alpha = lcm_denominators(q_b.iter().flatten());
    let scaled: Vec<Vec<Rational>> = i_minus
        .iter()
        .map(|row| row.iter().map(|x| x * Rational::from_integer(alpha.clone())).collect())
        .collect();
    let det = linalg::determinant(scaled);
    debug_assert!(det.is_integer());
    Ok(BoundaryLinearSystem {
        boundary_classes,
        other_classes,
        representatives,
        q_b,
        q_c,
        rhs_values,
        solution,
        alpha,
        determinant: det.to_integer(),
    })
}
