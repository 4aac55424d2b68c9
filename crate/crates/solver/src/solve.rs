use std::fmt::Write;

use num_bigint::BigInt;
use wmp_game::rational::best_approximation;
use wmp_game::{Owner, Rational, StochasticGame, VertexSet};
use wmp_qualitative::{BwmpOracle, ExhaustiveBwmpOracle};
use wmp_verifier::{decompose, serialize_certificate, verify, Condition, Synthesized, VerificationReport};
use wmp_window::Objective;

use crate::arena::Arena;
use crate::boundary::{solve_boundary_system, BoundaryLinearSystem};
use crate::bounds::{compute_bounds, DenominatorBounds};
use crate::estimate::{base_values, improve, improve_min};
use crate::response::min_response;
use crate::SolveError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Estimate,
    Enumerate,
}

impl Method {
    pub fn keyword(self) -> &'static str {
        match self {
            Method::Estimate => "estimate+round",
            Method::Enumerate => "enumerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Class without boundary vertices: an achievable window value.
    Theta,
    /// Class with boundary vertices: fixed by the boundary system.
    LinearSystem,
}

impl Provenance {
    pub fn keyword(self) -> &'static str {
        match self {
            Provenance::Theta => "theta",
            Provenance::LinearSystem => "linsys",
        }
    }
}

pub struct SolveParams<'a> {
    /// Denominator bound used for rounding and granularity; defaults to the
    /// global bound.
    pub bound: Option<BigInt>,
    /// Cap on Min best-response computations during strategy improvement.
    pub budget: usize,
    /// Largest number of Max strategies the fallback enumerates.
    pub enumerate_cap: u128,
    pub oracle: &'a dyn BwmpOracle,
}

static DEFAULT_ORACLE: ExhaustiveBwmpOracle = ExhaustiveBwmpOracle { max_strategies: 1 << 16 };

impl Default for SolveParams<'_> {
    fn default() -> Self {
        SolveParams {
            bound: None,
            budget: 2000,
            enumerate_cap: 1 << 12,
            oracle: &DEFAULT_ORACLE,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub vector: Vec<Rational>,
    pub method: Method,
    pub bounds: DenominatorBounds,
    pub verification: VerificationReport,
    pub strategies: Synthesized,
    /// Per class in increasing value order.
    pub provenance: Vec<(Rational, Provenance)>,
    pub boundary_system: Option<BoundaryLinearSystem>,
}

impl SolveReport {
    pub fn render(&self, game: &StochasticGame) -> String {
        let mut out = String::new();
        writeln!(out, "# method {}", self.method.keyword()).unwrap();
        let width = game.vertices().map(|v| game.id(v).len()).max().unwrap_or(0);
        for v in game.vertices() {
            writeln!(out, "# {:<width$}  {:>5}  {}", game.id(v), game.owner(v).keyword(), self.vector[v]).unwrap();
        }
        out.push_str(&serialize_certificate(game, &self.vector));
        for (value, p) in &self.provenance {
            writeln!(out, "provenance {value} {}", p.keyword()).unwrap();
        }
        for m in [&self.strategies.max, &self.strategies.min].into_iter().flatten() {
            out.push_str(&m.serialize(game));
        }
        out
    }
}

/// Pointwise best over every memoryless Max strategy on the arena, each
/// against Min's exact reply. Exact whenever memoryless Max strategies on the
/// arena are optimal.
fn enumerate_values(arena: &Arena, cap: u128) -> Result<Vec<Rational>, SolveError> {
    let g = &arena.game;
    let count = arena.strategy_count(Owner::Max);
    if count > cap {
        return Err(SolveError::TooLarge { what: "Max strategies", count, cap });
    }
    let owned: Vec<usize> = g.owned_by(Owner::Max).collect();
    let mut best: Option<Vec<Rational>> = None;
    for mut code in 0..count {
        let mut pick: Vec<usize> = g.vertices().map(|v| g.edges(v)[0].dst).collect();
        for &v in &owned {
            let d = g.edges(v).len() as u128;
            pick[v] = g.edges(v)[(code % d) as usize].dst;
            code /= d;
        }
        let x = min_response(g, &pick, arena.settle).values;
        best = Some(match best {
            None => x,
            Some(b) => b.into_iter().zip(x).map(|(p, q)| p.max(q)).collect(),
        });
    }
    Ok(best.unwrap())
}

fn finish(
    game: &StochasticGame,
    vector: Vec<Rational>,
    method: Method,
    bounds: DenominatorBounds,
    verification: VerificationReport,
) -> Result<SolveReport, SolveError> {
    let decomp = decompose(game, &vector).map_err(SolveError::Verify)?;
    let provenance = decomp
        .classes
        .iter()
        .map(|c| {
            let p = if c.boundary.is_empty() { Provenance::Theta } else { Provenance::LinearSystem };
            (c.value.clone(), p)
        })
        .collect();
    let boundary_system = if decomp.classes.iter().any(|c| !c.boundary.is_empty()) {
        let classes: Vec<VertexSet> = decomp.classes.iter().map(|c| c.vertices.clone()).collect();
        let known: Vec<Option<Rational>> = decomp
            .classes
            .iter()
            .map(|c| c.boundary.is_empty().then(|| c.value.clone()))
            .collect();
        Some(solve_boundary_system(game, &classes, &known)?)
    } else {
        None
    };
    let strategies = verification.synthesized.clone().expect("accepted reports carry strategies");
    Ok(SolveReport {
        vector,
        method,
        bounds,
        verification,
        strategies,
        provenance,
        boundary_system,
    })
}

/// Guess and check: strategy-improvement estimates for Max and, on the
/// product arena, for Min are rounded and verified; if both are rejected, an exhaustive candidate over Max strategies is tried.
/// Only verified vectors are returned.
pub fn solve(game: &StochasticGame, objective: Objective, params: &SolveParams) -> Result<SolveReport, SolveError> {
    let bounds = compute_bounds(game, objective);
    let d = params.bound.clone().unwrap_or_else(|| bounds.global_bound.clone());
    let arena = Arena::new(game, objective);
    let round = |x: Vec<Rational>| -> Vec<Rational> { x.iter().map(|v| best_approximation(v, &d)).collect() };
    let mut rejected = Vec::new();

    let est = improve(&arena, params.budget);
    let candidate = round(base_values(&arena, &est.response.values));
    let report = verify(game, &candidate, objective, &d, params.oracle)?;
    if report.accepted {
        return finish(game, candidate, Method::Estimate, bounds, report);
    }
    rejected.push(describe(Method::Estimate, report.failing_condition()));

    if let Some(est) = improve_min(&arena, params.budget) {
        let candidate = round(base_values(&arena, &est.response.values));
        let report = verify(game, &candidate, objective, &d, params.oracle)?;
        if report.accepted {
            return finish(game, candidate, Method::Estimate, bounds, report);
        }
        rejected.push(format!("min-side {}", describe(Method::Estimate, report.failing_condition())));
    }

    match enumerate_values(&arena, params.enumerate_cap) {
        Ok(values) => {
            let candidate = round(base_values(&arena, &values));
            let report = verify(game, &candidate, objective, &d, params.oracle)?;
            if report.accepted {
                return finish(game, candidate, Method::Enumerate, bounds, report);
            }
            rejected.push(describe(Method::Enumerate, report.failing_condition()));
        }
        Err(e) => rejected.push(format!("{}: {e}", Method::Enumerate.keyword())),
    }
    Err(SolveError::NoCandidate(rejected.join("; ")))
}

fn describe(method: Method, cond: Option<Condition>) -> String {
    match cond {
        Some(c) => format!("{} candidate fails {c}", method.keyword()),
        None => format!("{} candidate rejected", method.keyword()),
    }
}
