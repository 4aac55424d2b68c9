use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use wmp_game::{Owner, Player, Rational, StochasticGame};
use wmp_qualitative::BwmpOracle;
use wmp_window::Objective;

use crate::decompose::{decompose, Decomposition};
use crate::synth::{compose, solve_traps, Synthesized, TrapOutcome};
use crate::VerifyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellmanViolation {
    pub vertex: usize,
    /// Value the equation demands from the successors.
    pub expected: Rational,
    pub actual: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Bellman,
    Structure,
    LowerBound,
    UpperBound,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Bellman => "bellman",
            Condition::Structure => "structure",
            Condition::LowerBound => "lower-bound",
            Condition::UpperBound => "upper-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCheck {
    pub class: usize,
    pub value: Rational,
    pub passed: bool,
    /// A trap vertex the player does not win from.
    pub losing: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub bellman: Result<(), BellmanViolation>,
    pub structure: Option<String>,
    pub lower_bound: Vec<ClassCheck>,
    pub upper_bound: Vec<ClassCheck>,
    pub accepted: bool,
    pub synthesized: Option<Synthesized>,
}

impl VerificationReport {
    pub fn failing_condition(&self) -> Option<Condition> {
        if self.bellman.is_err() {
            Some(Condition::Bellman)
        } else if self.structure.is_some() {
            Some(Condition::Structure)
        } else if self.lower_bound.iter().any(|c| !c.passed) {
            Some(Condition::LowerBound)
        } else if self.upper_bound.iter().any(|c| !c.passed) {
            Some(Condition::UpperBound)
        } else {
            None
        }
    }

    pub fn render(&self, game: &StochasticGame) -> String {
        let mut out = String::new();
        match &self.bellman {
            Ok(()) => out.push_str("bellman pass\n"),
            Err(b) => out.push_str(&format!(
                "bellman fail at {}: expected {} found {}\n",
                game.id(b.vertex),
                b.expected,
                b.actual
            )),
        }
        if let Some(s) = &self.structure {
            out.push_str(&format!("structure fail: {s}\n"));
        }
        for (name, checks) in [("lower-bound", &self.lower_bound), ("upper-bound", &self.upper_bound)] {
            for c in checks {
                match c.losing {
                    None => out.push_str(&format!("{name} class {} pass\n", c.value)),
                    Some(v) => out.push_str(&format!("{name} class {} fail at {}\n", c.value, game.id(v))),
                }
            }
        }
        out.push_str(if self.accepted { "verdict accepted\n" } else { "verdict rejected\n" });
        out
    }
}

/// The value each vertex's equation asks for, given its successors' values.
fn bellman_rhs(game: &StochasticGame, values: &[Rational], v: usize) -> Rational {
    let succ = game.edges(v).iter();
    match game.owner(v) {
        Owner::Max => succ.map(|e| &values[e.dst]).max().unwrap().clone(),
        Owner::Min => succ.map(|e| &values[e.dst]).min().unwrap().clone(),
        Owner::Random => succ.fold(Rational::zero(), |acc, e| acc + e.prob.as_ref().unwrap() * &values[e.dst]),
    }
}

pub fn check_bellman(game: &StochasticGame, values: &[Rational]) -> Result<(), BellmanViolation> {
    for v in game.vertices() {
        let expected = bellman_rhs(game, values, v);
        if expected != values[v] {
            return Err(BellmanViolation {
                vertex: v,
                expected,
                actual: values[v].clone(),
            });
        }
    }
    Ok(())
}

pub(crate) fn checks_from(decomp: &Decomposition, outcomes: &[Option<TrapOutcome>]) -> Vec<ClassCheck> {
    decomp
        .classes
        .iter()
        .zip(outcomes)
        .enumerate()
        .map(|(i, (c, o))| {
            let losing = o.as_ref().and_then(|o| {
                o.sub
                    .game
                    .vertices()
                    .find(|u| !o.result.winning.contains(u))
                    .map(|u| o.to_game[u])
            });
            ClassCheck {
                class: i,
                value: c.value.clone(),
                passed: losing.is_none(),
                losing,
            }
        })
        .collect()
}

/// Max must win `value > λ - g` on each of its traps, Min `value < λ + g`.
pub fn check_condition(
    game: &StochasticGame,
    decomp: &Decomposition,
    player: Player,
    objective: Objective,
    granularity: &Rational,
    oracle: &dyn BwmpOracle,
) -> Result<Vec<ClassCheck>, VerifyError> {
    let outcomes = solve_traps(game, decomp, player, objective, granularity, oracle)?;
    Ok(checks_from(decomp, &outcomes))
}

pub fn verify(
    game: &StochasticGame,
    values: &[Rational],
    objective: Objective,
    bound: &BigInt,
    oracle: &dyn BwmpOracle,
) -> Result<VerificationReport, VerifyError> {
    if values.len() != game.len() {
        return Err(VerifyError::Length {
            expected: game.len(),
            got: values.len(),
        });
    }
    for v in game.vertices() {
        if values[v].denom() > bound {
            return Err(VerifyError::DenominatorOverflow {
                vertex: game.id(v).to_string(),
                denominator: values[v].denom().clone(),
                bound: bound.clone(),
            });
        }
    }
    let mut report = VerificationReport {
        bellman: check_bellman(game, values),
        structure: None,
        lower_bound: Vec::new(),
        upper_bound: Vec::new(),
        accepted: false,
        synthesized: None,
    };
    if report.bellman.is_err() {
        return Ok(report);
    }
    let decomp = match decompose(game, values) {
        Ok(d) => d,
        Err(VerifyError::Structure { value, message }) => {
            report.structure = Some(format!("class {value}: {message}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    debug_assert!(decomp.boundary_straddles(game));
    let d = Rational::from_integer(bound.clone());
    let g = Rational::one() / (&d * &d);
    let max = solve_traps(game, &decomp, Player::Max, objective, &g, oracle)?;
    let min = solve_traps(game, &decomp, Player::Min, objective, &g, oracle)?;
    report.lower_bound = checks_from(&decomp, &max);
    report.upper_bound = checks_from(&decomp, &min);
    report.accepted = report.failing_condition().is_none();
    if report.accepted {
        report.synthesized = Some(Synthesized {
            max: compose(game, &decomp, Player::Max, &max),
            min: compose(game, &decomp, Player::Min, &min),
        });
    }
    Ok(report)
}
