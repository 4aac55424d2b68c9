use std::fmt::Write;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use wmp_game::{parse_game, parse_rational, serialize_game, Lasso, Player, StochasticGame, StrategyMachine, VertexSet};
use wmp_qualitative::{
    almost_sure_buchi, almost_sure_bwmp, almost_sure_cobuchi, almost_sure_fwmp, almost_sure_reach, almost_sure_safety,
    ExhaustiveBwmpOracle,
};
use wmp_solver::{compute_bounds, monte_carlo_value, solve as run_solve, ssg_to_fwmp, SolveError, SolveParams};
use wmp_verifier::{parse_certificate, verify as run_verify, VerifyError};
use wmp_window::{bwmp_value_lasso, fwmp_value_lasso, Objective};

use crate::{dot, ObjectiveArg, ObjectiveFlags, PlayerArg};

pub enum Outcome {
    Done(String),
    Rejected(String),
    Failed(String),
    BadInput(String),
}

type Step<T> = Result<T, Outcome>;

fn bad(message: impl ToString) -> Outcome {
    Outcome::BadInput(message.to_string())
}

fn read(path: &Path) -> Step<String> {
    fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Step<StochasticGame> {
    parse_game(&read(path)?).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn window_objective(flags: &ObjectiveFlags) -> Step<Objective> {
    match (flags.objective, flags.window) {
        (ObjectiveArg::Fwmp, None) => Err(bad("--window is required for fwmp")),
        (ObjectiveArg::Fwmp, Some(l)) => Objective::fwmp(l).map_err(bad),
        (ObjectiveArg::Bwmp, None) => Ok(Objective::Bwmp),
        (ObjectiveArg::Bwmp, Some(_)) => Err(bad("--window only applies to fwmp")),
        (o, _) => Err(bad(format!("objective {o:?} has no window value; use fwmp or bwmp").to_lowercase())),
    }
}

fn parse_bound(text: Option<&str>) -> Step<Option<BigInt>> {
    text.map(|t| match t.parse::<BigInt>() {
        Ok(d) if d >= BigInt::from(1) => Ok(d),
        _ => Err(bad(format!("bound `{t}` is not a positive integer"))),
    })
    .transpose()
}

fn vertex(game: &StochasticGame, id: &str) -> Step<usize> {
    game.index_of(id).ok_or_else(|| bad(format!("unknown vertex `{id}`")))
}

fn vertex_list(game: &StochasticGame, text: &str) -> Step<VertexSet> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|id| vertex(game, id)).collect()
}

fn ids(game: &StochasticGame, set: &VertexSet) -> String {
    set.iter().map(|&v| game.id(v)).collect::<Vec<_>>().join(" ")
}

pub fn validate(path: &Path) -> Outcome {
    match load(path) {
        Ok(g) => Outcome::Done(format!("ok {} vertices {} edges {}\n", g.name(), g.len(), g.edge_count())),
        Err(e) => e,
    }
}

pub fn verify(game: &Path, certificate: &Path, flags: &ObjectiveFlags, bound: Option<&str>) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = load(game)?;
        let objective = window_objective(flags)?;
        let values = parse_certificate(&g, &read(certificate)?).map_err(|e| bad(format!("{}: {e}", certificate.display())))?;
        let d = parse_bound(bound)?.unwrap_or_else(|| compute_bounds(&g, objective).global_bound);
        let oracle = ExhaustiveBwmpOracle::default();
        match run_verify(&g, &values, objective, &d, &oracle) {
            Ok(report) if report.accepted => Ok(Outcome::Done(report.render(&g))),
            Ok(report) => Ok(Outcome::Rejected(report.render(&g))),
            Err(e @ (VerifyError::DenominatorOverflow { .. } | VerifyError::Structure { .. })) => {
                Ok(Outcome::Rejected(format!("{e}\nverdict rejected\n")))
            }
            Err(e @ VerifyError::Length { .. }) => Err(bad(e)),
            Err(e) => Err(Outcome::Failed(e.to_string())),
        }
    };
    run().unwrap_or_else(|e| e)
}

pub fn solve(game: &Path, flags: &ObjectiveFlags, bound: Option<&str>, output: Option<&Path>) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = load(game)?;
        let objective = window_objective(flags)?;
        let params = SolveParams {
            bound: parse_bound(bound)?,
            ..SolveParams::default()
        };
        let report = match run_solve(&g, objective, &params) {
            Ok(r) => r,
            Err(SolveError::NoCandidate(why)) => return Ok(Outcome::Rejected(format!("no verified vector: {why}\n"))),
            Err(e) => return Err(Outcome::Failed(e.to_string())),
        };
        let text = report.render(&g);
        match output {
            Some(path) => {
                fs::write(path, &text).map_err(|e| Outcome::Failed(format!("{}: {e}", path.display())))?;
                Ok(Outcome::Done(format!("# written to {}\n", path.display())))
            }
            None => Ok(Outcome::Done(text)),
        }
    };
    run().unwrap_or_else(|e| e)
}

pub fn almost_sure(
    game: &Path,
    flags: &ObjectiveFlags,
    player: PlayerArg,
    threshold: Option<&str>,
    strict: bool,
    target: Option<&str>,
) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = load(game)?;
        let player = match player {
            PlayerArg::Max => Player::Max,
            PlayerArg::Min => Player::Min,
        };
        let result = match flags.objective {
            ObjectiveArg::Fwmp | ObjectiveArg::Bwmp => {
                if target.is_some() {
                    return Err(bad("--target does not apply to window objectives"));
                }
                let t = threshold.ok_or_else(|| bad("--threshold is required for window objectives"))?;
                let t = parse_rational(t).ok_or_else(|| bad(format!("threshold `{t}` is not a rational")))?;
                match window_objective(flags)? {
                    Objective::Fwmp(l) => almost_sure_fwmp(&g, player, l, &t, strict),
                    Objective::Bwmp => almost_sure_bwmp(&g, player, &t, strict, &ExhaustiveBwmpOracle::default())
                        .map_err(|e| Outcome::Failed(e.to_string()))?,
                }
            }
            other => {
                if threshold.is_some() || flags.window.is_some() {
                    return Err(bad("--threshold and --window only apply to window objectives"));
                }
                let set = vertex_list(&g, target.ok_or_else(|| bad("--target is required"))?)?;
                match other {
                    ObjectiveArg::Reach => almost_sure_reach(&g, player, &set),
                    ObjectiveArg::Safety => almost_sure_safety(&g, player, &set),
                    ObjectiveArg::Buchi => almost_sure_buchi(&g, player, &set),
                    _ => almost_sure_cobuchi(&g, player, &set),
                }
            }
        };
        let mut out = format!("winning {}\n", ids(&g, &result.winning));
        match &result.strategy {
            Some(m) => out.push_str(&m.serialize(&g)),
            None => out.push_str("# no finite-memory strategy reported\n"),
        }
        Ok(Outcome::Done(out))
    };
    run().unwrap_or_else(|e| e)
}

pub fn eval_lasso(game: &Path, lasso: &str, flags: &ObjectiveFlags) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = load(game)?;
        let objective = window_objective(flags)?;
        let lasso = Lasso::parse(&g, lasso).map_err(bad)?;
        let value = match objective {
            Objective::Fwmp(l) => fwmp_value_lasso(&g, &lasso, l),
            Objective::Bwmp => bwmp_value_lasso(&g, &lasso),
        };
        Ok(Outcome::Done(format!("{value}\n")))
    };
    run().unwrap_or_else(|e| e)
}

pub fn simulate(
    game: &Path,
    profile: &Path,
    flags: &ObjectiveFlags,
    episodes: usize,
    horizon: Option<usize>,
    seed: u64,
    start: Option<&str>,
) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = load(game)?;
        let objective = window_objective(flags)?;
        let machines = wmp_game::strategy::parse_strategies(&g, &read(profile)?)
            .map_err(|e| bad(format!("{}: {e}", profile.display())))?;
        let pick = |p: Player| -> Step<StrategyMachine> {
            let mut found = machines.iter().filter(|m| m.player() == p);
            match (found.next(), found.next()) {
                (Some(m), None) => Ok(m.clone()),
                (None, _) if g.owned_by(p.owner()).next().is_none() => Ok(StrategyMachine::first_successor(&g, p)),
                (None, _) => Err(bad(format!("profile has no {p} strategy"))),
                _ => Err(bad(format!("profile has several {p} strategies"))),
            }
        };
        let (max, min) = (pick(Player::Max)?, pick(Player::Min)?);
        if episodes == 0 {
            return Err(bad("--episodes must be positive"));
        }
        let starts: Vec<usize> = match start {
            Some(id) => vec![vertex(&g, id)?],
            None => g.vertices().collect(),
        };
        let mut out = String::new();
        for v in starts {
            let est = monte_carlo_value(&g, &max, &min, v, objective, episodes, horizon, seed);
            writeln!(out, "estimate {} {:.6} +- {:.6}", g.id(v), est.mean, est.radius).unwrap();
        }
        Ok(Outcome::Done(out))
    };
    run().unwrap_or_else(|e| e)
}

pub fn export_dot(game: &Path, classes: Option<&Path>) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = load(game)?;
        let values = match classes {
            Some(path) => Some(parse_certificate(&g, &read(path)?).map_err(|e| bad(format!("{}: {e}", path.display())))?),
            None => None,
        };
        Ok(Outcome::Done(dot::render(&g, values.as_deref())))
    };
    run().unwrap_or_else(|e| e)
}

pub fn gen_ssg(game: &Path, target: &str, output: Option<&Path>) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = load(game)?;
        let t = vertex(&g, target)?;
        let fwmp = ssg_to_fwmp(&g, t).map_err(bad)?;
        let text = serialize_game(&fwmp);
        match output {
            Some(path) => {
                fs::write(path, &text).map_err(|e| Outcome::Failed(format!("{}: {e}", path.display())))?;
                Ok(Outcome::Done(String::new()))
            }
            None => Ok(Outcome::Done(text)),
        }
    };
    run().unwrap_or_else(|e| e)
}
