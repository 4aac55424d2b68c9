use num_bigint::BigInt;
use num_traits::One;
use wmp_game::{restrict, Player, Rational, StochasticGame, StrategyMachine, Subgame};
use wmp_qualitative::{almost_sure_bwmp, almost_sure_fwmp, BwmpOracle, QualitativeResult};
use wmp_window::Objective;

use crate::check::checks_from;
use crate::decompose::{Decomposition, ValueClass};
use crate::VerifyError;

#[derive(Debug, Clone)]
pub struct Synthesized {
    pub max: Option<StrategyMachine>,
    /// `None` when some trap strategy needs unbounded memory.
    pub min: Option<StrategyMachine>,
}

#[derive(Debug, Clone)]
pub(crate) struct TrapOutcome {
    pub sub: Subgame,
    /// Trap-subgame index to parent-game index.
    pub to_game: Vec<usize>,
    pub result: QualitativeResult,
}

/// Decides the player's threshold objective on a class trap, one granularity
/// step beyond the class value.
pub fn trap_strategy(
    trap: &StochasticGame,
    player: Player,
    objective: Objective,
    value: &Rational,
    granularity: &Rational,
    oracle: &dyn BwmpOracle,
) -> Result<QualitativeResult, VerifyError> {
    let threshold = match player {
        Player::Max => value - granularity,
        Player::Min => value + granularity,
    };
    Ok(match objective {
        Objective::Fwmp(l) => almost_sure_fwmp(trap, player, l, &threshold, true),
        Objective::Bwmp => almost_sure_bwmp(trap, player, &threshold, true, oracle)?,
    })
}

fn trap_subgame(class: &ValueClass, player: Player) -> Option<(Subgame, Vec<usize>)> {
    let trap = &class.split(player).trap;
    if trap.is_empty() {
        return None;
    }
    let r = &class.restriction;
    let sub = restrict(&r.game, &r.local_set(trap)).expect("traps induce subgames");
    let to_game = sub.to_parent.iter().map(|&u| r.to_parent[u]).collect();
    Some((sub, to_game))
}

pub(crate) fn solve_traps(
    _game: &StochasticGame,
    decomp: &Decomposition,
    player: Player,
    objective: Objective,
    granularity: &Rational,
    oracle: &dyn BwmpOracle,
) -> Result<Vec<Option<TrapOutcome>>, VerifyError> {
    decomp
        .classes
        .iter()
        .map(|c| {
            trap_subgame(c, player)
                .map(|(sub, to_game)| {
                    let result = trap_strategy(&sub.game, player, objective, &c.value, granularity, oracle)?;
                    Ok(TrapOutcome { sub, to_game, result })
                })
                .transpose()
        })
        .collect()
}

/// Plays the trap strategy of the current class while inside its trap and the
/// attractor witness elsewhere. Trap strategies restart whenever the play
/// re-enters a trap.
pub(crate) fn compose(
    game: &StochasticGame,
    decomp: &Decomposition,
    player: Player,
    outcomes: &[Option<TrapOutcome>],
) -> Option<StrategyMachine> {
    let mut offset = vec![0usize; outcomes.len()];
    let mut total = 1;
    let mut machines = Vec::with_capacity(outcomes.len());
    for (i, o) in outcomes.iter().enumerate() {
        let m = match o {
            Some(o) => Some(o.result.strategy.as_ref()?),
            None => None,
        };
        offset[i] = total;
        total += m.map_or(0, |m| m.num_states());
        machines.push(m);
    }
    let mut local = vec![usize::MAX; game.len()];
    for o in outcomes.iter().flatten() {
        for (u, &v) in o.to_game.iter().enumerate() {
            local[v] = u;
        }
    }
    let owned = |v: usize| game.owner(v) == player.owner();
    let table = (0..total)
        .map(|q| {
            game.vertices()
                .map(|v| {
                    let i = decomp.class_of[v];
                    let split = decomp.classes[i].split(player);
                    if split.trap.contains(&v) {
                        let m = machines[i].unwrap();
                        let o = outcomes[i].as_ref().unwrap();
                        let inside = q >= offset[i] && q < offset[i] + m.num_states();
                        let start = if inside { q - offset[i] } else { m.initial() };
                        let (next, out) = m.step(start, local[v]);
                        (offset[i] + next, out.map(|u| o.to_game[u]))
                    } else {
                        let out = owned(v).then(|| {
                            *split
                                .witness
                                .get(&v)
                                .expect("attractor vertices of the player carry a witness")
                        });
                        (0, out)
                    }
                })
                .collect()
        })
        .collect();
    Some(
        StrategyMachine::new(game, player, 0, table)
            .expect("composed choices follow game edges")
            .minimize(),
    )
}

/// Optimal strategies for a vector that passes both trap conditions.
pub fn synthesize_optimal(
    game: &StochasticGame,
    decomp: &Decomposition,
    objective: Objective,
    bound: &BigInt,
    oracle: &dyn BwmpOracle,
) -> Result<Synthesized, VerifyError> {
    let d = Rational::from_integer(bound.clone());
    let g = Rational::one() / (&d * &d);
    let max = solve_traps(game, decomp, Player::Max, objective, &g, oracle)?;
    let min = solve_traps(game, decomp, Player::Min, objective, &g, oracle)?;
    for (side, outcomes) in [("lower", &max), ("upper", &min)] {
        if let Some(c) = checks_from(decomp, outcomes).into_iter().find(|c| !c.passed) {
            return Err(VerifyError::Unverified(format!("{side}-bound fails in class {}", c.value)));
        }
    }
    Ok(Synthesized {
        max: compose(game, decomp, Player::Max, &max),
        min: compose(game, decomp, Player::Min, &min),
    })
}
