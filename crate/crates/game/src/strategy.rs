use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write;

use crate::error::GameError;
use crate::game::{Player, StochasticGame};
use crate::parse::{syntax, tokenize};

/// A deterministic Mealy machine: reading vertex `v` in state `q` moves to
/// `table[q][v].0` and outputs `table[q][v].1`, where `None` is the skip symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyMachine {
    player: Player,
    initial: usize,
    table: Vec<Vec<(usize, Option<usize>)>>,
}

impl StrategyMachine {
    pub fn new(
        game: &StochasticGame,
        player: Player,
        initial: usize,
        table: Vec<Vec<(usize, Option<usize>)>>,
    ) -> Result<Self, GameError> {
        let m = StrategyMachine {
            player,
            initial,
            table,
        };
        m.validate(game)?;
        Ok(m)
    }

    /// One state; `choice(v)` is called for each vertex owned by `player`.
    pub fn memoryless(game: &StochasticGame, player: Player, mut choice: impl FnMut(usize) -> usize) -> Self {
        let row = game
            .vertices()
            .map(|v| (0, (game.owner(v) == player.owner()).then(|| choice(v))))
            .collect();
        StrategyMachine {
            player,
            initial: 0,
            table: vec![row],
        }
    }

    /// Memoryless machine picking the smallest successor everywhere.
    pub fn first_successor(game: &StochasticGame, player: Player) -> Self {
        Self::memoryless(game, player, |v| game.edges(v)[0].dst)
    }

    pub fn validate(&self, game: &StochasticGame) -> Result<(), GameError> {
        let bad = |msg: String| Err(GameError::Strategy(msg));
        if self.initial >= self.table.len() {
            return bad(format!("initial state {} out of range", self.initial));
        }
        for (q, row) in self.table.iter().enumerate() {
            if row.len() != game.len() {
                return bad(format!("state {q} covers {} of {} vertices", row.len(), game.len()));
            }
            for (v, &(next, out)) in row.iter().enumerate() {
                if next >= self.table.len() {
                    return bad(format!("state {q} on {} moves to unknown state {next}", game.id(v)));
                }
                let owned = game.owner(v) == self.player.owner();
                match out {
                    None if owned => {
                        return bad(format!("state {q} skips at owned vertex {}", game.id(v)))
                    }
                    Some(w) if !owned => {
                        return bad(format!(
                            "state {q} outputs {} at non-owned vertex {}",
                            game.id(w),
                            game.id(v)
                        ))
                    }
                    Some(w) if !game.has_edge(v, w) => {
                        return bad(format!("state {q} outputs non-successor {} at {}", game.id(w), game.id(v)))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.table.len()
    }

    pub fn step(&self, state: usize, v: usize) -> (usize, Option<usize>) {
        self.table[state][v]
    }

    /// The output after reading `prefix`, which must be a path of `game`.
    pub fn run(&self, game: &StochasticGame, prefix: &[usize]) -> Result<Option<usize>, GameError> {
        let Some((&last, init)) = prefix.split_last() else {
            return Err(GameError::NotAPath("the empty sequence".into()));
        };
        if let Some(w) = prefix.windows(2).find(|w| !game.has_edge(w[0], w[1])) {
            return Err(GameError::NotAPath(format!("{} -> {}", game.id(w[0]), game.id(w[1]))));
        }
        let q = init.iter().fold(self.initial, |q, &v| self.table[q][v].0);
        Ok(self.table[q][last].1)
    }

    /// The output of each owned vertex in the initial state, if the machine
    /// behaves the same in every reachable state.
    pub fn as_memoryless(&self) -> Option<Vec<Option<usize>>> {
        let m = self.minimize();
        (m.num_states() == 1).then(|| m.table[0].iter().map(|&(_, o)| o).collect())
    }

    /// Equivalent machine with unreachable states dropped and equivalent
    /// states merged. States are numbered in breadth-first order.
    pub fn minimize(&self) -> StrategyMachine {
        let n_v = self.table[0].len();
        let mut order = vec![self.initial];
        let mut seen = HashMap::from([(self.initial, 0usize)]);
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for v in 0..n_v {
                let nq = self.table[q][v].0;
                if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(nq) {
                    slot.insert(order.len());
                    order.push(nq);
                    queue.push_back(nq);
                }
            }
        }
        let mut block: Vec<usize> = {
            let mut ids = BTreeMap::new();
            order
                .iter()
                .map(|&q| {
                    let sig: Vec<Option<usize>> = self.table[q].iter().map(|&(_, o)| o).collect();
                    let n = ids.len();
                    *ids.entry(sig).or_insert(n)
                })
                .collect()
        };
        loop {
            let mut ids = BTreeMap::new();
            let next: Vec<usize> = order
                .iter()
                .enumerate()
                .map(|(i, &q)| {
                    let sig: Vec<usize> = self.table[q].iter().map(|&(nq, _)| block[seen[&nq]]).collect();
                    let n = ids.len();
                    *ids.entry((block[i], sig)).or_insert(n)
                })
                .collect();
            let stable = ids.len() == block.iter().collect::<std::collections::BTreeSet<_>>().len();
            block = next;
            if stable {
                break;
            }
        }
        let mut renumber = HashMap::new();
        let mut reps = Vec::new();
        for (i, &b) in block.iter().enumerate() {
            renumber.entry(b).or_insert_with(|| {
                reps.push(order[i]);
                reps.len() - 1
            });
        }
        let table = reps
            .iter()
            .map(|&q| {
                self.table[q]
                    .iter()
                    .map(|&(nq, o)| (renumber[&block[seen[&nq]]], o))
                    .collect()
            })
            .collect();
        StrategyMachine {
            player: self.player,
            initial: 0,
            table,
        }
    }

    pub fn serialize(&self, game: &StochasticGame) -> String {
        let mut out = String::new();
        writeln!(out, "strategy {} states {} init {}", self.player, self.num_states(), self.initial).unwrap();
        for (q, row) in self.table.iter().enumerate() {
            for (v, &(nq, o)) in row.iter().enumerate() {
                let o = o.map_or("-", |w| game.id(w));
                writeln!(out, "t {q} {} -> {nq} out {o}", game.id(v)).unwrap();
            }
        }
        out
    }
}

/// Parses one or more `strategy` blocks. Omitted transitions at vertices the
/// player does not own keep the state and skip. The `value` and `provenance`
/// lines of a solve report are skipped.
pub fn parse_strategies(game: &StochasticGame, text: &str) -> Result<Vec<StrategyMachine>, GameError> {
    struct Partial {
        player: Player,
        initial: usize,
        table: Vec<Vec<Option<(usize, Option<usize>)>>>,
        line: usize,
    }
    let mut done = Vec::new();
    let mut cur: Option<Partial> = None;
    let finish = |p: Partial| -> Result<StrategyMachine, GameError> {
        let mut table = Vec::new();
        for (q, row) in p.table.into_iter().enumerate() {
            let mut r = Vec::new();
            for (v, cell) in row.into_iter().enumerate() {
                match cell {
                    Some(c) => r.push(c),
                    None if game.owner(v) != p.player.owner() => r.push((q, None)),
                    None => {
                        return Err(GameError::Strategy(format!(
                            "strategy at line {}: state {q} has no transition on owned vertex {}",
                            p.line,
                            game.id(v)
                        )))
                    }
                }
            }
            table.push(r);
        }
        StrategyMachine::new(game, p.player, p.initial, table)
    };
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        let number = |k: usize| -> Result<usize, GameError> {
            let t = toks.get(k).ok_or_else(|| syntax(ln, raw.len() + 1, "unexpected end of line"))?;
            t.text
                .parse()
                .map_err(|_| syntax(ln, t.column, format!("expected a number, found `{}`", t.text)))
        };
        match head.text {
            "value" | "provenance" => continue,
            "strategy" => {
                if toks.len() != 6 || toks[2].text != "states" || toks[4].text != "init" {
                    return Err(syntax(ln, head.column, "expected `strategy <player> states <n> init <s0>`"));
                }
                let player = Player::from_keyword(toks[1].text)
                    .ok_or_else(|| syntax(ln, toks[1].column, format!("unknown player `{}`", toks[1].text)))?;
                let n = number(3)?;
                let initial = number(5)?;
                if n == 0 || initial >= n {
                    return Err(syntax(ln, toks[5].column, "initial state out of range"));
                }
                if let Some(p) = cur.take() {
                    done.push(finish(p)?);
                }
                cur = Some(Partial {
                    player,
                    initial,
                    table: vec![vec![None; game.len()]; n],
                    line: ln,
                });
            }
            "t" => {
                let p = cur
                    .as_mut()
                    .ok_or_else(|| syntax(ln, head.column, "transition before `strategy` header"))?;
                if toks.len() != 7 || toks[3].text != "->" || toks[5].text != "out" {
                    return Err(syntax(ln, head.column, "expected `t <state> <vertex> -> <state> out <vertex|->`"));
                }
                let q = number(1)?;
                let nq = number(4)?;
                if q >= p.table.len() || nq >= p.table.len() {
                    return Err(syntax(ln, toks[1].column, "state out of range"));
                }
                let v = game
                    .index_of(toks[2].text)
                    .ok_or_else(|| syntax(ln, toks[2].column, format!("unknown vertex `{}`", toks[2].text)))?;
                let out = match toks[6].text {
                    "-" => None,
                    w => Some(
                        game.index_of(w)
                            .ok_or_else(|| syntax(ln, toks[6].column, format!("unknown vertex `{w}`")))?,
                    ),
                };
                p.table[q][v] = Some((nq, out));
            }
            other => return Err(syntax(ln, head.column, format!("unknown directive `{other}`"))),
        }
    }
    if let Some(p) = cur.take() {
        done.push(finish(p)?);
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_game;

    fn ring() -> StochasticGame {
        parse_game(
            "game ring\nvertex a max\nvertex b min\n\
             edge a a payoff 0\nedge a b payoff 1\nedge b a payoff 0\n",
        )
        .unwrap()
    }

    #[test]
    fn memoryless_output_and_skip() {
        let g = ring();
        let m = StrategyMachine::memoryless(&g, Player::Max, |_| 1);
        assert_eq!(m.run(&g, &[0]).unwrap(), Some(1));
        assert_eq!(m.run(&g, &[0, 1]).unwrap(), None);
        assert!(m.run(&g, &[1, 1]).is_err());
    }

    #[test]
    fn counter_machine_depends_on_length() {
        let g = ring();
        // Count visits to a modulo 3; leave on the third.
        let table = (0..3)
            .map(|q| {
                vec![
                    ((q + 1) % 3, Some(if q == 2 { 1 } else { 0 })),
                    (q, None),
                ]
            })
            .collect();
        let m = StrategyMachine::new(&g, Player::Max, 0, table).unwrap();
        assert_eq!(m.run(&g, &[0]).unwrap(), Some(0));
        assert_eq!(m.run(&g, &[0, 0]).unwrap(), Some(0));
        assert_eq!(m.run(&g, &[0, 0, 0]).unwrap(), Some(1));
        assert_eq!(m.run(&g, &[0, 0, 0, 1, 0]).unwrap(), Some(0));
        assert_eq!(m.minimize().num_states(), 3);
    }

    #[test]
    fn minimize_merges_equal_states() {
        let g = ring();
        let table = vec![vec![(1, Some(1)), (0, None)], vec![(0, Some(1)), (1, None)]];
        let m = StrategyMachine::new(&g, Player::Max, 0, table).unwrap();
        assert_eq!(m.minimize().num_states(), 1);
        assert_eq!(m.as_memoryless(), Some(vec![Some(1), None]));
    }

    #[test]
    fn rejects_bad_outputs() {
        let g = ring();
        let table = vec![vec![(0, None), (0, None)]];
        assert!(StrategyMachine::new(&g, Player::Max, 0, table).is_err());
        let table = vec![vec![(0, Some(0)), (0, Some(0))]];
        assert!(StrategyMachine::new(&g, Player::Max, 0, table).is_err());
    }

    #[test]
    fn serialization_round_trip() {
        let g = ring();
        let table = vec![vec![(1, Some(1)), (0, None)], vec![(0, Some(0)), (1, None)]];
        let m = StrategyMachine::new(&g, Player::Max, 1, table).unwrap();
        let text = m.serialize(&g) + &StrategyMachine::first_successor(&g, Player::Min).serialize(&g);
        let back = parse_strategies(&g, &text).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0], m);
        assert_eq!(back[1].player(), Player::Min);
    }

    #[test]
    fn omitted_skip_transitions_default() {
        let g = ring();
        let text = "strategy max states 1 init 0\nt 0 a -> 0 out b\n";
        let m = &parse_strategies(&g, text).unwrap()[0];
        assert_eq!(m.step(0, 1), (0, None));
        let text = "strategy max states 1 init 0\nt 0 b -> 0 out -\n";
        assert!(parse_strategies(&g, text).is_err());
    }
}
