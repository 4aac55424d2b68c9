use std::fmt::Write;

use crate::error::GameError;
use crate::game::{GameBuilder, Owner, StochasticGame};
use crate::rational::{parse_rational, Rational};

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Splits a line into tokens, dropping everything after `#`.
pub(crate) fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> GameError {
    GameError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub(crate) fn rational_token(line: usize, tok: Token<'_>) -> Result<Rational, GameError> {
    parse_rational(tok.text)
        .ok_or_else(|| syntax(line, tok.column, format!("malformed rational `{}`", tok.text)))
}

fn end_column(line: &str) -> usize {
    let line = line.split('#').next().unwrap_or("");
    line.trim_end().chars().count() + 1
}

struct EdgeLine<'a> {
    line: usize,
    src: Token<'a>,
    dst: Token<'a>,
    payoff: Rational,
    prob: Option<Rational>,
}

/// Parses the line-oriented game format and validates the result.
pub fn parse_game(text: &str) -> Result<StochasticGame, GameError> {
    let mut builder: Option<GameBuilder> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        match (head.text, builder.is_some()) {
            ("game", false) => {
                let name = raw[raw.find("game").unwrap_or(0) + 4..]
                    .split('#')
                    .next()
                    .unwrap_or("")
                    .trim();
                if name.is_empty() {
                    return Err(syntax(ln, end_column(raw), "expected a game name"));
                }
                builder = Some(GameBuilder::new(name));
            }
            (_, false) => return Err(syntax(ln, head.column, "expected `game <name>`")),
            ("game", true) => return Err(syntax(ln, head.column, "duplicate `game` line")),
            ("vertex", true) => {
                let b = builder.as_mut().unwrap();
                if toks.len() != 3 {
                    let col = toks.get(3).map_or(end_column(raw), |t| t.column);
                    return Err(syntax(ln, col, "expected `vertex <id> <max|min|rand>`"));
                }
                let owner = Owner::from_keyword(toks[2].text).ok_or_else(|| {
                    syntax(ln, toks[2].column, format!("unknown owner `{}`", toks[2].text))
                })?;
                if b.has_vertex(toks[1].text) {
                    return Err(syntax(
                        ln,
                        toks[1].column,
                        format!("vertex {} declared twice", toks[1].text),
                    ));
                }
                b.vertex(toks[1].text, owner);
            }
            ("edge", true) => {
                let shape_ok = (toks.len() == 5 || toks.len() == 7)
                    && toks[3].text == "payoff"
                    && (toks.len() == 5 || toks[5].text == "prob");
                if !shape_ok {
                    let col = toks
                        .iter()
                        .enumerate()
                        .find(|(k, t)| (*k == 3 && t.text != "payoff") || (*k == 5 && t.text != "prob") || *k >= 7)
                        .map_or(end_column(raw), |(_, t)| t.column);
                    return Err(syntax(
                        ln,
                        col,
                        "expected `edge <src> <dst> payoff <rational> [prob <rational>]`",
                    ));
                }
                let payoff = rational_token(ln, toks[4])?;
                let prob = match toks.get(6) {
                    Some(t) => Some(rational_token(ln, *t)?),
                    None => None,
                };
                edges.push(EdgeLine {
                    line: ln,
                    src: toks[1],
                    dst: toks[2],
                    payoff,
                    prob,
                });
            }
            (other, true) => {
                return Err(syntax(ln, head.column, format!("unknown directive `{other}`")))
            }
        }
    }
    let mut builder = builder.ok_or_else(|| syntax(1, 1, "expected `game <name>`"))?;
    for e in edges {
        let src = builder.index_of(e.src.text).ok_or_else(|| {
            syntax(e.line, e.src.column, format!("unknown vertex `{}`", e.src.text))
        })?;
        let dst = builder.index_of(e.dst.text).ok_or_else(|| {
            syntax(e.line, e.dst.column, format!("unknown vertex `{}`", e.dst.text))
        })?;
        builder.edge(src, dst, e.payoff, e.prob);
    }
    Ok(builder.build()?)
}

/// Canonical text form: vertices in index order, then edges by source and target.
pub fn serialize_game(game: &StochasticGame) -> String {
    let mut out = String::new();
    writeln!(out, "game {}", game.name()).unwrap();
    for v in game.vertices() {
        writeln!(out, "vertex {} {}", game.id(v), game.owner(v).keyword()).unwrap();
    }
    for u in game.vertices() {
        for e in game.edges(u) {
            write!(out, "edge {} {} payoff {}", game.id(u), game.id(e.dst), e.payoff).unwrap();
            if let Some(p) = &e.prob {
                write!(out, " prob {p}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}
