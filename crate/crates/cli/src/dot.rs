use std::collections::BTreeMap;
use std::fmt::Write;

use wmp_game::{Owner, Rational, StochasticGame};

fn shape(owner: Owner) -> &'static str {
    match owner {
        Owner::Max => "circle",
        Owner::Min => "box",
        Owner::Random => "diamond",
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph of the game. Payoffs are red edge labels and
/// probabilities blue ones. With `values`, each value class is a cluster.
pub fn render(game: &StochasticGame, values: Option<&[Rational]>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(game.name())).unwrap();
    out.push_str("  rankdir=LR;\n");
    let node = |out: &mut String, v: usize, indent: &str| {
        writeln!(out, "{indent}{} [shape={}];", quote(game.id(v)), shape(game.owner(v))).unwrap();
    };
    match values {
        Some(values) => {
            let mut classes: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
            for v in game.vertices() {
                classes.entry(&values[v]).or_default().push(v);
            }
            for (i, (value, members)) in classes.iter().enumerate() {
                writeln!(out, "  subgraph cluster_{i} {{").unwrap();
                writeln!(out, "    label={};", quote(&format!("value {value}"))).unwrap();
                for &v in members {
                    node(&mut out, v, "    ");
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for v in game.vertices() {
                node(&mut out, v, "  ");
            }
        }
    }
    for u in game.vertices() {
        for e in game.edges(u) {
            let mut label = format!("<font color=\"red\">{}</font>", e.payoff);
            if let Some(p) = &e.prob {
                write!(label, " <font color=\"blue\">{p}</font>").unwrap();
            }
            writeln!(out, "  {} -> {} [label=<{label}>];", quote(game.id(u)), quote(game.id(e.dst))).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
