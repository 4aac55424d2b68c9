use wmp_game::{parse_rational, GameError, Rational, StochasticGame};

/// Reads `value <vertex> <rational>` lines. Blank lines, `#` comments and the
/// `provenance`, `strategy` and `t` lines of a solve report are skipped;
/// every vertex needs exactly one value.
pub fn parse_certificate(game: &StochasticGame, text: &str) -> Result<Vec<Rational>, GameError> {
    let mut values: Vec<Option<Rational>> = vec![None; game.len()];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let col = |w: usize| line.find(words[w]).unwrap_or(0) + 1;
        let err = |w: usize, message: String| GameError::Syntax {
            line: i + 1,
            column: col(w),
            message,
        };
        if matches!(words[0], "provenance" | "strategy" | "t") {
            continue;
        }
        if words[0] != "value" {
            return Err(err(0, format!("expected `value`, found `{}`", words[0])));
        }
        if words.len() != 3 {
            return Err(err(0, "expected `value <vertex> <rational>`".into()));
        }
        let v = game
            .index_of(words[1])
            .ok_or_else(|| err(1, format!("unknown vertex {}", words[1])))?;
        let x = parse_rational(words[2]).ok_or_else(|| err(2, format!("bad rational `{}`", words[2])))?;
        if values[v].replace(x).is_some() {
            return Err(err(1, format!("duplicate value for {}", words[1])));
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| GameError::Selection(format!("vertex {} has no value", game.id(v)))))
        .collect()
}

pub fn serialize_certificate(game: &StochasticGame, values: &[Rational]) -> String {
    game.vertices()
        .map(|v| format!("value {} {}\n", game.id(v), values[v]))
        .collect()
}
