use crate::error::GameError;
use crate::game::StochasticGame;
use crate::rational::Rational;

/// An ultimately periodic play `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Lasso {
    pub fn new(game: &StochasticGame, stem: Vec<usize>, cycle: Vec<usize>) -> Result<Self, GameError> {
        let l = Lasso { stem, cycle };
        l.validate(game)?;
        Ok(l)
    }

    pub fn validate(&self, game: &StochasticGame) -> Result<(), GameError> {
        if self.cycle.is_empty() {
            return Err(GameError::NotAPath("lasso with an empty cycle".into()));
        }
        let mut seq: Vec<usize> = self.stem.iter().chain(&self.cycle).copied().collect();
        seq.push(self.cycle[0]);
        if let Some(&v) = seq.iter().find(|&&v| v >= game.len()) {
            return Err(GameError::NotAPath(format!("vertex index {v}")));
        }
        match seq.windows(2).find(|w| !game.has_edge(w[0], w[1])) {
            Some(w) => Err(GameError::NotAPath(format!("{} -> {}", game.id(w[0]), game.id(w[1])))),
            None => Ok(()),
        }
    }

    /// Parses `stem;cycle`, each a comma-separated list of vertex ids.
    pub fn parse(game: &StochasticGame, text: &str) -> Result<Self, GameError> {
        let (stem, cycle) = text
            .split_once(';')
            .ok_or_else(|| GameError::NotAPath(format!("`{text}` lacks the `;` separating stem and cycle")))?;
        let ids = |part: &str| -> Result<Vec<usize>, GameError> {
            part.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|id| game.index_of(id).ok_or_else(|| GameError::NotAPath(format!("unknown vertex `{id}`"))))
                .collect()
        };
        Lasso::new(game, ids(stem)?, ids(cycle)?)
    }

    /// Payoffs of the cycle edges, starting at `cycle[0]` and wrapping around.
    pub fn cycle_payoffs(&self, game: &StochasticGame) -> Vec<Rational> {
        let k = self.cycle.len();
        (0..k)
            .map(|i| game.payoff(self.cycle[i], self.cycle[(i + 1) % k]).unwrap().clone())
            .collect()
    }

    /// The play's first `n` vertices.
    pub fn unroll(&self, n: usize) -> Vec<usize> {
        self.stem
            .iter()
            .chain(self.cycle.iter().cycle())
            .take(n)
            .copied()
            .collect()
    }
}
