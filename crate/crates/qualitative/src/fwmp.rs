use wmp_game::{Player, Rational, StochasticGame, StrategyMachine};
use wmp_window::{build_history_product, ProductGame};

use crate::core::{buchi_core, cobuchi_core};
use crate::{Mode, QualitativeResult};

/// Almost-sure window objective solved on the history product.
#[derive(Debug, Clone)]
pub struct FwmpProductResult {
    pub product: ProductGame,
    pub product_winning: Vec<bool>,
    /// Product successor chosen at each product vertex owned by the player.
    pub product_choice: Vec<Option<usize>>,
    pub result: QualitativeResult,
}

/// Max asks for a play value above `threshold` (at least, when not strict);
/// Min asks for a value below it (at most, when not strict).
///
/// The play value is the liminf of the product payoffs, which take finitely
/// many values, so Max's side is coBüchi on the product vertices whose payoff
/// passes and Min's side is Büchi on those whose payoff fails.
pub fn almost_sure_fwmp(
    game: &StochasticGame,
    player: Player,
    window: usize,
    threshold: &Rational,
    strict: bool,
) -> QualitativeResult {
    almost_sure_fwmp_product(game, player, window, threshold, strict).result
}

pub fn almost_sure_fwmp_product(
    game: &StochasticGame,
    player: Player,
    window: usize,
    threshold: &Rational,
    strict: bool,
) -> FwmpProductResult {
    let product = build_history_product(game, window, &game.all_vertices());
    let pg = &product.game;
    let good: Vec<bool> = product
        .out_payoff
        .iter()
        .map(|p| match (player, strict) {
            (Player::Max, true) => p > threshold,
            (Player::Max, false) => p >= threshold,
            (Player::Min, true) => p < threshold,
            (Player::Min, false) => p <= threshold,
        })
        .collect();
    let (winning, choice) = match player {
        Player::Max => cobuchi_core(pg, player, &good),
        Player::Min => {
            let core = buchi_core(pg, player, &good, &vec![true; pg.len()]);
            (core.winning, core.player_choice)
        }
    };
    let base_winning = game
        .vertices()
        .filter(|&v| winning[product.padded(v).unwrap()])
        .collect();
    let strategy = history_machine(&product, game, player, &choice).minimize();
    FwmpProductResult {
        result: QualitativeResult {
            winning: base_winning,
            strategy: Some(strategy),
            mode: Mode::AlmostSure,
        },
        product_winning: winning,
        product_choice: choice,
        product,
    }
}

/// Mealy machine playing a positional product strategy on the base game.
///
/// State 0 has read nothing; state `1 + p` means the recent history is the
/// label of product vertex `p`. Inputs that are not a continuation restart
/// from the padded label of the input vertex. Product vertices without a
/// choice fall back to their first successor.
pub fn history_machine(
    product: &ProductGame,
    game: &StochasticGame,
    player: Player,
    choice: &[Option<usize>],
) -> StrategyMachine {
    let out = |p: usize| -> Option<usize> {
        let v = product.base_vertex(p);
        (game.owner(v) == player.owner()).then(|| {
            let s = choice[p].unwrap_or_else(|| product.game.edges(p)[0].dst);
            product.base_vertex(s)
        })
    };
    let fresh = |v: usize| product.padded(v).expect("product built from every vertex");
    let mut table = Vec::with_capacity(product.len() + 1);
    table.push(
        game.vertices()
            .map(|v| {
                let p = fresh(v);
                (1 + p, out(p))
            })
            .collect(),
    );
    for p in 0..product.len() {
        table.push(
            game.vertices()
                .map(|v| {
                    let q = product.shift(p, v).unwrap_or_else(|| fresh(v));
                    (1 + q, out(q))
                })
                .collect(),
        );
    }
    StrategyMachine::new(game, player, 0, table).expect("product choices follow base edges")
}
