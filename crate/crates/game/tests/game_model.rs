use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wmp_game::random::{random_game, RandomGameParams};
use wmp_game::rational::{frac, int};
use wmp_game::strategy::parse_strategies;
use wmp_game::*;

const FIG1: &str = include_str!("../../../fixtures/fig1.game");
const FIG3: &str = include_str!("../../../fixtures/fig3.game");
const FIG4: &str = include_str!("../../../fixtures/fig4.game");

fn set(g: &StochasticGame, ids: &[&str]) -> VertexSet {
    ids.iter().map(|id| g.index_of(id).unwrap()).collect()
}

#[test]
fn fig1_parses_with_owners_and_probabilities() {
    let g = parse_game(FIG1).unwrap();
    assert_eq!(g.len(), 14);
    let v = |id: &str| g.index_of(id).unwrap();
    assert_eq!(g.owner(v("v1")), Owner::Min);
    assert_eq!(g.owner(v("v3")), Owner::Max);
    assert_eq!(g.owner(v("v2")), Owner::Random);
    assert_eq!(g.edge(v("v2"), v("v1")).unwrap().prob, Some(frac(1, 2)));
}

#[test]
fn restrict_examples() {
    let g = parse_game(FIG1).unwrap();
    let s = restrict(&g, &set(&g, &["v6"])).unwrap();
    assert_eq!(s.game.len(), 1);
    assert_eq!(s.game.edges(0).len(), 1);
    assert_eq!(s.game.payoff(0, 0), Some(&int(0)));

    let all = restrict(&g, &g.all_vertices()).unwrap();
    assert_eq!(serialize_game(&all.game), serialize_game(&g));

    let err = restrict(&g, &set(&g, &["v1", "v2"])).unwrap_err();
    assert!(err.to_string().contains("random vertex v2 loses successor v6"), "{err}");
}

#[test]
fn class_restriction_examples() {
    let g = parse_game(FIG1).unwrap();
    let s = class_restriction(&g, &set(&g, &["v2", "v3", "v4", "v5"])).unwrap();
    for id in ["v2", "v5"] {
        let v = s.game.index_of(id).unwrap();
        let e = s.game.edges(v);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].dst, v);
        assert_eq!(e[0].payoff, int(0));
        assert_eq!(e[0].prob, Some(int(1)));
    }
    let v3 = s.game.index_of("v3").unwrap();
    assert_eq!(s.game.edges(v3).len(), 3);

    let s = class_restriction(&g, &set(&g, &["v1"])).unwrap();
    assert_eq!(s.game.len(), 1);
    assert_eq!(s.game.payoff(0, 0), Some(&int(-2)));

    let whole = class_restriction(&g, &g.all_vertices()).unwrap();
    assert_eq!(whole.game.edge_count(), g.edge_count());

    // v13 keeps no successor inside {v12, v13}.
    assert!(class_restriction(&g, &set(&g, &["v12", "v13"])).is_err());
}

#[test]
fn fig4_memoryless_chain_cycles() {
    let g = parse_game(FIG4).unwrap();
    let a = StrategyMachine::memoryless(&g, Player::Max, |_| 1);
    let b = StrategyMachine::memoryless(&g, Player::Min, |_| 0);
    let c = induce_chain(&g, &a, &b, 0);
    assert_eq!(c.len(), 2);
    let pays: Vec<_> = c.steps.iter().map(|s| s[0].payoff.clone()).collect();
    assert_eq!(pays, vec![int(-1), int(1)]);
}

#[test]
fn fig3_chain_branches_at_random_vertex() {
    let g = parse_game(FIG3).unwrap();
    let a = StrategyMachine::first_successor(&g, Player::Max);
    let b = StrategyMachine::memoryless(&g, Player::Min, |_| 1);
    let c = induce_chain(&g, &a, &b, 0);
    let v2 = c.states.iter().position(|s| s.vertex == 1).unwrap();
    let probs: Vec<_> = c.steps[v2].iter().map(|s| s.prob.clone()).collect();
    assert_eq!(probs, vec![frac(1, 2), frac(1, 2)]);
}

#[test]
fn absorbing_start_gives_one_state() {
    let g = parse_game("game g\nvertex a max\nedge a a payoff 3\n").unwrap();
    let a = StrategyMachine::first_successor(&g, Player::Max);
    let b = StrategyMachine::first_successor(&g, Player::Min);
    assert_eq!(induce_chain(&g, &a, &b, 0).len(), 1);
}

#[test]
fn lasso_parsing() {
    let g = parse_game(FIG4).unwrap();
    let l = Lasso::parse(&g, "v1;v2,v1").unwrap();
    assert_eq!(l.stem, vec![0]);
    assert_eq!(l.cycle, vec![1, 0]);
    assert_eq!(l.cycle_payoffs(&g), vec![int(1), int(-1)]);
    assert!(Lasso::parse(&g, ";v1").is_err());
    assert!(Lasso::parse(&g, "v1").is_err());
    let l = Lasso::parse(&g, ";v2").unwrap();
    assert!(l.stem.is_empty());
}

fn seeded(seed: u64, max_vertices: usize) -> StochasticGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = RandomGameParams {
        max_vertices,
        max_out_degree: 3,
        ..Default::default()
    };
    random_game(&mut rng, &p)
}

proptest! {
    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let g = seeded(seed, 6);
        let text = serialize_game(&g);
        let back = parse_game(&text).unwrap();
        prop_assert_eq!(&back, &g.clone().with_name("random"));
        prop_assert_eq!(serialize_game(&back), text);
    }

    #[test]
    fn restricting_to_everything_is_identity(seed in any::<u64>()) {
        let g = seeded(seed, 6);
        let s = restrict(&g, &g.all_vertices()).unwrap();
        prop_assert_eq!(serialize_game(&s.game), serialize_game(&g));
    }

    #[test]
    fn chain_size_is_bounded(seed in any::<u64>(), states in 1usize..4) {
        let g = seeded(seed, 5);
        // A machine that cycles through `states` states regardless of input.
        let mk = |player: Player| {
            let table = (0..states)
                .map(|q| g.vertices().map(|v| ((q + 1) % states, (g.owner(v) == player.owner()).then(|| g.edges(v)[q % g.edges(v).len()].dst))).collect())
                .collect();
            StrategyMachine::new(&g, player, 0, table).unwrap()
        };
        let a = mk(Player::Max);
        let b = StrategyMachine::first_successor(&g, Player::Min);
        for v in g.vertices() {
            let c = induce_chain(&g, &a, &b, v);
            prop_assert!(c.len() <= g.len() * a.num_states() * b.num_states());
            for steps in &c.steps {
                let total: Rational = steps.iter().map(|s| s.prob.clone()).sum();
                prop_assert_eq!(total, int(1));
            }
        }
    }

    #[test]
    fn strategies_round_trip(seed in any::<u64>()) {
        let g = seeded(seed, 5);
        let a = StrategyMachine::memoryless(&g, Player::Max, |v| g.edges(v).last().unwrap().dst);
        let text = a.serialize(&g);
        prop_assert_eq!(&parse_strategies(&g, &text).unwrap()[0], &a);
    }
}
