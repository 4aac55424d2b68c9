use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wmp_game::random::{random_game, RandomGameParams};
use wmp_game::rational::{frac, int};
use wmp_game::*;
use wmp_graph::*;

const FIG1: &str = include_str!("../../../fixtures/fig1.game");
const FIG3: &str = include_str!("../../../fixtures/fig3.game");
const FIG4: &str = include_str!("../../../fixtures/fig4.game");

fn set(g: &StochasticGame, ids: &[&str]) -> VertexSet {
    ids.iter().map(|id| g.index_of(id).unwrap()).collect()
}

fn in_class(g: &StochasticGame, class: &[&str], player: Player, target: &[&str]) -> (Subgame, AttractorResult) {
    let s = class_restriction(g, &set(g, class)).unwrap();
    let t = set(&s.game, target);
    let r = positive_attractor(&s.game, player, &t, &s.game.all_vertices()).unwrap();
    (s, r)
}

#[test]
fn fig1_class3_max_attractor() {
    let g = parse_game(FIG1).unwrap();
    let (s, r) = in_class(&g, &["v6", "v7", "v8", "v9"], Player::Max, &["v8"]);
    assert_eq!(r.attractor, set(&s.game, &["v7", "v8", "v9"]));
    assert_eq!(r.trap, set(&s.game, &["v6"]));
    assert_eq!(r.witness.get(&s.game.index_of("v7").unwrap()), Some(&s.game.index_of("v9").unwrap()));
    assert!(is_trap(&s.game, Player::Max, &r.trap, &s.game.all_vertices()));
}

#[test]
fn fig1_class2_attractor_is_whole_class() {
    let g = parse_game(FIG1).unwrap();
    let (s, r) = in_class(&g, &["v2", "v3", "v4", "v5"], Player::Max, &["v2", "v5"]);
    assert_eq!(r.attractor, s.game.all_vertices());
    assert!(r.trap.is_empty());
}

#[test]
fn attractor_of_everything() {
    let g = parse_game(FIG1).unwrap();
    let all = g.all_vertices();
    let r = positive_attractor(&g, Player::Min, &all, &all).unwrap();
    assert_eq!(r.attractor, all);
    assert!(r.trap.is_empty());
}

#[test]
fn attractor_preconditions() {
    let g = parse_game(FIG1).unwrap();
    let within = set(&g, &["v6"]);
    assert_eq!(
        positive_attractor(&g, Player::Max, &set(&g, &["v1"]), &within),
        Err(GraphError::TargetOutside)
    );
    let bad = set(&g, &["v1", "v2"]);
    assert!(matches!(
        positive_attractor(&g, Player::Max, &set(&g, &["v1"]), &bad),
        Err(GraphError::NotSubgame(_))
    ));
}

#[test]
fn mec_examples() {
    let g = parse_game(FIG3).unwrap();
    let d = mec_decompose(&g);
    assert_eq!(d.mecs, vec![g.all_vertices()]);

    let cycle = parse_game("game c\nvertex a max\nvertex b rand\nvertex c min\nedge a b payoff 0\nedge b c payoff 0 prob 1\nedge c a payoff 0\n").unwrap();
    assert_eq!(mec_decompose(&cycle).mecs, vec![cycle.all_vertices()]);

    let two = parse_game("game t\nvertex a max\nvertex b max\nedge a a payoff 0\nedge a b payoff 0\nedge b b payoff 0\n").unwrap();
    let d = mec_decompose(&two);
    assert_eq!(d.mecs.len(), 2);
    assert_eq!(d.membership, vec![Some(0), Some(1)]);

    // A random vertex that can leave is not in the component of its successor.
    let leak = parse_game("game l\nvertex a max\nvertex r rand\nvertex z max\nedge a r payoff 0\nedge r a payoff 0 prob 1/2\nedge r z payoff 0 prob 1/2\nedge z z payoff 0\n").unwrap();
    let d = mec_decompose(&leak);
    assert_eq!(d.mecs, vec![set(&leak, &["z"])]);
}

#[test]
fn mean_cycle_examples() {
    let g = parse_game(FIG4).unwrap();
    let (m, c) = min_mean_cycle(&g, &set(&g, &["v1", "v2"])).unwrap();
    assert_eq!(m, int(0));
    assert_eq!(c, vec![0, 1]);

    let one = parse_game("game o\nvertex a max\nedge a a payoff -7/3\n").unwrap();
    assert_eq!(min_mean_cycle(&one, &one.all_vertices()).unwrap(), (frac(-7, 3), vec![0]));

    let f1 = parse_game(FIG1).unwrap();
    let (m, c) = min_mean_cycle(&f1, &set(&f1, &["v10", "v11"])).unwrap();
    assert_eq!(m, int(1));
    assert_eq!(c.len(), 2);

    let dag = parse_game("game d\nvertex a max\nvertex b max\nedge a b payoff 0\nedge b b payoff 0\n").unwrap();
    assert_eq!(min_mean_cycle(&dag, &set(&dag, &["a"])), Err(GraphError::Acyclic));
}

#[test]
fn bscc_examples() {
    let g = parse_game(FIG4).unwrap();
    let a = StrategyMachine::memoryless(&g, Player::Max, |_| 1);
    let b = StrategyMachine::memoryless(&g, Player::Min, |_| 0);
    let c = induce_chain(&g, &a, &b, 0);
    assert_eq!(bsccs(&c), vec![[0usize, 1].into_iter().collect::<VertexSet>()]);

    let split = parse_game("game s\nvertex r rand\nvertex a max\nvertex b max\nedge r a payoff 0 prob 1/2\nedge r b payoff 0 prob 1/2\nedge a a payoff 0\nedge b b payoff 0\n").unwrap();
    let a = StrategyMachine::first_successor(&split, Player::Max);
    let b = StrategyMachine::first_successor(&split, Player::Min);
    let c = induce_chain(&split, &a, &b, 0);
    let bs = bsccs(&c);
    assert_eq!(bs.len(), 2);
    assert!(bs.iter().all(|s| s.len() == 1));
}

fn seeded(seed: u64, max_vertices: usize, max_out_degree: usize) -> StochasticGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = RandomGameParams {
        max_vertices,
        max_out_degree,
        ..Default::default()
    };
    random_game(&mut rng, &p)
}

fn subset(g: &StochasticGame, bits: u32) -> VertexSet {
    g.vertices().filter(|v| bits >> v & 1 == 1).collect()
}

fn all_memoryless(g: &StochasticGame, player: Player) -> Vec<StrategyMachine> {
    let owned: Vec<usize> = g.owned_by(player.owner()).collect();
    let mut out = vec![];
    let total: usize = owned.iter().map(|&v| g.edges(v).len()).product();
    for mut code in 0..total {
        let mut pick = vec![0; g.len()];
        for &v in &owned {
            let d = g.edges(v).len();
            pick[v] = g.edges(v)[code % d].dst;
            code /= d;
        }
        out.push(StrategyMachine::memoryless(g, player, |v| pick[v]));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn attractor_is_monotone_idempotent_and_leaves_a_trap(seed in any::<u64>(), bits in any::<u32>(), more in any::<u32>(), max in any::<bool>()) {
        let g = seeded(seed, 7, 3);
        let player = if max { Player::Max } else { Player::Min };
        let all = g.all_vertices();
        let t1 = subset(&g, bits);
        let t2: VertexSet = t1.union(&subset(&g, more)).copied().collect();
        let r1 = positive_attractor(&g, player, &t1, &all).unwrap();
        let r2 = positive_attractor(&g, player, &t2, &all).unwrap();
        prop_assert!(r1.attractor.is_subset(&r2.attractor));
        prop_assert!(t1.is_subset(&r1.attractor));
        let again = positive_attractor(&g, player, &r1.attractor, &all).unwrap();
        prop_assert_eq!(&again.attractor, &r1.attractor);
        prop_assert!(is_trap(&g, player, &r1.trap, &all));
        for (&v, &w) in &r1.witness {
            prop_assert!(g.has_edge(v, w) && r1.attractor.contains(&w) && !t1.contains(&v));
        }
    }

    #[test]
    fn karp_matches_cycle_enumeration(seed in any::<u64>()) {
        let g = seeded(seed, 8, 3);
        let edges: Vec<_> = g.vertices().flat_map(|u| g.edges(u).iter().map(move |e| (u, e.dst, e.payoff.clone()))).collect();
        let cycles = simple_cycles(g.len(), &edges);
        let best = cycles.iter().map(|(c, w)| w / Rational::from_integer((c.len() as i64).into())).min().unwrap();
        let (m, c) = min_mean_cycle(&g, &g.all_vertices()).unwrap();
        prop_assert_eq!(&m, &best);
        let total: Rational = (0..c.len()).map(|i| g.payoff(c[i], c[(i + 1) % c.len()]).unwrap().clone()).sum();
        prop_assert_eq!(total / Rational::from_integer((c.len() as i64).into()), m);
        let distinct: VertexSet = c.iter().copied().collect();
        prop_assert_eq!(distinct.len(), c.len());
    }

    #[test]
    fn mecs_are_maximal_end_components_containing_every_bscc(seed in any::<u64>()) {
        let g = seeded(seed, 5, 2);
        let d = mec_decompose(&g);
        for m in &d.mecs {
            prop_assert!(end_components(&g, m));
        }
        // Maximality: no end component strictly contains a MEC or sits outside all of them.
        for bits in 1u32..(1 << g.len()) {
            let s = subset(&g, bits);
            if end_components(&g, &s) {
                prop_assert!(d.mecs.iter().any(|m| s.is_subset(m)));
            }
        }
        for a in all_memoryless(&g, Player::Max) {
            for b in all_memoryless(&g, Player::Min) {
                for v in g.vertices() {
                    let c = induce_chain(&g, &a, &b, v);
                    for bs in bsccs(&c) {
                        let verts: VertexSet = bs.iter().map(|&s| c.states[s].vertex).collect();
                        prop_assert!(d.mecs.iter().any(|m| verts.is_subset(m)));
                    }
                }
            }
        }
    }
}
