mod common;

use common::{random_graph, random_perm};
use nimors::census::enumerate::enumerate_all;
use nimors::engine::{nim_sum, nim_value_bruteforce, NimValue, SolverConfig};
use nimors::graph::families;
use nimors::theory::edge_orbit_bound;
use nimors::{Graph, Outcome, Solver};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn small_graphs() -> Vec<Graph> {
    (1..=5).flat_map(|n| enumerate_all(n).unwrap()).collect()
}

#[test]
fn thirty_four_graphs_up_to_five() {
    assert_eq!(small_graphs().len(), 1 + 2 + 4 + 11 + 34);
    assert_eq!(enumerate_all(5).unwrap().len(), 34);
}

#[test]
fn matches_bruteforce_small() {
    for config in [SolverConfig::default(), SolverConfig::recursion_only()] {
        let mut solver = Solver::new(config);
        for g in &small_graphs() {
            assert_eq!(solver.nim_value(g), nim_value_bruteforce(g), "{:?}", g.edge_list());
        }
    }
}

#[test]
fn matches_bruteforce_random_six() {
    let mut rng = StdRng::seed_from_u64(6);
    let mut solver = Solver::default();
    for _ in 0..100 {
        let g = random_graph(&mut rng, 6, 0.5);
        assert_eq!(solver.nim_value(&g), nim_value_bruteforce(&g), "{:?}", g.edge_list());
    }
}

#[test]
fn block_splitting_is_transparent() {
    let mut split = Solver::new(SolverConfig::recursion_only());
    let mut whole = Solver::new(SolverConfig { split_blocks: false, ..SolverConfig::recursion_only() });
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..150 {
        let g = random_graph(&mut rng, 7, 0.35);
        let v = split.nim_value(&g);
        assert_eq!(v, whole.nim_value(&g), "{:?}", g.edge_list());
        let blocks = nim_sum(g.blocks().iter().map(|b| whole.nim_value(b)));
        assert_eq!(v, blocks);
    }
}

#[test]
fn value_bounded_by_options() {
    let mut solver = Solver::default();
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 7, 0.5);
        let v = solver.nim_value(&g);
        assert!(v.get() as usize <= 2 * g.m());
        if g.is_connected() && g.n() <= 10 {
            assert!(v <= edge_orbit_bound(&g).unwrap());
        }
    }
}

#[test]
fn labels_do_not_matter() {
    let mut a = Solver::default();
    let mut b = Solver::new(SolverConfig::recursion_only().with_slots(1 << 16));
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 7, 0.5);
        let h = g.permute(&random_perm(&mut rng, g.n()));
        assert_eq!(a.nim_value(&g), b.nim_value(&h));
    }
}

#[test]
fn analysis_agrees_with_value() {
    let mut solver = Solver::default();
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 6, 0.5);
        let analysis = solver.analyze(&g);
        assert_eq!(analysis.value, solver.nim_value(&g));
        assert_eq!(analysis.per_move.len(), 2 * g.m());
    }
}

#[test]
fn best_move_wins_from_n_positions() {
    let mut solver = Solver::default();
    for g in small_graphs().iter().filter(|g| g.m() > 0) {
        let mv = solver.best_move(g).unwrap();
        let after = g.apply(mv).unwrap();
        match solver.classify(g) {
            Outcome::NPosition => assert_eq!(solver.nim_value(&after), NimValue::ZERO),
            Outcome::PPosition => assert_ne!(solver.nim_value(&after), NimValue::ZERO),
        }
    }
    assert!(solver.best_move(&Graph::empty(3)).is_err());
}

#[test]
fn named_values() {
    let mut solver = Solver::new(SolverConfig::recursion_only());
    let cases = [
        (families::petersen(), 1),
        (families::triangular_prism(), 0),
        (families::cycle(3), 2),
        (families::cycle(4), 0),
        (families::fused_cycle(3, 4), 4),
        (families::triangle_pendant(), 3),
    ];
    for (g, want) in cases {
        assert_eq!(solver.nim_value(&g), NimValue(want), "{:?}", g.edge_list());
    }
}
