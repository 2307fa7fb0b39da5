mod common;

use std::collections::BTreeSet;

use common::{arb_graph, labelled, random_graph, random_perm};
use nimors::canon::{are_isomorphic, canonical_form, canonical_graph};
use nimors::graph::{Action, Edge, Girth, Move};
use nimors::{graph6, Graph};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn every_labelled(n: usize) -> impl Iterator<Item = Graph> {
    (0..1u64 << (n * n.saturating_sub(1) / 2)).map(move |c| labelled(n, c))
}

fn common_neighbours(g: &Graph, e: Edge) -> usize {
    (g.neighbors(e.u) & g.neighbors(e.v)).count_ones() as usize
}

#[test]
fn move_edge_counts() {
    for n in 2..=6 {
        for g in every_labelled(n) {
            for e in g.edge_list() {
                let e = Edge::new(e.0, e.1);
                let del = g.delete_edge(e).unwrap();
                assert_eq!((del.n(), del.m()), (g.n(), g.m() - 1));
                let con = g.contract_edge(e).unwrap();
                assert_eq!(con.n(), g.n() - 1);
                assert_eq!(con.m(), g.m() - 1 - common_neighbours(&g, e));
            }
        }
    }
}

fn girth_len(g: Girth) -> Option<usize> {
    match g {
        Girth::Finite(k) => Some(k),
        Girth::Infinite => None,
    }
}

#[test]
fn girth_under_moves() {
    for n in 3..=6 {
        for g in every_labelled(n) {
            let girth = girth_len(g.girth());
            for (mv, opt) in g.options() {
                let after = girth_len(opt.girth());
                match (mv.action, girth) {
                    // deleting never shortens the shortest cycle
                    (Action::Delete, Some(k)) => assert!(after.is_none_or(|a| a >= k)),
                    (Action::Delete, None) => assert!(after.is_none()),
                    // contracting never creates a cycle and never lengthens the shortest one,
                    // except when every triangle is destroyed at once
                    (Action::Contract, None) => assert!(after.is_none()),
                    (Action::Contract, Some(k)) => {
                        if let Some(a) = after {
                            assert!(a + 1 >= k, "{g:?} {mv:?}");
                            assert!(a <= k || k == 3, "{g:?} {mv:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn triangle_free_moves_remove_one_edge() {
    for n in 3..=6 {
        for g in every_labelled(n).filter(Graph::is_triangle_free) {
            assert!(g.options().iter().all(|(_, opt)| opt.m() + 1 == g.m()));
        }
    }
}

#[test]
fn property_s_excludes_triangles() {
    for n in 3..=7 {
        for g in every_labelled(n).filter(Graph::has_property_s) {
            assert_ne!(g.girth(), Girth::Finite(3), "{g:?}");
        }
    }
}

#[test]
fn options_are_two_per_edge() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 7, 0.5);
        let opts = g.options();
        assert_eq!(opts.len(), 2 * g.m());
        let moves: Vec<Move> = opts.iter().map(|(m, _)| *m).collect();
        assert!(moves.windows(2).all(|w| w[0] < w[1]));
        for (mv, opt) in &opts {
            assert_eq!(&g.apply(*mv).unwrap(), opt);
        }
    }
}

#[test]
fn biconnected_counts_by_labelled_sweep() {
    // independent of the vertex-extension enumerator: dedup all labelled graphs
    let expected = [(3, 1), (4, 3), (5, 10), (6, 56)];
    for (n, want) in expected {
        let keys: BTreeSet<_> = every_labelled(n).filter(Graph::is_biconnected).map(|g| canonical_form(&g)).collect();
        assert_eq!(keys.len(), want, "n = {n}");
    }
}

proptest! {
    #[test]
    fn blocks_partition_edges(g in arb_graph(9)) {
        let blocks = g.block_edges();
        let mut seen = BTreeSet::new();
        for b in &blocks {
            for e in b {
                prop_assert!(seen.insert(*e), "edge {} in two blocks", e);
            }
        }
        prop_assert_eq!(seen.len(), g.m());
        let total: usize = g.blocks().iter().map(Graph::m).sum();
        prop_assert_eq!(total, g.m());
        for b in g.blocks() {
            prop_assert!(b.m() == 1 || b.is_biconnected());
        }
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(12)) {
        let text = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&text).unwrap(), g.clone());
        prop_assert_eq!(graph6::encode(&graph6::decode(&text).unwrap()), text);
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(10), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let h = g.permute(&random_perm(&mut rng, g.n()));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(are_isomorphic(&g, &h));
        let c = canonical_graph(&g);
        prop_assert_eq!(canonical_form(&c), canonical_form(&g));
        prop_assert_eq!(canonical_form(&g).to_graph(), c);
    }
}

#[test]
fn graph6_random_thousand() {
    let mut rng = StdRng::seed_from_u64(11);
    for i in 0..1000 {
        let g = random_graph(&mut rng, i % 13, 0.5);
        assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }
}

#[test]
fn canonical_form_matches_bruteforce() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..300 {
        let n = 1 + (rand::Rng::random_range(&mut rng, 0..7usize));
        let a = random_graph(&mut rng, n, 0.5);
        let b = random_graph(&mut rng, n, 0.5);
        let same_key = canonical_form(&a) == canonical_form(&b);
        assert_eq!(same_key, common::bruteforce_canon(&a) == common::bruteforce_canon(&b));
    }
}
