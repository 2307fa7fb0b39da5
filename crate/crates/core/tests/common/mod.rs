#![allow(dead_code)]

use nimors::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// G(n, p) on exactly `n` vertices.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Labelled graph number `code` on `n` vertices, one bit per vertex pair.
pub fn labelled(n: usize, code: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs.enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, e)| e);
    Graph::from_edges(n, edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Least row-major upper-triangle string over all vertex orders.
pub fn bruteforce_canon(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    permutations(&mut perm, 0, &mut |order| {
        // order[i] = original vertex placed at position i
        let s: Vec<bool> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.has_edge(order[i], order[j])).collect();
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    });
    best.unwrap_or_default()
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}
