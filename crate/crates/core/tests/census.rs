mod common;

use std::io::Cursor;

use nimors::census::{
    biconnected_up_to, compare_reference, distribution, read_graph6, Distribution, ReferenceTable, Scope,
};
use nimors::graph6;
use nimors::par::Parallelism;
use nimors::Solver;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn census(n_max: usize, parallelism: Parallelism) -> Distribution {
    distribution(&biconnected_up_to(n_max).unwrap(), parallelism, &Solver::default)
}

#[test]
fn matches_reference_to_five() {
    let dist = census(5, Parallelism::Sequential);
    let report = compare_reference(&dist, &ReferenceTable::bundled(), &Scope::vertices(3..=5));
    assert!(report.is_empty(), "{}", report.to_text());
}

#[test]
fn totals_match_reference() {
    // graph counts per (n, m) are independent of any value disagreement
    let dist = census(7, Parallelism::Parallel { jobs: 0 });
    let reference = ReferenceTable::bundled().distribution.restrict(&Scope::vertices(3..=7));
    assert_eq!(dist.totals(), reference.totals());
}

#[test]
fn independent_of_order_and_workers() {
    let mut graphs = biconnected_up_to(6).unwrap();
    let base = distribution(&graphs, Parallelism::Sequential, &Solver::default);
    let mut rng = StdRng::seed_from_u64(17);
    for jobs in [1, 2, 3, 8] {
        graphs.shuffle(&mut rng);
        let dist = distribution(&graphs, Parallelism::from_jobs(jobs), &Solver::default);
        assert_eq!(dist, base);
        assert_eq!(dist.to_text(), base.to_text());
    }
}

#[test]
fn graph6_stream_equals_builtin() {
    let graphs = biconnected_up_to(6).unwrap();
    let text: String = graphs.iter().map(|g| graph6::encode(g) + "\n").collect();
    let read: Vec<_> = read_graph6(Cursor::new(format!(">>graph6<<{text}"))).collect::<Result<_, _>>().unwrap();
    assert_eq!(read, graphs);
}

#[test]
fn corrupted_reference_is_reported() {
    let mut reference = ReferenceTable::bundled();
    reference.distribution.add(5, 6, 4, 1);
    let dist = census(5, Parallelism::Sequential);
    let report = compare_reference(&dist, &reference, &Scope::vertices([5]));
    assert_eq!(report.lines.len(), 1);
    assert_eq!(report.to_text(), "5 6 4 2 1\n");
}
