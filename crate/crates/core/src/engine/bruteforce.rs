use std::collections::HashMap;

use crate::engine::{mex, NimValue};
use crate::graph::Graph;

/// Plain mex recursion over labelled positions. No canonical forms, no block
/// decomposition, no closed forms: an oracle for the real solver.
pub fn nim_value_bruteforce(g: &Graph) -> NimValue {
    let mut memo = HashMap::new();
    solve(g, &mut memo)
}

fn solve(g: &Graph, memo: &mut HashMap<Graph, NimValue>) -> NimValue {
    if let Some(&v) = memo.get(g) {
        return v;
    }
    let values: Vec<NimValue> = g.options().iter().map(|(_, opt)| solve(opt, memo)).collect();
    let v = mex(values);
    memo.insert(g.clone(), v);
    v
}
