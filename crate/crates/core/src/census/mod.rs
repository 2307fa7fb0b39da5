//! Nim-value distributions over biconnected graphs, and comparison against
//! the reference tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::engine::{NimValue, Solver};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::par::{self, Parallelism};
use crate::theory::GraphClass;

pub mod enumerate;
pub mod reference;

pub use enumerate::{
    enumerate_all, enumerate_biconnected, enumerate_cubic_triangle_free, enumerate_girth5_biconnected, BUILTIN_MAX_N,
};
pub use reference::ReferenceTable;

/// Count of graphs per `(n, m, value)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Distribution {
    entries: BTreeMap<(usize, usize, u16), u64>,
}

impl Distribution {
    pub fn new() -> Distribution {
        Distribution::default()
    }

    pub fn add(&mut self, n: usize, m: usize, value: u16, count: u64) {
        if count > 0 {
            *self.entries.entry((n, m, value)).or_default() += count;
        }
    }

    pub fn record(&mut self, g: &Graph, value: NimValue) {
        self.add(g.n(), g.m(), value.0, 1);
    }

    pub fn get(&self, n: usize, m: usize, value: u16) -> u64 {
        self.entries.get(&(n, m, value)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// `((n, m, value), count)` in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, u16), u64)> + '_ {
        self.entries.iter().map(|(&k, &c)| (k, c))
    }

    pub fn merge(&mut self, other: &Distribution) {
        for (k, c) in other.iter() {
            self.add(k.0, k.1, k.2, c);
        }
    }

    /// Number of graphs per `(n, m)`.
    pub fn totals(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for ((n, m, _), c) in self.iter() {
            *out.entry((n, m)).or_default() += c;
        }
        out
    }

    pub fn max_value_per_n(&self) -> BTreeMap<usize, u16> {
        let mut out: BTreeMap<usize, u16> = BTreeMap::new();
        for ((n, _, v), _) in self.iter() {
            let e = out.entry(n).or_default();
            *e = (*e).max(v);
        }
        out
    }

    pub fn vertex_counts(&self) -> BTreeSet<usize> {
        self.entries.keys().map(|k| k.0).collect()
    }

    pub fn restrict(&self, scope: &Scope) -> Distribution {
        let entries = self.entries.iter().filter(|(k, _)| scope.contains(k.0, k.1)).map(|(&k, &c)| (k, c)).collect();
        Distribution { entries }
    }

    /// `n m value count` rows, then `#`-prefixed per-`(n, m)` totals and
    /// per-`n` maxima.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ((n, m, v), c) in self.iter() {
            writeln!(out, "{n} {m} {v} {c}").unwrap();
        }
        for ((n, m), c) in self.totals() {
            writeln!(out, "# total {n} {m} {c}").unwrap();
        }
        for (n, v) in self.max_value_per_n() {
            writeln!(out, "# max {n} {v}").unwrap();
        }
        out
    }
}

/// Which `(n, m)` pairs a comparison covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Vertices(BTreeSet<usize>),
    Pairs(BTreeSet<(usize, usize)>),
}

impl Scope {
    pub fn vertices<I: IntoIterator<Item = usize>>(ns: I) -> Scope {
        Scope::Vertices(ns.into_iter().collect())
    }

    pub fn contains(&self, n: usize, m: usize) -> bool {
        match self {
            Scope::All => true,
            Scope::Vertices(ns) => ns.contains(&n),
            Scope::Pairs(ps) => ps.contains(&(n, m)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiffLine {
    pub n: usize,
    pub m: usize,
    pub value: u16,
    pub expected: u64,
    pub actual: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffReport {
    pub lines: Vec<DiffLine>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// One `n m value expected actual` row per mismatch.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.lines {
            writeln!(out, "{} {} {} {} {}", d.n, d.m, d.value, d.expected, d.actual).unwrap();
        }
        out
    }
}

/// Every in-scope `(n, m, value)` whose count differs from the reference.
pub fn compare_reference(dist: &Distribution, reference: &ReferenceTable, scope: &Scope) -> DiffReport {
    let ours = dist.restrict(scope);
    let theirs = reference.distribution.restrict(scope);
    let keys: BTreeSet<_> = ours.entries.keys().chain(theirs.entries.keys()).copied().collect();
    let lines = keys
        .into_iter()
        .filter_map(|(n, m, value)| {
            let (expected, actual) = (theirs.get(n, m, value), ours.get(n, m, value));
            (expected != actual).then_some(DiffLine { n, m, value, expected, actual })
        })
        .collect();
    DiffReport { lines }
}

/// Tallies the values of `graphs`. The result does not depend on the order
/// of `graphs` or on the worker count.
pub fn distribution(
    graphs: &[Graph],
    parallelism: Parallelism,
    make_solver: &(dyn Fn() -> Solver + Sync),
) -> Distribution {
    let values = par::solve_all(graphs, parallelism, make_solver);
    let mut dist = Distribution::new();
    for (g, v) in graphs.iter().zip(values) {
        dist.record(g, v);
    }
    dist
}

/// Biconnected graphs for `n = 3..=n_max` from the built-in enumerator.
pub fn biconnected_up_to(n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        out.extend(enumerate_biconnected(n)?);
    }
    Ok(out)
}

/// Built-in biconnected members of `class` with `n <= n_max`.
pub fn class_source(class: GraphClass, n_max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    match class {
        GraphClass::Girth5Plus => {
            for n in 5..=n_max {
                out.extend(enumerate_girth5_biconnected(n)?);
            }
        }
        GraphClass::CubicTriangleFree => {
            for n in (6..=n_max).step_by(2) {
                out.extend(enumerate_cubic_triangle_free(n)?);
            }
        }
        GraphClass::CompleteBipartiteP3 => {
            for q in 1..=n_max.saturating_sub(3) {
                out.push(crate::canon::canonical_graph(&crate::graph::families::complete_bipartite(3, q)));
            }
        }
        GraphClass::PropertySOdd | GraphClass::All => {
            out = biconnected_up_to(n_max)?;
            out.retain(|g| class.contains(g));
        }
    }
    Ok(out)
}

/// Decodes graph6 lines, skipping blank lines and an optional `>>graph6<<`
/// header. Errors carry 1-based line numbers.
pub fn read_graph6<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(Error::Io(e))),
        };
        let text = line.strip_prefix(">>graph6<<").unwrap_or(&line).trim();
        if text.is_empty() {
            return None;
        }
        Some(graph6::decode(text).map_err(|e| Error::MalformedGraph6Line {
            line: i + 1,
            reason: match e {
                Error::MalformedGraph6(r) => r,
                other => other.to_string(),
            },
        }))
    })
}

pub fn ingest_graph6(path: &Path) -> Result<impl Iterator<Item = Result<Graph>>> {
    Ok(read_graph6(BufReader::new(File::open(path)?)))
}
