//! Closed-form values, bounds, and the parity heuristic scanner.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::canon::{are_isomorphic, canonical_form};
use crate::engine::{NimValue, Outcome, Solver};
use crate::error::{Error, Result};
use crate::graph::families;
use crate::graph::{Bits, Girth, Graph};
use crate::graph6;
use crate::par::{self, Parallelism};

pub fn acyclic_value(m: usize) -> NimValue {
    NimValue((m % 2) as u16)
}

pub fn cycle_value(k: usize) -> Result<NimValue> {
    match k {
        0..=2 => Err(Error::InvalidLength(k)),
        3 => Ok(NimValue(2)),
        _ => Ok(NimValue((k % 2) as u16)),
    }
}

/// Two cycles `C_p`, `C_q` glued along one edge, normalised to `p <= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FusedCycleParams {
    p: usize,
    q: usize,
}

impl FusedCycleParams {
    pub fn new(p: usize, q: usize) -> Result<FusedCycleParams> {
        let (p, q) = (p.min(q), p.max(q));
        if p < 3 {
            return Err(Error::InvalidParams(format!("fused cycle needs p, q >= 3, got ({p}, {q})")));
        }
        if p + q - 2 > crate::graph::MAX_VERTICES {
            return Err(Error::TooLarge { n: p + q - 2, max: crate::graph::MAX_VERTICES });
        }
        Ok(FusedCycleParams { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }
}

pub fn fused_cycle_value(params: FusedCycleParams) -> NimValue {
    let FusedCycleParams { p, q } = params;
    let v = match (p, q) {
        (3, 3) => 1,
        (3, 4) => 4,
        (3, q) if q % 2 == 1 => 2,
        (3, _) => 3,
        _ => (p + q + 1) % 2,
    };
    NimValue(v as u16)
}

/// `FC_{p,q}` with the shared edge at `(0, 1)`.
pub fn build_fused_cycle(params: FusedCycleParams) -> Graph {
    families::fused_cycle(params.p, params.q)
}

/// Recognises `FC_{p,q}` up to isomorphism: two adjacent degree-3 vertices
/// joined by two further paths, everything else of degree 2.
pub fn detect_fused_cycle(g: &Graph) -> Option<FusedCycleParams> {
    let n = g.n();
    if n < 4 || g.m() != n + 1 {
        return None;
    }
    let mut hubs = Vec::with_capacity(2);
    for v in 0..n {
        match g.degree(v) {
            2 => {}
            3 if hubs.len() < 2 => hubs.push(v),
            _ => return None,
        }
    }
    let [a, b] = hubs[..] else { return None };
    if !g.has_edge(a, b) {
        return None;
    }
    let mut lengths = Vec::with_capacity(2);
    for start in Bits(g.neighbors(a) & !(1 << b)) {
        let (mut prev, mut cur, mut len) = (a, start, 1);
        while cur != b {
            if cur == a {
                return None;
            }
            let next = (g.neighbors(cur) & !(1 << prev)).trailing_zeros() as usize;
            prev = cur;
            cur = next;
            len += 1;
        }
        lengths.push(len);
    }
    let (l1, l2) = (lengths[0], lengths[1]);
    if l1 + l2 != n {
        return None;
    }
    FusedCycleParams::new(l1 + 1, l2 + 1).ok()
}

/// Winner on a property-S graph: P-position exactly when `m` is even.
///
/// This is the orientation the strategy argument (second player mirrors with
/// deletions) and every computed value support, e.g. `C6` and `K_{2,q}`
/// have value 0.
pub fn property_s_winner(g: &Graph) -> Result<Outcome> {
    if !g.has_property_s() {
        return Err(Error::PropertySViolated);
    }
    Ok(if g.m().is_multiple_of(2) { Outcome::PPosition } else { Outcome::NPosition })
}

/// Value from the closed forms, if one applies: forests, even-edge
/// property-S graphs, single cycles and fused cycles (isolated vertices
/// ignored).
pub fn closed_form_value(g: &Graph) -> Option<NimValue> {
    let m = g.m();
    if m == 0 {
        return Some(NimValue::ZERO);
    }
    if g.is_acyclic() {
        return Some(acyclic_value(m));
    }
    if m.is_multiple_of(2) && g.has_property_s() {
        return Some(NimValue::ZERO);
    }
    let trimmed;
    let h = if g.isolated_count() > 0 {
        trimmed = g.without_isolated();
        &trimmed
    } else {
        g
    };
    if h.is_cycle() {
        return cycle_value(h.n()).ok();
    }
    detect_fused_cycle(h).map(fused_cycle_value)
}

/// The parity heuristic's prediction, `m mod 2`.
pub fn parity_heuristic_value(g: &Graph) -> NimValue {
    acyclic_value(g.m())
}

pub fn ph_holds(g: &Graph, solver: &mut Solver) -> bool {
    solver.nim_value(g) == parity_heuristic_value(g)
}

/// Graph classes the scanner can restrict to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Girth5Plus,
    CubicTriangleFree,
    PropertySOdd,
    /// `K_{3,q}` for some `q >= 1`.
    CompleteBipartiteP3,
    All,
}

impl GraphClass {
    pub const ALL: [GraphClass; 5] = [
        GraphClass::Girth5Plus,
        GraphClass::CubicTriangleFree,
        GraphClass::PropertySOdd,
        GraphClass::CompleteBipartiteP3,
        GraphClass::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Girth5Plus => "girth5",
            GraphClass::CubicTriangleFree => "cubic-trianglefree",
            GraphClass::PropertySOdd => "property-s-odd",
            GraphClass::CompleteBipartiteP3 => "k3q",
            GraphClass::All => "all",
        }
    }

    pub fn contains(self, g: &Graph) -> bool {
        match self {
            GraphClass::Girth5Plus => matches!(g.girth(), Girth::Finite(k) if k >= 5),
            GraphClass::CubicTriangleFree => g.n() > 0 && (0..g.n()).all(|v| g.degree(v) == 3) && g.is_triangle_free(),
            GraphClass::PropertySOdd => g.m() % 2 == 1 && g.has_property_s(),
            GraphClass::CompleteBipartiteP3 => {
                g.n() >= 4 && are_isomorphic(g, &families::complete_bipartite(3, g.n() - 3))
            }
            GraphClass::All => true,
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphClass> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown graph class {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub value: NimValue,
}

/// Outcome of checking the parity heuristic over one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PHReport {
    pub class_name: String,
    pub range: (usize, usize),
    pub scanned: usize,
    /// Sorted by canonical key.
    pub counterexamples: Vec<Counterexample>,
}

impl PHReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# parity heuristic scan").unwrap();
        writeln!(out, "class {}", self.class_name).unwrap();
        writeln!(out, "range {} {}", self.range.0, self.range.1).unwrap();
        writeln!(out, "scanned {}", self.scanned).unwrap();
        writeln!(out, "counterexamples {}", self.counterexamples.len()).unwrap();
        for c in &self.counterexamples {
            writeln!(out, "{} {} {} {}", c.graph6, c.n, c.m, c.value).unwrap();
        }
        out
    }
}

/// Checks the parity heuristic on every member of `class` with at most
/// `n_max` vertices drawn from `source`.
pub fn scan_class<I>(
    class: GraphClass,
    n_max: usize,
    source: I,
    parallelism: Parallelism,
    make_solver: &(dyn Fn() -> Solver + Sync),
) -> Result<PHReport>
where
    I: IntoIterator<Item = Result<Graph>>,
{
    let mut members = Vec::new();
    for g in source {
        let g = g?;
        if g.n() <= n_max && class.contains(&g) {
            members.push(g);
        }
    }
    let values = par::solve_all(&members, parallelism, make_solver);
    let n_min = members.iter().map(Graph::n).min().unwrap_or(0);
    let mut bad: Vec<_> = members
        .iter()
        .zip(&values)
        .filter(|(g, v)| **v != parity_heuristic_value(g))
        .map(|(g, &value)| {
            let c = Counterexample { graph6: graph6::encode(g), n: g.n(), m: g.m(), value };
            (canonical_form(g), c)
        })
        .collect();
    bad.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(PHReport {
        class_name: class.name().to_string(),
        range: (n_min, n_max),
        scanned: members.len(),
        counterexamples: bad.into_iter().map(|(_, c)| c).collect(),
    })
}

/// Largest vertex count for the brute-force automorphism search.
pub const ORBIT_BOUND_MAX_N: usize = 10;

/// All automorphisms, as vertex maps, found by backtracking over vertices
/// constrained to equal-degree images.
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > ORBIT_BOUND_MAX_N {
        return Err(Error::TooLarge { n, max: ORBIT_BOUND_MAX_N });
    }
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    extend_automorphism(g, 0, &mut image, 0, &mut out);
    Ok(out)
}

fn extend_automorphism(g: &Graph, v: usize, image: &mut [usize], used: u64, out: &mut Vec<Vec<usize>>) {
    let n = g.n();
    if v == n {
        out.push(image.to_vec());
        return;
    }
    for w in 0..n {
        if used & (1 << w) != 0 || g.degree(w) != g.degree(v) {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w));
        if consistent {
            image[v] = w;
            extend_automorphism(g, v + 1, image, used | (1 << w), out);
        }
    }
    image[v] = usize::MAX;
}

/// Twice the number of edge orbits under the automorphism group: an upper
/// bound on the Nim value.
pub fn edge_orbit_bound(g: &Graph) -> Result<NimValue> {
    let edges: Vec<_> = g.edges().collect();
    let index = |u: usize, v: usize| edges.binary_search(&crate::graph::Edge::new(u, v)).unwrap();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for aut in automorphisms(g)? {
        for (i, e) in edges.iter().enumerate() {
            let j = index(aut[e.u], aut[e.v]);
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let orbits = (0..edges.len()).filter(|&i| find(&mut parent, i) == i).count();
    Ok(NimValue((2 * orbits) as u16))
}

/// `G(K_n)` for `n = 1..=n_max`.
pub fn complete_graph_values(n_max: usize, solver: &mut Solver) -> Vec<(usize, NimValue)> {
    (1..=n_max).map(|n| (n, solver.nim_value(&families::complete(n)))).collect()
}

/// `G(K_{p,q})` for `1 <= p <= p_max`, `p <= q <= q_max`, `pq <= edge_budget`.
pub fn complete_bipartite_values(
    p_max: usize,
    q_max: usize,
    edge_budget: usize,
    solver: &mut Solver,
) -> Vec<(usize, usize, NimValue)> {
    let mut out = Vec::new();
    for p in 1..=p_max {
        for q in p..=q_max {
            if p * q <= edge_budget && p + q <= crate::graph::MAX_VERTICES {
                out.push((p, q, solver.nim_value(&families::complete_bipartite(p, q))));
            }
        }
    }
    out
}
