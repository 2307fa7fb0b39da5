//! Simple undirected graphs stored as dense adjacency bit rows, together with
//! the two minor operations that make up a move in the game.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub mod families;

/// Largest vertex count a [`Graph`] can hold (graph6 short form limit).
pub const MAX_VERTICES: usize = 62;

type Rows = SmallVec<[u64; 16]>;

/// An undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge joining `a` and `b`, ordering the endpoints.
    ///
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "self-loop ({a}, {a})");
        Edge { u: a.min(b), v: a.max(b) }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// The two kinds of minor operation. `Delete` orders before `Contract`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Delete,
    Contract,
}

impl Action {
    pub fn as_str(self) -> &'static str {
        match self {
            Action::Delete => "delete",
            Action::Contract => "contract",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One ply of the game. Moves order by `(u, v, action)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub edge: Edge,
    pub action: Action,
}

impl Move {
    pub fn new(edge: Edge, action: Action) -> Move {
        Move { edge, action }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.action, self.edge)
    }
}

/// Length of the shortest cycle, or `Infinite` for a forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

#[inline]
fn bit(i: usize) -> u64 {
    1u64 << i
}

/// Drops bit `b` from `x`, shifting the higher bits down by one.
#[inline]
fn squeeze(x: u64, b: usize) -> u64 {
    let low = x & (bit(b) - 1);
    let high = (x >> (b + 1)) << b;
    low | high
}

/// Iterates the indices of set bits in ascending order.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Values are immutable once built: the minor operations return new graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Rows,
}

impl Graph {
    /// The edgeless graph on `n` vertices. Panics if `n > MAX_VERTICES`.
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "{n} vertices exceeds {MAX_VERTICES}");
        Graph { n, rows: SmallVec::from_elem(0, n) }
    }

    /// Builds a graph from an edge list, rejecting loops, out-of-range
    /// endpoints and duplicate edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, max: MAX_VERTICES });
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u == v || u >= n || v >= n || g.has_edge(u, v) {
                return Err(Error::InvalidEdge { u, v, n });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows. Rows must be symmetric and
    /// loop-free; this is checked in debug builds only.
    pub(crate) fn from_rows(n: usize, rows: Rows) -> Graph {
        debug_assert_eq!(rows.len(), n);
        let g = Graph { n, rows };
        debug_assert!(g.is_well_formed());
        g
    }

    fn is_well_formed(&self) -> bool {
        let mask = if self.n == 64 { !0 } else { bit(self.n) - 1 };
        (0..self.n).all(|u| {
            let r = self.rows[u];
            r & !mask == 0 && r & bit(u) == 0 && Bits(r).all(|v| self.rows[v] & bit(u) != 0)
        })
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !bit(v);
        self.rows[v] &= !bit(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & bit(v) != 0
    }

    /// Neighbourhood of `v` as a bit mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.rows[u] & !(bit(u + 1) - 1)).map(move |v| Edge { u, v }))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().map(|e| (e.u, e.v)).collect()
    }

    fn check_edge(&self, e: Edge) -> Result<()> {
        if self.has_edge(e.u, e.v) {
            Ok(())
        } else {
            Err(Error::EdgeNotPresent { u: e.u, v: e.v })
        }
    }

    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        self.check_edge(e)?;
        let mut g = self.clone();
        g.clear_edge(e.u, e.v);
        Ok(g)
    }

    /// Merges the endpoints of `e`. The merged vertex keeps index `e.u`
    /// (the smaller endpoint) and every vertex above `e.v` shifts down by one.
    pub fn contract_edge(&self, e: Edge) -> Result<Graph> {
        self.check_edge(e)?;
        Ok(self.contract_unchecked(e.u, e.v))
    }

    fn contract_unchecked(&self, a: usize, b: usize) -> Graph {
        let merged = (self.rows[a] | self.rows[b]) & !(bit(a) | bit(b));
        let mut rows = Rows::with_capacity(self.n - 1);
        for i in 0..self.n {
            if i == b {
                continue;
            }
            let row = if i == a {
                merged
            } else if self.rows[i] & bit(b) != 0 {
                (self.rows[i] & !bit(b)) | bit(a)
            } else {
                self.rows[i]
            };
            rows.push(squeeze(row, b));
        }
        Graph::from_rows(self.n - 1, rows)
    }

    /// Applies a move, failing if its edge is absent.
    pub fn apply(&self, mv: Move) -> Result<Graph> {
        match mv.action {
            Action::Delete => self.delete_edge(mv.edge),
            Action::Contract => self.contract_edge(mv.edge),
        }
    }

    /// Every legal move with its resulting position, ordered by move.
    pub fn options(&self) -> Vec<(Move, Graph)> {
        let mut out = Vec::with_capacity(2 * self.m());
        for e in self.edges() {
            let mut deleted = self.clone();
            deleted.clear_edge(e.u, e.v);
            out.push((Move::new(e, Action::Delete), deleted));
            out.push((Move::new(e, Action::Contract), self.contract_unchecked(e.u, e.v)));
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows: Rows = SmallVec::from_elem(0, self.n);
        for (u, &pu) in perm.iter().enumerate() {
            rows[pu] = Bits(self.rows[u]).fold(0, |acc, v| acc | bit(perm[v]));
        }
        Graph::from_rows(self.n, rows)
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// The same graph with an extra vertex `n` joined to `mask`.
    pub fn with_vertex(&self, mask: u64) -> Graph {
        assert!(self.n < MAX_VERTICES);
        debug_assert!(self.n == 0 || mask >> self.n == 0);
        let mut rows = self.rows.clone();
        for v in Bits(mask) {
            rows[v] |= bit(self.n);
        }
        rows.push(mask);
        Graph::from_rows(self.n + 1, rows)
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Graph {
        if self.rows.iter().all(|&r| r != 0) {
            return self.clone();
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.rows[v] != 0).collect();
        self.induced(&keep)
    }

    pub fn isolated_count(&self) -> usize {
        self.rows.iter().filter(|&&r| r == 0).count()
    }

    /// Vertex masks of the connected components, isolated vertices included.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let mut comp = bit(s);
            let mut frontier = bit(s);
            while frontier != 0 {
                let mut next = 0;
                for v in Bits(frontier) {
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// True for forests (including the edgeless graph).
    pub fn is_acyclic(&self) -> bool {
        self.m() + self.components().len() == self.n
    }

    /// Connected, at least three vertices, and no articulation vertex.
    /// `K2` is not biconnected under this convention.
    pub fn is_biconnected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        let all = bit(self.n) - 1;
        (0..self.n).all(|v| self.is_connected_within(all & !bit(v)))
    }

    fn is_connected_within(&self, verts: u64) -> bool {
        if verts == 0 {
            return true;
        }
        let start = verts & verts.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & verts & !comp;
            comp |= frontier;
        }
        comp == verts
    }

    /// True when the graph is a single cycle `C_n`.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.rows.iter().all(|r| r.count_ones() == 2) && self.is_connected()
    }

    /// Edge sets of the blocks (biconnected components, bridges included),
    /// each sorted, listed in order of their least edge.
    pub fn block_edges(&self) -> Vec<Vec<Edge>> {
        let mut state = BlockSearch {
            g: self,
            disc: vec![usize::MAX; self.n],
            low: vec![0; self.n],
            time: 0,
            stack: Vec::new(),
            out: Vec::new(),
        };
        for s in 0..self.n {
            if state.disc[s] == usize::MAX && self.rows[s] != 0 {
                state.visit(s, usize::MAX);
            }
        }
        let mut blocks = state.out;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        blocks
    }

    /// The blocks as standalone graphs. Block vertices are renumbered in
    /// increasing order of their index here; isolated vertices are dropped.
    pub fn blocks(&self) -> Vec<Graph> {
        self.block_edges()
            .iter()
            .map(|edges| {
                let mask = edges.iter().fold(0u64, |acc, e| acc | bit(e.u) | bit(e.v));
                let verts: Vec<usize> = Bits(mask).collect();
                let mut index = [0usize; MAX_VERTICES];
                for (i, &v) in verts.iter().enumerate() {
                    index[v] = i;
                }
                let mut g = Graph::empty(verts.len());
                for e in edges {
                    g.set_edge(index[e.u], index[e.v]);
                }
                g
            })
            .collect()
    }

    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = Vec::with_capacity(self.n);
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                if 2 * dist[x] + 1 >= best {
                    break;
                }
                for y in Bits(self.rows[x]) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push(y);
                    } else if parent[x] != y {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// No edge joins two vertices of degree above two, and no block is a
    /// triangle.
    pub fn has_property_s(&self) -> bool {
        let high: u64 = (0..self.n).filter(|&v| self.degree(v) > 2).fold(0, |acc, v| acc | bit(v));
        if Bits(high).any(|v| self.rows[v] & high != 0) {
            return false;
        }
        !self.block_edges().iter().any(|b| is_triangle(b))
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|e| self.rows[e.u] & self.rows[e.v] == 0)
    }

    /// Number of common neighbours of the endpoints, i.e. triangles on `e`.
    pub fn triangles_on(&self, e: Edge) -> usize {
        (self.rows[e.u] & self.rows[e.v]).count_ones() as usize
    }
}

fn is_triangle(block: &[Edge]) -> bool {
    if block.len() != 3 {
        return false;
    }
    let mask = block.iter().fold(0u64, |acc, e| acc | bit(e.u) | bit(e.v));
    mask.count_ones() == 3
}

struct BlockSearch<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<Edge>,
    out: Vec<Vec<Edge>>,
}

impl BlockSearch<'_> {
    // Hopcroft-Tarjan with an edge stack; recursion depth is bounded by n.
    fn visit(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for v in Bits(self.g.rows[u]) {
            if self.disc[v] == usize::MAX {
                self.stack.push(Edge::new(u, v));
                self.visit(v, u);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    let split = Edge::new(u, v);
                    let mut block = Vec::new();
                    while let Some(e) = self.stack.pop() {
                        block.push(e);
                        if e == split {
                            break;
                        }
                    }
                    self.out.push(block);
                }
            } else if v != parent && self.disc[v] < self.disc[u] {
                self.stack.push(Edge::new(u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn same_shape(g: &Graph, n: usize, m: usize) -> bool {
        g.n() == n && g.m() == m
    }

    #[test]
    fn delete_examples() {
        let c4 = cycle(4);
        for e in c4.edges() {
            let p = c4.delete_edge(e).unwrap();
            assert!(same_shape(&p, 4, 3));
            assert!(p.is_acyclic() && p.is_connected());
        }
        let k4 = complete(4);
        for e in k4.edges() {
            assert!(same_shape(&k4.delete_edge(e).unwrap(), 4, 5));
        }
        let k2 = complete(2);
        assert!(same_shape(&k2.delete_edge(Edge::new(0, 1)).unwrap(), 2, 0));
    }

    #[test]
    fn contract_examples() {
        for e in cycle(3).edges() {
            assert!(same_shape(&cycle(3).contract_edge(e).unwrap(), 2, 1));
        }
        for e in complete(4).edges() {
            assert_eq!(complete(4).contract_edge(e).unwrap(), complete(3));
        }
        for e in cycle(5).edges() {
            let g = cycle(5).contract_edge(e).unwrap();
            assert!(g.is_cycle() && g.n() == 4);
        }
    }

    #[test]
    fn contract_renumbering() {
        // path 0-1-2-3-4, contract (1,3)? not an edge; use a star-ish graph
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let h = g.contract_edge(Edge::new(1, 2)).unwrap();
        // merged vertex is 1; old 3 -> 2, old 4 -> 3
        assert_eq!(h.edge_list(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn missing_edge_is_error() {
        let g = path(3);
        assert!(matches!(g.delete_edge(Edge::new(0, 2)), Err(Error::EdgeNotPresent { u: 0, v: 2 })));
        assert!(g.contract_edge(Edge::new(0, 2)).is_err());
    }

    #[test]
    fn options_examples() {
        assert!(Graph::empty(4).options().is_empty());
        let k2 = complete(2).options();
        assert_eq!(k2.len(), 2);
        assert!(same_shape(&k2[0].1, 2, 0));
        assert!(same_shape(&k2[1].1, 1, 0));
        let c3 = cycle(3).options();
        assert_eq!(c3.len(), 6);
        for (mv, g) in &c3 {
            match mv.action {
                Action::Delete => assert!(same_shape(g, 3, 2)),
                Action::Contract => assert!(same_shape(g, 2, 1)),
            }
        }
    }

    #[test]
    fn blocks_examples() {
        let tp = triangle_pendant();
        let b = tp.blocks();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], cycle(3));
        assert_eq!(b[1], complete(2));
        assert_eq!(cycle(4).blocks(), vec![cycle(4)]);
        let p = path(4);
        assert_eq!(p.blocks(), vec![complete(2); 3]);
    }

    #[test]
    fn biconnected_examples() {
        assert!(cycle(3).is_biconnected());
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(!bowtie.is_biconnected());
        assert_eq!(bowtie.blocks().len(), 2);
        assert!(!complete(2).is_biconnected());
        assert!(!Graph::empty(3).is_biconnected());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(petersen().girth(), Girth::Finite(5));
        assert_eq!(path(6).girth(), Girth::Infinite);
        assert_eq!(star(5).girth(), Girth::Infinite);
        assert_eq!(complete(4).girth(), Girth::Finite(3));
        assert_eq!(cycle(7).girth(), Girth::Finite(7));
        assert_eq!(complete_bipartite(3, 3).girth(), Girth::Finite(4));
    }

    #[test]
    fn property_s_examples() {
        assert!(complete_bipartite(2, 5).has_property_s());
        assert!(!cycle(3).has_property_s());
        assert!(cycle(6).has_property_s());
        assert!(!complete_bipartite(3, 3).has_property_s());
    }
}
