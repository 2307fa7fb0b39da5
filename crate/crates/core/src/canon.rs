//! Canonical labelling.
//!
//! Vertices are first split by iterated neighbour-count signatures into an
//! equitable ordered partition. Remaining ties are broken by individualising
//! one vertex of the first smallest non-trivial cell and refining again; every
//! leaf of that search is a vertex ordering, and the canonical form is the
//! leaf whose row-major upper-triangle adjacency string is least.
//!
//! Two pruning rules keep the search small: branches whose fixed prefix is
//! already worse than the best leaf are cut, and twin vertices (same
//! neighbourhood apart from each other) are branched on only once.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph, MAX_VERTICES};

type Cells = SmallVec<[u64; 16]>;
type Words = SmallVec<[u64; 16]>;

/// Isomorphism-invariant key: one byte holding `n`, then the row-major upper
/// triangle of the canonical adjacency matrix packed eight bits per byte,
/// most significant bit first, zero padded.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey(SmallVec<[u8; 24]>);

impl CanonKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Validates the layout (length and zero padding) of raw key bytes.
    pub fn from_bytes(bytes: &[u8]) -> Result<CanonKey> {
        let bad = |why: &str| Error::InvalidParams(format!("canonical key: {why}"));
        let (&n, rest) = bytes.split_first().ok_or_else(|| bad("empty"))?;
        let n = n as usize;
        if n > MAX_VERTICES {
            return Err(bad("vertex count too large"));
        }
        let nbits = n * n.saturating_sub(1) / 2;
        if rest.len() != nbits.div_ceil(8) {
            return Err(bad("wrong length"));
        }
        if !nbits.is_multiple_of(8) && rest[rest.len() - 1] & (0xff >> (nbits % 8)) != 0 {
            return Err(bad("nonzero padding"));
        }
        Ok(CanonKey(SmallVec::from_slice(bytes)))
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    /// The canonically labelled graph this key encodes.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::empty(n);
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                if self.0[1 + idx / 8] & (0x80 >> (idx % 8)) != 0 {
                    g.set_edge(u, v);
                }
                idx += 1;
            }
        }
        g
    }

    fn from_words(n: usize, words: &[u64]) -> CanonKey {
        let nbits = n * n.saturating_sub(1) / 2;
        let mut bytes: SmallVec<[u8; 24]> = SmallVec::from_elem(0, 1 + nbits.div_ceil(8));
        bytes[0] = n as u8;
        let mut idx = 0;
        for (u, w) in words.iter().enumerate() {
            for v in u + 1..n {
                if w & top(v) != 0 {
                    bytes[1 + idx / 8] |= 0x80 >> (idx % 8);
                }
                idx += 1;
            }
        }
        CanonKey(bytes)
    }
}

impl fmt::Debug for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CanonKey(")?;
        for b in self.0.iter() {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

/// Position `j` of a row, counted from the most significant bit, so that
/// numeric order on words is lexicographic order on bit strings.
#[inline]
fn top(j: usize) -> u64 {
    1u64 << (63 - j)
}

pub fn canonical_form(g: &Graph) -> CanonKey {
    canonical_labeling(g).0
}

/// Canonical key plus the labelling that realises it: `labels[v]` is the
/// canonical position of vertex `v`, so `g.permute(&labels)` is canonical.
pub fn canonical_labeling(g: &Graph) -> (CanonKey, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (CanonKey::from_words(0, &[]), Vec::new());
    }
    let mut search = Search { g, n, best: None, order: Vec::new() };
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut cells = Cells::new();
    cells.push(all);
    search.descend(cells);
    let words = search.best.expect("search visits at least one leaf");
    let mut labels = vec![0; n];
    for (pos, &v) in search.order.iter().enumerate() {
        labels[v] = pos;
    }
    (CanonKey::from_words(n, &words), labels)
}

/// The canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, labels) = canonical_labeling(g);
    g.permute(&labels)
}

/// True when `g` is already in canonical labelling.
pub fn is_canonical(g: &Graph) -> bool {
    canonical_form(g).to_graph() == *g
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    best: Option<Words>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Cells) {
        refine(self.g, &mut cells);
        let fixed = cells.iter().take_while(|c| c.count_ones() == 1).count();

        if let Some(best) = &self.best {
            for i in 0..fixed.min(self.n) {
                let w = self.row_word(&cells, i);
                match w.cmp(&best[i]) {
                    std::cmp::Ordering::Less => break,
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }

        if fixed == cells.len() {
            let words: Words = (0..self.n).map(|i| self.row_word(&cells, i)).collect();
            if self.best.as_ref().is_none_or(|b| words < *b) {
                self.best = Some(words);
                self.order = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            }
            return;
        }

        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i)
            .unwrap();
        let cell = cells[target];
        let mut tried = 0u64;
        for v in Bits(cell) {
            if Bits(tried).any(|u| self.twins(u, v)) {
                continue;
            }
            tried |= 1 << v;
            let mut next = Cells::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(1 << v);
            next.push(cell & !(1 << v));
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(next);
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        self.g.neighbors(u) & !(1 << v) == self.g.neighbors(v) & !(1 << u)
    }

    /// Row `i` of the adjacency string for an equitable partition whose
    /// first `i + 1` cells are singletons. Equitability makes the adjacency
    /// of a fixed vertex uniform across every other cell.
    fn row_word(&self, cells: &[u64], i: usize) -> u64 {
        let x = cells[i].trailing_zeros() as usize;
        let row = self.g.neighbors(x);
        let mut word = 0u64;
        let mut pos = 0;
        for &c in cells {
            let len = c.count_ones() as usize;
            if pos > i && row & c != 0 {
                for j in pos..pos + len {
                    word |= top(j);
                }
            }
            pos += len;
        }
        word
    }
}

/// Splits cells by neighbour counts into every cell until the ordered
/// partition is equitable. Fragments of a cell are ordered by signature.
fn refine(g: &Graph, cells: &mut Cells) {
    let mut sigs: Vec<(SmallVec<[u8; 16]>, usize)> = Vec::new();
    loop {
        let mut next = Cells::with_capacity(cells.len());
        let mut changed = false;
        for &cell in cells.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            sigs.clear();
            for v in Bits(cell) {
                let row = g.neighbors(v);
                let sig = cells.iter().map(|&c| (row & c).count_ones() as u8).collect();
                sigs.push((sig, v));
            }
            sigs.sort_unstable();
            let mut start = 0;
            let before = next.len();
            while start < sigs.len() {
                let mut end = start + 1;
                while end < sigs.len() && sigs[end].0 == sigs[start].0 {
                    end += 1;
                }
                next.push(sigs[start..end].iter().fold(0, |acc, (_, v)| acc | 1 << v));
                start = end;
            }
            changed |= next.len() - before > 1;
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Full permutation search, independent of the refinement machinery.
    use super::*;

    pub fn bruteforce_key(g: &Graph) -> Vec<u8> {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u8>> = None;
        permutations(&mut perm, 0, &mut |p| {
            let bits: Vec<u8> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| g.has_edge(p[i], p[j]) as u8)
                .collect();
            if best.as_ref().is_none_or(|b| bits < *b) {
                best = Some(bits);
            }
        });
        let mut out = vec![n as u8];
        out.extend(best.unwrap_or_default());
        out
    }

    fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
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
}
