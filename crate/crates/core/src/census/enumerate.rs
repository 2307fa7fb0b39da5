//! Exhaustive generation of isomorphism classes by vertex extension.
//!
//! Each class on `k` vertices is extended by one vertex joined to every
//! subset of the existing vertices, and children are deduplicated by
//! canonical form. This is complete for any family closed under deleting a
//! vertex, and for biconnected graphs when extending connected parents
//! (removing a vertex from a biconnected graph leaves it connected).

use std::collections::BTreeSet;

use crate::canon::{canonical_form, CanonKey};
use crate::error::{Error, Result};
use crate::graph::{Girth, Graph};

/// Largest `n` for [`enumerate_biconnected`] and [`enumerate_all`].
pub const BUILTIN_MAX_N: usize = 8;
/// Largest `n` for [`enumerate_girth5_biconnected`].
pub const GIRTH5_MAX_N: usize = 11;
/// Largest `n` for [`enumerate_cubic_triangle_free`].
pub const CUBIC_MAX_N: usize = 14;

fn too_large(n: usize, max: usize) -> Error {
    Error::TooLarge { n, max }
}

/// Children of `parents` that pass `keep`, one canonical representative per
/// class, sorted by canonical key. `allow(parent, mask)` may veto a
/// neighbour set before the child is built.
fn extend<A, K>(parents: &[Graph], allow: A, keep: K) -> Vec<Graph>
where
    A: Fn(&Graph, u64) -> bool,
    K: Fn(&Graph) -> bool,
{
    let mut seen: BTreeSet<CanonKey> = BTreeSet::new();
    for parent in parents {
        for mask in 0..1u64 << parent.n() {
            if !allow(parent, mask) {
                continue;
            }
            let child = parent.with_vertex(mask);
            if keep(&child) {
                seen.insert(canonical_form(&child));
            }
        }
    }
    seen.into_iter().map(|k| k.to_graph()).collect()
}

fn grow<A, K>(n: usize, allow: A, keep: K) -> Vec<Graph>
where
    A: Fn(&Graph, u64, usize) -> bool,
    K: Fn(&Graph, usize) -> bool,
{
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        level = extend(&level, |p, mask| allow(p, mask, k), |c| keep(c, k));
    }
    level
}

/// Every graph on `n` vertices up to isomorphism.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    if n > BUILTIN_MAX_N {
        return Err(too_large(n, BUILTIN_MAX_N));
    }
    Ok(grow(n, |_, _, _| true, |_, _| true))
}

/// One canonical representative of every biconnected graph on `n` vertices,
/// sorted by canonical key.
pub fn enumerate_biconnected(n: usize) -> Result<Vec<Graph>> {
    if n > BUILTIN_MAX_N {
        return Err(too_large(n, BUILTIN_MAX_N));
    }
    if n < 3 {
        return Ok(Vec::new());
    }
    let parents: Vec<Graph> = enumerate_all(n - 1)?.into_iter().filter(Graph::is_connected).collect();
    Ok(extend(&parents, |_, mask| mask.count_ones() >= 2, Graph::is_biconnected))
}

fn girth_at_least_5(g: &Graph) -> bool {
    !matches!(g.girth(), Girth::Finite(k) if k < 5)
}

/// Biconnected graphs of girth at least 5 on `n` vertices.
pub fn enumerate_girth5_biconnected(n: usize) -> Result<Vec<Graph>> {
    if n > GIRTH5_MAX_N {
        return Err(too_large(n, GIRTH5_MAX_N));
    }
    if n < 5 {
        return Ok(Vec::new());
    }
    // New vertex's neighbours must be pairwise at distance >= 3.
    let allow = |p: &Graph, mask: u64, _k: usize| {
        crate::graph::Bits(mask).all(|v| {
            let near = p.neighbors(v) | (1 << v);
            let ball = crate::graph::Bits(p.neighbors(v)).fold(near, |acc, w| acc | p.neighbors(w));
            mask & ball == 1 << v
        })
    };
    let all = grow(n, allow, |c, _| girth_at_least_5(c));
    Ok(all.into_iter().filter(Graph::is_biconnected).collect())
}

/// Biconnected cubic triangle-free graphs on `n` vertices.
///
/// Generated through the triangle-free graphs of maximum degree 3, pruning
/// any induced subgraph whose missing degree could not be supplied by the
/// remaining vertices.
pub fn enumerate_cubic_triangle_free(n: usize) -> Result<Vec<Graph>> {
    if n > CUBIC_MAX_N {
        return Err(too_large(n, CUBIC_MAX_N));
    }
    if n < 4 || n % 2 == 1 {
        return Ok(Vec::new());
    }
    let allow = |p: &Graph, mask: u64, _k: usize| {
        mask.count_ones() <= 3 && crate::graph::Bits(mask).all(|v| p.degree(v) < 3 && p.neighbors(v) & mask == 0)
    };
    let keep = |c: &Graph, k: usize| {
        let missing: usize = (0..c.n()).map(|v| 3 - c.degree(v)).sum();
        missing <= 3 * (n - k)
    };
    let all = grow(n, allow, keep);
    Ok(all.into_iter().filter(|g| (0..g.n()).all(|v| g.degree(v) == 3) && g.is_biconnected()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_canonical;

    #[test]
    fn all_graph_counts() {
        // non-isomorphic graphs on n vertices
        let expected = [1, 1, 2, 4, 11, 34, 156, 1044];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(enumerate_all(n).unwrap().len(), want, "n = {n}");
        }
    }

    #[test]
    fn biconnected_counts() {
        let expected = [(3, 1), (4, 3), (5, 10), (6, 56), (7, 468)];
        for (n, want) in expected {
            let gs = enumerate_biconnected(n).unwrap();
            assert_eq!(gs.len(), want, "n = {n}");
            assert!(gs.iter().all(|g| g.is_biconnected() && is_canonical(g)));
            let keys: Vec<_> = gs.iter().map(canonical_form).collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(enumerate_biconnected(2).unwrap().is_empty());
        assert!(matches!(enumerate_biconnected(9), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn girth5_small() {
        assert_eq!(enumerate_girth5_biconnected(5).unwrap().len(), 1);
        assert_eq!(enumerate_girth5_biconnected(6).unwrap().len(), 1);
        let ten = enumerate_girth5_biconnected(10).unwrap();
        assert!(ten.iter().any(|g| crate::canon::are_isomorphic(g, &crate::graph::families::petersen())));
        assert!(ten.iter().all(|g| girth_at_least_5(g) && g.is_biconnected()));
    }

    #[test]
    fn cubic_triangle_free_counts() {
        // connected cubic triangle-free graphs number 1, 2, 6, 22 for n = 6..12
        assert_eq!(enumerate_cubic_triangle_free(6).unwrap().len(), 1);
        assert_eq!(enumerate_cubic_triangle_free(8).unwrap().len(), 2);
        assert_eq!(enumerate_cubic_triangle_free(10).unwrap().len(), 6);
        assert_eq!(enumerate_cubic_triangle_free(12).unwrap().len(), 22);
        assert!(enumerate_cubic_triangle_free(7).unwrap().is_empty());
    }
}
