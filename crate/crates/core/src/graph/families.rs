//! Named graph families.

use super::Graph;

/// `C_k`, vertices in ring order.
pub fn cycle(k: usize) -> Graph {
    assert!(k >= 3, "cycle needs at least 3 vertices");
    let mut g = Graph::empty(k);
    for i in 0..k {
        g.set_edge(i, (i + 1) % k);
    }
    g
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..n {
        g.set_edge(i - 1, i);
    }
    g
}

/// `K_{1,leaves}` with the centre at vertex 0.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::empty(leaves + 1);
    for i in 1..=leaves {
        g.set_edge(0, i);
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.set_edge(u, v);
        }
    }
    g
}

/// `K_{p,q}` with parts `0..p` and `p..p+q`.
pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    let mut g = Graph::empty(p + q);
    for u in 0..p {
        for v in p..p + q {
            g.set_edge(u, v);
        }
    }
    g
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.set_edge(i, (i + 1) % 5);
        g.set_edge(5 + i, 5 + (i + 2) % 5);
        g.set_edge(i, i + 5);
    }
    g
}

/// Two triangles `0,1,2` and `3,4,5` joined by the matching `i -- i+3`.
pub fn triangular_prism() -> Graph {
    let mut g = Graph::empty(6);
    for i in 0..3 {
        g.set_edge(i, (i + 1) % 3);
        g.set_edge(3 + i, 3 + (i + 1) % 3);
        g.set_edge(i, i + 3);
    }
    g
}

/// Triangle `0,1,2` with a pendant edge `2 -- 3`.
pub fn triangle_pendant() -> Graph {
    let mut g = cycle(3).with_vertex(0);
    g.set_edge(2, 3);
    g
}

/// `C_p` and `C_q` sharing the edge `(0, 1)`. The `C_p` arc runs
/// `1, 2, .., p-1, 0`; the `C_q` arc runs `1, p, .., p+q-3, 0`.
pub fn fused_cycle(p: usize, q: usize) -> Graph {
    assert!(p >= 3 && q >= 3, "fused cycle needs p, q >= 3");
    let n = p + q - 2;
    let mut g = Graph::empty(n);
    g.set_edge(0, 1);
    let mut arc = |inner: Vec<usize>| {
        let mut prev = 1;
        for v in inner {
            g.set_edge(prev, v);
            prev = v;
        }
        g.set_edge(prev, 0);
    };
    arc((2..p).collect());
    arc((p..n).collect());
    g
}

/// Replaces every edge `(u, v)` with a path of `lengths[i]` edges, in
/// `edges()` order. New vertices are appended after the originals.
pub fn subdivide(g: &Graph, lengths: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().collect();
    assert_eq!(edges.len(), lengths.len());
    assert!(lengths.iter().all(|&l| l >= 1));
    let extra: usize = lengths.iter().map(|l| l - 1).sum();
    let mut out = Graph::empty(g.n() + extra);
    let mut next = g.n();
    for (e, &len) in edges.iter().zip(lengths) {
        let mut prev = e.u;
        for _ in 1..len {
            out.set_edge(prev, next);
            prev = next;
            next += 1;
        }
        out.set_edge(prev, e.v);
    }
    out
}
