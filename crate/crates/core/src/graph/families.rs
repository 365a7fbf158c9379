//! Named graph families.

use super::{Graph, Vertex};

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// `K_{1,m}` with center 0.
pub fn star(m: usize) -> Graph {
    Graph::new(m + 1, (1..=m).map(|v| (0, v))).unwrap()
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::new(a + b, edges).unwrap()
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::new(10, edges).unwrap()
}

pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let edges = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v);
    Graph::new(n, edges).unwrap()
}

/// Wheel with hub 0 and rim `1..=rim` (so `W_rim` has `rim + 1` vertices).
pub fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = (1..=rim).map(|v| (0, v)).collect();
    edges.extend((1..=rim).map(|v| (v, v % rim + 1)));
    Graph::new(rim + 1, edges).unwrap()
}

/// Circular ladder: two `k`-cycles `0..k` and `k..2k` joined by rungs.
pub fn prism(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    Graph::new(2 * k, edges).unwrap()
}

/// Theta graph: branch vertices 0 and 1 joined by internally disjoint paths
/// with the given edge counts (at most one of them equal to 1).
pub fn theta(lengths: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 2;
    for &len in lengths {
        assert!(len >= 1);
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(next, edges).unwrap()
}

/// Disjoint union of the given graphs, relabeled consecutively.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in parts {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
        offset += g.n();
    }
    Graph::new(offset, edges).unwrap()
}
