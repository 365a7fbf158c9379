//! Seeded random graphs. Instance `i` of a corpus with seed `s` draws from
//! stream `i` of a ChaCha8 generator keyed by `s`, so each instance can be
//! reproduced on its own.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use pconn::colorers::{classify_diam3, Diam3Case};
use pconn::graph::{diameter, is_two_connected, Graph, Vertex};
use pconn::solver::trial_rng;

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let edges: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, edges).expect("simple by construction")
}

/// Uniform labelled tree via a Prüfer sequence.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let ends: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((ends[0], ends[1]));
    Graph::new(n, edges).expect("tree")
}

/// A connected spanning subgraph of connected `g`: a random spanning tree
/// plus each remaining edge with probability `keep`.
pub fn random_spanning_subgraph(g: &Graph, keep: f64, rng: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    let mut parent: Vec<Vertex> = (0..g.n()).collect();
    fn find(p: &mut [Vertex], x: Vertex) -> Vertex {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut chosen = Vec::new();
    for e in order {
        let (u, v) = g.edge(e);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            chosen.push(e);
        } else if rng.gen_bool(keep) {
            chosen.push(e);
        }
    }
    g.spanning_subgraph(&chosen)
}

/// Random connected graph on `n` vertices: a random tree plus `G(n, p)`.
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let t = random_tree(n, rng);
    let extra = gnp(n, p, rng);
    let mut edges: Vec<(Vertex, Vertex)> = t.edges().to_vec();
    edges.extend(extra.edges().iter().filter(|&&(u, v)| !t.has_edge(u, v)));
    Graph::new(n, edges).expect("simple")
}

/// Is `g` 2-connected, noncomplete and of diameter 3?
pub fn is_diam3_instance(g: &Graph) -> bool {
    g.n() >= 4 && !g.is_complete() && is_two_connected(g) && diameter(g).is_ok_and(|d| d == 3)
}

/// Rejection-samples a 2-connected noncomplete graph of diameter 3 on `n`
/// vertices.
pub fn random_diam3(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    assert!(n >= 6, "diameter-3 sampling needs at least 6 vertices");
    loop {
        let p = rng.gen_range(0.15..0.45);
        let g = gnp(n, p, rng);
        if is_diam3_instance(&g) {
            return g;
        }
    }
}

/// `count` instances with orders drawn from `orders`, instance `i` from
/// stream `i` of `seed`.
pub fn seeded_diam3_corpus(count: usize, orders: std::ops::RangeInclusive<usize>, seed: u64) -> Vec<Graph> {
    (0..count as u64)
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let n = rng.gen_range(orders.clone());
            random_diam3(n, &mut rng)
        })
        .collect()
}

/// Searches seeded random diameter-3 instances on 6..=14 vertices for one
/// classified as `case`.
pub fn find_diam3_case(case: Diam3Case, seed: u64, attempts: u64) -> Option<Graph> {
    (0..attempts).find_map(|i| {
        let mut rng = trial_rng(seed, i);
        let n = rng.gen_range(6..=14);
        let g = random_diam3(n, &mut rng);
        classify_diam3(&g).is_ok_and(|d| d.case == case).then_some(g)
    })
}
