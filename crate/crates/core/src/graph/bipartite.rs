//! Bipartitions, locally maximal cuts and maximal 2-edge-connected bipartite
//! subgraphs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::connectivity::bridges_and_cut_vertices;
use super::paths::shortest_even_cycle;
use super::{EdgeId, Graph, Subgraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

/// Two disjoint vertex sets `U` and `V` (over some subset of the vertices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub side_u: Vec<Vertex>,
    pub side_v: Vec<Vertex>,
}

impl Bipartition {
    pub fn from_sides(sides: &[Option<Side>]) -> Bipartition {
        let mut b = Bipartition { side_u: Vec::new(), side_v: Vec::new() };
        for (v, s) in sides.iter().enumerate() {
            match s {
                Some(Side::U) => b.side_u.push(v),
                Some(Side::V) => b.side_v.push(v),
                None => {}
            }
        }
        b
    }

    pub fn sides(&self, n: usize) -> Vec<Option<Side>> {
        let mut out = vec![None; n];
        for &v in &self.side_u {
            out[v] = Some(Side::U);
        }
        for &v in &self.side_v {
            out[v] = Some(Side::V);
        }
        out
    }

    /// True when no edge of `g` joins two vertices of the same side.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let sides = self.sides(g.n());
        g.edges().iter().all(|&(a, b)| match (sides[a], sides[b]) {
            (Some(x), Some(y)) => x != y,
            _ => true,
        })
    }
}

/// Proper 2-coloring of the vertices, one BFS per component with the
/// component's smallest vertex on side `U`. `None` when an odd cycle exists.
pub fn bipartition(g: &Graph) -> Option<Bipartition> {
    side_assignment(g).ok().map(|s| Bipartition::from_sides(&s))
}

/// Some odd cycle of `g`, if `g` is not bipartite.
pub fn odd_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    side_assignment(g).err()
}

fn side_assignment(g: &Graph) -> Result<Vec<Option<Side>>, Vec<Vertex>> {
    let n = g.n();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(Side::U);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x) {
                match side[y] {
                    None => {
                        side[y] = Some(side[x].unwrap().flip());
                        parent[y] = x;
                        depth[y] = depth[x] + 1;
                        queue.push_back(y);
                    }
                    Some(sy) if sy == side[x].unwrap() => {
                        return Err(tree_cycle(x, y, &parent, &depth));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(side)
}

// Cycle closed by the non-tree edge xy in a BFS tree.
fn tree_cycle(x: Vertex, y: Vertex, parent: &[usize], depth: &[usize]) -> Vec<Vertex> {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// A spanning bipartite subgraph given by a vertex bipartition: it keeps
/// exactly the edges crossing the bipartition.
#[derive(Clone, Debug)]
pub struct BipartiteSubgraph {
    pub graph: Graph,
    pub bipartition: Bipartition,
    /// Ids (in the parent graph) of the kept edges.
    pub edges: Vec<EdgeId>,
}

/// Spanning bipartite subgraph from a locally maximal cut.
///
/// Single-vertex flips run to a local optimum (deterministic scan order, a
/// flip must strictly increase the cut). After that, whenever the kept
/// subgraph has a component or a bridge side `X` with
/// `|δ_G(X)| > 2 |δ_H(X)|`, the whole of `X` is flipped, which also strictly
/// increases the cut. On 3-edge-connected input the result is therefore
/// connected and bridgeless.
pub fn max_cut_bipartite_subgraph(g: &Graph) -> BipartiteSubgraph {
    let n = g.n();
    let mut side = greedy_sides(g);
    loop {
        local_flips(g, &mut side);
        match improving_set(g, &side) {
            Some(set) => {
                for v in set {
                    side[v] ^= 1;
                }
            }
            None => break,
        }
    }
    let edges: Vec<EdgeId> = (0..g.m())
        .filter(|&e| {
            let (a, b) = g.edge(e);
            side[a] != side[b]
        })
        .collect();
    let sides: Vec<Option<Side>> = (0..n).map(|v| Some(if side[v] == 0 { Side::U } else { Side::V })).collect();
    BipartiteSubgraph { graph: g.spanning_subgraph(&edges), bipartition: Bipartition::from_sides(&sides), edges }
}

fn greedy_sides(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    for v in g.vertices() {
        let mut count = [0usize; 2];
        for w in g.neighbors(v) {
            if side[w] != u8::MAX {
                count[side[w] as usize] += 1;
            }
        }
        // join the side opposite to most of the already placed neighbors
        side[v] = if count[0] >= count[1] { 1 } else { 0 };
        if count == [0, 0] {
            side[v] = 0;
        }
    }
    side
}

fn local_flips(g: &Graph, side: &mut [u8]) {
    loop {
        let mut changed = false;
        for v in g.vertices() {
            let same = g.neighbors(v).filter(|&w| side[w] == side[v]).count();
            if 2 * same > g.degree(v) {
                side[v] ^= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

// A vertex set whose flip strictly increases the cut, taken from the
// components and bridges of the kept subgraph.
fn improving_set(g: &Graph, side: &[u8]) -> Option<Vec<Vertex>> {
    let kept: Vec<EdgeId> = (0..g.m())
        .filter(|&e| {
            let (a, b) = g.edge(e);
            side[a] != side[b]
        })
        .collect();
    let h = g.spanning_subgraph(&kept);
    let gains = |set: &[Vertex]| {
        let mut inside = vec![false; g.n()];
        for &v in set {
            inside[v] = true;
        }
        let (mut cut_g, mut cut_h) = (0, 0);
        for &(a, b) in g.edges() {
            if inside[a] != inside[b] {
                cut_g += 1;
                if side[a] != side[b] {
                    cut_h += 1;
                }
            }
        }
        cut_g > 2 * cut_h
    };
    let comps = h.components();
    if comps.len() > 1 {
        if let Some(c) = comps.into_iter().find(|c| gains(c)) {
            return Some(c);
        }
    }
    for b in bridges_and_cut_vertices(&h).bridges {
        let (a, _) = h.edge(b);
        let rest = h.without_edges(&[b]);
        let (_, label) = rest.component_labels();
        let set: Vec<Vertex> = g.vertices().filter(|&v| label[v] == label[a]).collect();
        if gains(&set) {
            return Some(set);
        }
    }
    None
}

/// A 2-edge-connected bipartite subgraph `H` of some graph, closed under
/// adding edges of the parent between its two sides.
#[derive(Clone, Debug)]
pub struct BipartiteCore {
    /// Vertices of `H`, ascending.
    pub vertices: Vec<Vertex>,
    pub bipartition: Bipartition,
    /// Parent edge ids of `H`, ascending.
    pub edges: Vec<EdgeId>,
}

impl BipartiteCore {
    pub fn subgraph(&self, g: &Graph) -> Subgraph {
        g.edge_subgraph(&self.vertices, &self.edges)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("no seed cycle: the graph has no even cycle")]
    NoSeedCycle,
}

/// Grows a maximal 2-edge-connected bipartite subgraph.
///
/// Starts from the shortest even cycle (lexicographically smallest vertex
/// set among ties) and repeatedly absorbs an ear: a path through vertices
/// outside `H` between two vertices of `H` (possibly the same one) whose
/// length parity agrees with the sides of its ends. After every step all
/// parent edges between the two sides are added.
pub fn maximal_2ec_bipartite_subgraph(g: &Graph) -> Result<BipartiteCore, BipartiteError> {
    let n = g.n();
    let cycle = shortest_even_cycle(g).ok_or(BipartiteError::NoSeedCycle)?;
    let mut side: Vec<Option<usize>> = vec![None; n];
    for (i, &v) in cycle.iter().enumerate() {
        side[v] = Some(i % 2);
    }
    while let Some(ear) = find_bipartite_ear(g, &side) {
        let start = side[ear[0]].unwrap();
        for (i, &v) in ear.iter().enumerate().skip(1).take(ear.len() - 2) {
            side[v] = Some((start + i) % 2);
        }
    }
    let vertices: Vec<Vertex> = g.vertices().filter(|&v| side[v].is_some()).collect();
    let edges: Vec<EdgeId> = (0..g.m())
        .filter(|&e| {
            let (a, b) = g.edge(e);
            matches!((side[a], side[b]), (Some(x), Some(y)) if x != y)
        })
        .collect();
    let sides: Vec<Option<Side>> = side.iter().map(|s| s.map(|b| if b == 0 { Side::U } else { Side::V })).collect();
    Ok(BipartiteCore { vertices, bipartition: Bipartition::from_sides(&sides), edges })
}

/// First ear in DFS order (start vertex ascending, neighbors ascending) that
/// keeps `H` bipartite. Returned with both ends included.
pub(crate) fn find_bipartite_ear(g: &Graph, side: &[Option<usize>]) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut used = vec![false; n];
    for x in g.vertices().filter(|&x| side[x].is_some()) {
        for y in g.neighbors(x) {
            if side[y].is_some() {
                continue;
            }
            let mut path = vec![x, y];
            used[y] = true;
            let found = ear_dfs(g, side, &mut path, &mut used);
            used[y] = false;
            if found {
                return Some(path);
            }
        }
    }
    None
}

fn ear_dfs(g: &Graph, side: &[Option<usize>], path: &mut Vec<Vertex>, used: &mut [bool]) -> bool {
    let x = *path.last().unwrap();
    let start = path[0];
    for y in g.neighbors(x) {
        if let Some(sy) = side[y] {
            let len = path.len(); // edges once y is appended
            let closed_ok = y != start || len >= 4;
            if closed_ok && y != path[path.len() - 2] && (side[start].unwrap() + len) % 2 == sy {
                path.push(y);
                return true;
            }
        } else if !used[y] {
            used[y] = true;
            path.push(y);
            if ear_dfs(g, side, path, used) {
                return true;
            }
            path.pop();
            used[y] = false;
        }
    }
    false
}
