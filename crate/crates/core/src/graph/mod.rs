//! Simple undirected graphs on dense vertex ids `0..n` and the classical
//! primitives the colorers and the solver are built on.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub mod bipartite;
pub mod connectivity;
pub mod families;
pub mod matching;
pub mod paths;

pub use bipartite::{
    bipartition, max_cut_bipartite_subgraph, maximal_2ec_bipartite_subgraph, odd_cycle, BipartiteCore,
    BipartiteSubgraph, Bipartition, Side,
};
pub use connectivity::{
    bridges_and_cut_vertices, cut_structure, edge_connectivity, is_k_edge_connected, is_two_connected,
    local_edge_connectivity, two_edge_cuts, vertex_connectivity, CutStructure,
};
pub use matching::{maximum_matching, GeneralMatching};
pub use paths::{diameter, distances_from, shortest_even_cycle, two_fan, FanError};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
}

/// A simple, finite, undirected graph.
///
/// Edges are stored once with `u < v` and sorted lexicographically; an
/// [`EdgeId`] is the position of the edge in that order. Adjacency lists are
/// sorted by neighbor and carry the id of the connecting edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::ParallelEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Neighbors of `v` with the id of the connecting edge, sorted by neighbor.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let row = &self.adj[u];
        row.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| row[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Connected-component label per vertex; labels are assigned in order of
    /// each component's smallest vertex.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let (count, label) = self.component_labels();
        let mut out = vec![Vec::new(); count];
        for v in self.vertices() {
            out[label[v]].push(v);
        }
        out
    }

    /// True for the empty graph and single vertices as well.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_labels().0 == 1
    }

    /// The subgraph induced on `vertices`, relabeled to `0..vertices.len()`
    /// in the given order.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Subgraph {
        let mut from_parent = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            from_parent[v] = Some(i);
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| match (from_parent[u], from_parent[v]) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        });
        let graph = Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph");
        Subgraph { graph, to_parent: vertices.to_vec(), from_parent }
    }

    /// The subgraph on `vertices` containing only the listed edges of `self`
    /// (both endpoints must be among `vertices`).
    pub fn edge_subgraph(&self, vertices: &[Vertex], edge_ids: &[EdgeId]) -> Subgraph {
        let mut from_parent = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            from_parent[v] = Some(i);
        }
        let edges = edge_ids.iter().map(|&e| {
            let (u, v) = self.edges[e];
            (
                from_parent[u].expect("edge endpoint outside vertex set"),
                from_parent[v].expect("edge endpoint outside vertex set"),
            )
        });
        let graph = Graph::new(vertices.len(), edges).expect("edge subgraph of a simple graph");
        Subgraph { graph, to_parent: vertices.to_vec(), from_parent }
    }

    /// Spanning subgraph keeping only the listed edges.
    pub fn spanning_subgraph(&self, edge_ids: &[EdgeId]) -> Graph {
        Graph::new(self.n, edge_ids.iter().map(|&e| self.edges[e])).expect("subgraph of a simple graph")
    }

    pub fn without_edges(&self, removed: &[EdgeId]) -> Graph {
        let mut keep = vec![true; self.m()];
        for &e in removed {
            keep[e] = false;
        }
        let ids: Vec<EdgeId> = (0..self.m()).filter(|&e| keep[e]).collect();
        self.spanning_subgraph(&ids)
    }

    /// Graph on `n + 1` vertices: `self` plus a new vertex `n` joined to `attach`.
    pub fn with_new_vertex(&self, attach: &[Vertex]) -> Result<Graph, GraphError> {
        let v = self.n;
        Graph::new(self.n + 1, self.edges.iter().copied().chain(attach.iter().map(|&a| (a, v))))
    }

    /// True when every edge of `self` is an edge of `other` and both have the
    /// same vertex set.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }

    /// `N(U)`: vertices outside `set` adjacent to some vertex of `set`.
    pub fn neighborhood_of_set(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut hit = vec![false; self.n];
        for &v in set {
            for w in self.neighbors(v) {
                if !inside[w] {
                    hit[w] = true;
                }
            }
        }
        self.vertices().filter(|&v| hit[v]).collect()
    }

    /// `E(X, Y)` for disjoint `x`, `y`.
    pub fn cross_edges(&self, x: &[Vertex], y: &[Vertex]) -> Vec<EdgeId> {
        let mut side = vec![0u8; self.n];
        for &v in x {
            side[v] = 1;
        }
        for &v in y {
            side[v] = 2;
        }
        (0..self.m())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                matches!((side[u], side[v]), (1, 2) | (2, 1))
            })
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in self.vertices() {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, edges).expect("complement of a simple graph")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// A graph derived from a parent together with the vertex correspondence.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// Local vertex `i` is parent vertex `to_parent[i]`.
    pub to_parent: Vec<Vertex>,
    /// Parent vertex `v` is local vertex `from_parent[v]`, if kept.
    pub from_parent: Vec<Option<Vertex>>,
}

impl Subgraph {
    /// Parent edge id of local edge `e`.
    pub fn parent_edge(&self, parent: &Graph, e: EdgeId) -> EdgeId {
        let (a, b) = self.graph.edge(e);
        parent.edge_id(self.to_parent[a], self.to_parent[b]).expect("subgraph edge missing from parent")
    }
}
