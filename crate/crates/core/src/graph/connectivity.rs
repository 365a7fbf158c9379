//! Vertex and edge connectivity, bridges, articulation points and 2-edge cuts.

use super::{EdgeId, Graph, Vertex};

/// Bridges, articulation points and (when requested) the two connectivities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutStructure {
    pub bridges: Vec<EdgeId>,
    pub cut_vertices: Vec<Vertex>,
    pub kappa: Option<usize>,
    pub kappa_prime: Option<usize>,
}

/// Unit-capacity flow network used for the Menger computations.
pub(crate) struct FlowNet {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
    initial: Vec<i32>,
}

const NIL: usize = usize::MAX;

impl FlowNet {
    pub(crate) fn new(nodes: usize) -> FlowNet {
        FlowNet { head: vec![NIL; nodes], to: Vec::new(), cap: Vec::new(), next: Vec::new(), initial: Vec::new() }
    }

    /// Adds arc `a -> b` with capacity `c` and its residual twin; returns the
    /// arc index.
    pub(crate) fn add_arc(&mut self, a: usize, b: usize, c: i32) -> usize {
        let id = self.to.len();
        for (x, y, cc) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(cc);
            self.initial.push(cc);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
        id
    }

    /// Augments along shortest residual paths until `limit` units flow or no
    /// path remains. Returns the flow value.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let nodes = self.head.len();
        let mut flow = 0;
        let mut pred = vec![NIL; nodes];
        let mut queue = Vec::with_capacity(nodes);
        let mut seen = vec![false; nodes];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = NIL);
            seen.iter_mut().for_each(|b| *b = false);
            queue.clear();
            queue.push(s);
            seen[s] = true;
            let mut qi = 0;
            while qi < queue.len() && !seen[t] {
                let x = queue[qi];
                qi += 1;
                let mut a = self.head[x];
                while a != NIL {
                    let y = self.to[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        pred[y] = a;
                        queue.push(y);
                    }
                    a = self.next[a];
                }
            }
            if !seen[t] {
                break;
            }
            let mut y = t;
            while y != s {
                let a = pred[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Restores every capacity to its value at construction.
    pub(crate) fn reset(&mut self) {
        self.cap.copy_from_slice(&self.initial);
    }

    /// Flow currently carried by arc `a` (as returned by `add_arc`) when its
    /// original capacity was `c`.
    pub(crate) fn flow_on(&self, a: usize, c: i32) -> i32 {
        c - self.cap[a]
    }
}

/// Maximum number of edge-disjoint `s`-`t` paths, capped at `limit`.
pub fn local_edge_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    edge_net(g).max_flow(s, t, limit)
}

fn edge_net(g: &Graph) -> FlowNet {
    let mut net = FlowNet::new(g.n());
    for &(u, v) in g.edges() {
        net.add_arc(u, v, 1);
        net.add_arc(v, u, 1);
    }
    net
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths for
/// nonadjacent `s`, `t`, capped at `limit`.
fn local_vertex_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    // vertex x splits into x_in = 2x and x_out = 2x + 1
    let mut net = FlowNet::new(2 * g.n());
    for v in g.vertices() {
        let cap = if v == s || v == t { g.n() as i32 } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
    }
    for &(u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, 1);
        net.add_arc(2 * v + 1, 2 * u, 1);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// κ(G): `n - 1` for complete graphs, 0 for disconnected ones, otherwise the
/// minimum over nonadjacent pairs of the number of vertex-disjoint paths.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n.saturating_sub(1);
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = g.min_degree();
    for s in g.vertices() {
        for t in s + 1..n {
            if best == 0 {
                return 0;
            }
            if !g.has_edge(s, t) {
                best = best.min(local_vertex_connectivity(g, s, t, best));
            }
        }
    }
    best
}

/// κ′(G): the minimum number of edges whose removal disconnects `g`
/// (0 for disconnected graphs and graphs with fewer than two vertices).
pub fn edge_connectivity(g: &Graph) -> usize {
    if g.n() < 2 || !g.is_connected() {
        return 0;
    }
    let mut best = g.min_degree();
    let mut net = edge_net(g);
    for t in 1..g.n() {
        net.reset();
        best = best.min(net.max_flow(0, t, best));
    }
    best
}

/// Whether κ′(G) ≥ `k`; cheaper than [`edge_connectivity`] when the minimum
/// degree is well above `k`.
pub fn is_k_edge_connected(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if g.n() < 2 || g.min_degree() < k || !g.is_connected() {
        return false;
    }
    let mut net = edge_net(g);
    (1..g.n()).all(|t| {
        net.reset();
        net.max_flow(0, t, k) >= k
    })
}

pub fn is_two_connected(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && bridges_and_cut_vertices(g).cut_vertices.is_empty()
}

/// Bridges and articulation points by iterative low-link DFS. The
/// connectivity fields are left empty; see [`cut_structure`].
pub fn bridges_and_cut_vertices(g: &Graph) -> CutStructure {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut bridges = Vec::new();
    let mut time = 0;
    // stack frames: (vertex, parent edge, next adjacency index)
    let mut stack: Vec<(Vertex, EdgeId, usize)> = Vec::new();
    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, pe, idx) = *frame;
            if idx < g.degree(v) {
                frame.2 += 1;
                let (w, e) = g.incident(v)[idx];
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        bridges.push(pe);
                    }
                    if p != root && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    bridges.sort_unstable();
    CutStructure {
        bridges,
        cut_vertices: g.vertices().filter(|&v| is_cut[v]).collect(),
        kappa: None,
        kappa_prime: None,
    }
}

/// Bridges, cut vertices, κ and κ′ together.
pub fn cut_structure(g: &Graph) -> CutStructure {
    CutStructure {
        kappa: Some(vertex_connectivity(g)),
        kappa_prime: Some(edge_connectivity(g)),
        ..bridges_and_cut_vertices(g)
    }
}

/// All 2-edge cuts `{e, f}` (with `e < f`) of a connected bridgeless graph,
/// in lexicographic order. Each yields exactly two components.
pub fn two_edge_cuts(g: &Graph) -> Vec<(EdgeId, EdgeId)> {
    let mut out = Vec::new();
    for e in 0..g.m() {
        let without = g.without_edges(&[e]);
        let bridges = bridges_and_cut_vertices(&without).bridges;
        for b in bridges {
            // ids in `without` skip e
            let f = if b >= e { b + 1 } else { b };
            if f > e {
                out.push((e, f));
            }
        }
    }
    out
}
