//! Bipartite maximum matching between two vertex sets, and a general
//! (Edmonds blossom) matching used by the exact proper-path test.

use std::collections::VecDeque;

use super::{EdgeId, Graph, Vertex};

/// Maximum matching of `E(x, y)`. Augmenting paths are tried from `x` in
/// ascending order with neighbors in ascending order, so the result is
/// deterministic. Returned as edge ids of `g`, ascending.
pub fn maximum_matching(g: &Graph, x: &[Vertex], y: &[Vertex]) -> Vec<EdgeId> {
    let n = g.n();
    let mut in_y = vec![false; n];
    for &v in y {
        in_y[v] = true;
    }
    let mut xs = x.to_vec();
    xs.sort_unstable();
    let mut mate_of_y = vec![usize::MAX; n];
    for &u in &xs {
        let mut seen = vec![false; n];
        augment(g, u, &in_y, &mut mate_of_y, &mut seen);
    }
    let mut out: Vec<EdgeId> =
        y.iter().filter(|&&v| mate_of_y[v] != usize::MAX).map(|&v| g.edge_id(v, mate_of_y[v]).unwrap()).collect();
    out.sort_unstable();
    out
}

fn augment(g: &Graph, u: Vertex, in_y: &[bool], mate_of_y: &mut [usize], seen: &mut [bool]) -> bool {
    for w in g.neighbors(u) {
        if !in_y[w] || seen[w] {
            continue;
        }
        seen[w] = true;
        if mate_of_y[w] == usize::MAX || augment(g, mate_of_y[w], in_y, mate_of_y, seen) {
            mate_of_y[w] = u;
            return true;
        }
    }
    false
}

const NONE: usize = usize::MAX;

/// Maximum cardinality matching in a general graph given by adjacency lists
/// (Edmonds' blossom algorithm, O(V^3)).
pub struct GeneralMatching {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_queue: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl GeneralMatching {
    pub fn new(adj: Vec<Vec<usize>>) -> GeneralMatching {
        let n = adj.len();
        GeneralMatching {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_queue: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// Runs to a maximum matching; returns `mate[v]` (`None` if unmatched).
    pub fn solve(mut self) -> Vec<Option<usize>> {
        let n = self.adj.len();
        // greedy start
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&w) = self.adj[v].iter().find(|&&w| self.mate[w] == NONE && w != v) {
                    self.mate[v] = w;
                    self.mate[w] = v;
                }
            }
        }
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(end) = self.find_path(v) {
                    self.flip(end);
                }
            }
        }
        self.mate.into_iter().map(|m| if m == NONE { None } else { Some(m) }).collect()
    }

    /// Like [`solve`](Self::solve) but gives up as soon as some vertex is
    /// certainly left exposed; `None` means no perfect matching exists.
    pub fn solve_perfect(mut self) -> Option<Vec<usize>> {
        let n = self.adj.len();
        if n % 2 == 1 {
            return None;
        }
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&w) = self.adj[v].iter().find(|&&w| self.mate[w] == NONE && w != v) {
                    self.mate[v] = w;
                    self.mate[w] = v;
                }
            }
        }
        for v in 0..n {
            if self.mate[v] == NONE {
                // an exposed vertex with no augmenting path stays exposed
                let end = self.find_path(v)?;
                self.flip(end);
            }
        }
        Some(self.mate)
    }

    fn flip(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut used = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            used[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if used[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.in_queue.iter_mut().for_each(|b| *b = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.queue.push_back(root);
        self.in_queue[root] = true;
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for j in 0..n {
                        if self.in_blossom[self.base[j]] {
                            self.base[j] = cur;
                            if !self.in_queue[j] {
                                self.in_queue[j] = true;
                                self.queue.push_back(j);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.in_queue[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn bipartite_matching_examples() {
        let g = cycle(6);
        assert!(maximum_matching(&g, &[0, 2, 4], &[1, 3, 5]).len() == 3);
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(maximum_matching(&g, &[0, 2], &[1, 3]).len() == 2);
        assert!(maximum_matching(&g, &[0, 1], &[2, 3]).is_empty());
    }

    fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
        g.vertices().map(|v| g.neighbors(v).collect()).collect()
    }

    #[test]
    fn blossom_examples() {
        // odd cycle plus a pendant: perfect matching through the blossom
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5)]).unwrap();
        let mate = GeneralMatching::new(adjacency(&g)).solve_perfect().unwrap();
        for v in 0..6 {
            assert_eq!(mate[mate[v]], v);
            assert!(g.has_edge(v, mate[v]));
        }
        assert!(GeneralMatching::new(adjacency(&star(3))).solve_perfect().is_none());
        assert!(GeneralMatching::new(adjacency(&petersen())).solve_perfect().is_some());
        let size = GeneralMatching::new(adjacency(&complete(7))).solve().iter().filter(|m| m.is_some()).count();
        assert_eq!(size, 6);
    }
}
