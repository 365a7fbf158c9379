//! Distances, the 2-fan (Menger) construction and even cycles.

use std::collections::VecDeque;

use thiserror::Error;

use super::connectivity::{is_two_connected, FlowNet};
use super::{Graph, GraphError, Vertex};

/// BFS distances from `s`; `None` for unreachable vertices.
pub fn distances_from(g: &Graph, s: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Largest BFS distance over all pairs.
pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    let mut best = 0;
    for s in g.vertices() {
        for d in distances_from(g, s) {
            best = best.max(d.ok_or(GraphError::Disconnected)?);
        }
    }
    Ok(best)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("fan precondition violated: {0}")]
    Precondition(&'static str),
    #[error("no 2-fan from {0} although the graph is 2-connected")]
    Internal(Vertex),
}

/// Two paths from `v` to distinct vertices of `target` sharing only `v`,
/// with all internal vertices outside `target`.
pub fn two_fan(g: &Graph, v: Vertex, target: &[Vertex]) -> Result<[Vec<Vertex>; 2], FanError> {
    let n = g.n();
    if v >= n || target.iter().any(|&t| t >= n) {
        return Err(FanError::Precondition("vertex out of range"));
    }
    let mut in_target = vec![false; n];
    for &t in target {
        in_target[t] = true;
    }
    if in_target[v] {
        return Err(FanError::Precondition("source lies in the target set"));
    }
    if in_target.iter().filter(|&&b| b).count() < 2 {
        return Err(FanError::Precondition("target needs at least two vertices"));
    }
    if !is_two_connected(g) {
        return Err(FanError::Precondition("graph is not 2-connected"));
    }
    fan_paths(g, v, &in_target, 2).map_err(|_| FanError::Internal(v))?.try_into().map_err(|_| FanError::Internal(v))
}

/// Up to `want` internally disjoint paths from `v` into the marked set.
/// Returns `Err(found)` when fewer than `want` exist.
pub(crate) fn fan_paths(g: &Graph, v: Vertex, in_target: &[bool], want: usize) -> Result<Vec<Vec<Vertex>>, usize> {
    let n = g.n();
    let sink = 2 * n;
    let mut net = FlowNet::new(2 * n + 1);
    for x in g.vertices() {
        if in_target[x] {
            net.add_arc(2 * x, sink, 1);
        } else if x != v {
            net.add_arc(2 * x, 2 * x + 1, 1);
        }
    }
    let mut arcs = Vec::new();
    for &(a, b) in g.edges() {
        for (x, y) in [(a, b), (b, a)] {
            if !in_target[x] && y != v {
                arcs.push((net.add_arc(2 * x + 1, 2 * y, 1), x, y));
            }
        }
    }
    let got = net.max_flow(2 * v + 1, sink, want);
    if got < want {
        return Err(got);
    }
    let mut succ = vec![Vec::new(); n];
    for &(a, x, y) in &arcs {
        if net.flow_on(a, 1) > 0 {
            succ[x].push(y);
        }
    }
    let mut paths = Vec::new();
    for &first in &succ[v].clone() {
        let mut path = vec![v, first];
        let mut cur = first;
        while !in_target[cur] {
            cur = succ[cur][0];
            path.push(cur);
        }
        paths.push(path);
    }
    paths.sort();
    Ok(paths)
}

/// A shortest even cycle, ties broken by the lexicographically smallest
/// sorted vertex set. The cycle is returned starting at its minimum vertex.
pub fn shortest_even_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut len = 4;
    while len <= n {
        let mut best: Option<(Vec<Vertex>, Vec<Vertex>)> = None;
        for s in g.vertices() {
            let mut path = vec![s];
            let mut used = vec![false; n];
            used[s] = true;
            cycles_from(g, s, len, &mut path, &mut used, &mut |cycle| {
                let mut key = cycle.to_vec();
                key.sort_unstable();
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, cycle.to_vec()));
                }
            });
        }
        if let Some((_, cycle)) = best {
            return Some(cycle);
        }
        len += 2;
    }
    None
}

// Cycles of exactly `len` vertices whose minimum vertex is `s`.
fn cycles_from(
    g: &Graph,
    s: Vertex,
    len: usize,
    path: &mut Vec<Vertex>,
    used: &mut [bool],
    found: &mut dyn FnMut(&[Vertex]),
) {
    let x = *path.last().unwrap();
    if path.len() == len {
        if g.has_edge(x, s) && path[1] < x {
            found(path);
        }
        return;
    }
    for y in g.neighbors(x) {
        if y > s && !used[y] {
            used[y] = true;
            path.push(y);
            cycles_from(g, s, len, path, used, found);
            path.pop();
            used[y] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&complete(4)), Ok(1));
        assert_eq!(diameter(&cycle(7)), Ok(3));
        assert_eq!(diameter(&petersen()), Ok(2));
        assert_eq!(diameter(&Graph::new(3, [(0, 1)]).unwrap()), Err(GraphError::Disconnected));
    }

    #[test]
    fn fan_on_square() {
        // v=0, a=1, w=2, b=3
        let g = cycle(4);
        let fan = two_fan(&g, 0, &[1, 3]).unwrap();
        assert_eq!(fan, [vec![0, 1], vec![0, 3]]);
    }

    #[test]
    fn fan_on_k4() {
        let fan = two_fan(&complete(4), 0, &[2, 3]).unwrap();
        assert_eq!(fan, [vec![0, 2], vec![0, 3]]);
    }

    #[test]
    fn fan_preconditions() {
        assert!(matches!(two_fan(&path(4), 0, &[2, 3]), Err(FanError::Precondition(_))));
        assert!(matches!(two_fan(&cycle(4), 0, &[0, 3]), Err(FanError::Precondition(_))));
        assert!(matches!(two_fan(&cycle(4), 0, &[3]), Err(FanError::Precondition(_))));
    }

    #[test]
    fn even_cycles() {
        assert_eq!(shortest_even_cycle(&cycle(5)), None);
        assert_eq!(shortest_even_cycle(&cycle(6)).map(|c| c.len()), Some(6));
        let c = shortest_even_cycle(&complete(4)).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c[0], 0);
    }
}
