//! Ear decompositions and the ear-by-ear colorings built on them.

use std::collections::VecDeque;

use crate::graph::{EdgeId, Graph, Vertex};
use crate::proper::{self, Color, EdgeColoring};

/// Shortest cycle of `g` as a vertex sequence (first vertex not repeated).
/// Ties go to the earliest edge in id order.
pub(crate) fn shortest_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let mut best: Option<Vec<Vertex>> = None;
    for e in 0..g.m() {
        let (a, b) = g.edge(e);
        if let Some(p) = bfs_path(g, b, |x| x == a, |x, y| !(x == b && y == a), |_| true) {
            if best.as_ref().is_none_or(|c| p.len() < c.len()) {
                best = Some(p);
            }
        }
    }
    best
}

/// BFS from `s` to the first vertex satisfying `goal`, stepping along edges
/// accepted by `step` and expanding only vertices accepted by `pass`.
fn bfs_path(
    g: &Graph,
    s: Vertex,
    goal: impl Fn(Vertex) -> bool,
    step: impl Fn(Vertex, Vertex) -> bool,
    pass: impl Fn(Vertex) -> bool,
) -> Option<Vec<Vertex>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if parent[y] != usize::MAX || !step(x, y) {
                continue;
            }
            parent[y] = x;
            if goal(y) {
                let mut path = vec![y];
                let mut z = y;
                while z != s {
                    z = parent[z];
                    path.push(z);
                }
                path.reverse();
                return Some(path);
            }
            if pass(y) {
                queue.push_back(y);
            }
        }
    }
    None
}

/// An ear decomposition: a starting cycle and a sequence of ears, each a
/// path whose two ends already belong to the graph built so far and whose
/// interior is new. Closed ears (both ends equal) appear only when `open`
/// is false. Every edge of `g` ends up in exactly one piece.
pub(crate) struct EarDecomposition {
    pub cycle: Vec<Vertex>,
    pub ears: Vec<Vec<Vertex>>,
}

/// Shortest-ear-first decomposition. `None` if `g` is not 2-edge-connected
/// (or, with `open`, not 2-connected) or has no cycle.
pub(crate) fn ear_decomposition(g: &Graph, open: bool) -> Option<EarDecomposition> {
    let cycle = shortest_cycle(g)?;
    let mut in_h = vec![false; g.n()];
    let mut used = vec![false; g.m()];
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        used[g.edge_id(v, cycle[(i + 1) % cycle.len()]).unwrap()] = true;
    }
    let mut ears = Vec::new();
    let mut left = g.m() - cycle.len();
    while left > 0 {
        let ear = next_ear(g, &in_h, &used, open)?;
        for w in ear.windows(2) {
            used[g.edge_id(w[0], w[1]).unwrap()] = true;
        }
        for &v in &ear {
            in_h[v] = true;
        }
        left -= ear.len() - 1;
        ears.push(ear);
    }
    Some(EarDecomposition { cycle, ears })
}

fn next_ear(g: &Graph, in_h: &[bool], used: &[bool], open: bool) -> Option<Vec<Vertex>> {
    let mut best: Option<Vec<Vertex>> = None;
    for x in g.vertices().filter(|&x| in_h[x]) {
        for &(y, e) in g.incident(x) {
            if used[e] {
                continue;
            }
            if in_h[y] {
                return Some(vec![x, y]);
            }
            let tail = bfs_path(g, y, |z| in_h[z] && (!open || z != x), |a, b| !(a == y && b == x), |z| !in_h[z]);
            if let Some(tail) = tail {
                if best.as_ref().is_none_or(|b| tail.len() + 1 < b.len()) {
                    let mut ear = vec![x];
                    ear.extend(tail);
                    best = Some(ear);
                }
            }
        }
    }
    best
}

/// Chain decomposition from one depth-first search: each back edge, taken
/// in preorder of its upper end, starts a chain that climbs the tree until
/// it meets a vertex already covered. `None` unless `g` is connected and
/// bridgeless. Linear time; ears may be closed.
pub(crate) fn chain_decomposition(g: &Graph) -> Option<EarDecomposition> {
    let n = g.n();
    if n < 3 || !g.is_connected() {
        return None;
    }
    const NONE: usize = usize::MAX;
    let mut pre = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![(0, 0)];
    pre[0] = 0;
    order.push(0);
    while let Some(&mut (x, ref mut i)) = stack.last_mut() {
        if let Some(&(y, _)) = g.incident(x).get(*i) {
            *i += 1;
            if pre[y] == NONE {
                pre[y] = order.len();
                order.push(y);
                parent[y] = x;
                stack.push((y, 0));
            }
        } else {
            stack.pop();
        }
    }
    let mut covered = vec![false; n];
    let mut chains: Vec<Vec<Vertex>> = Vec::new();
    let mut used = 0;
    for &v in &order {
        for &(w, _) in g.incident(v) {
            // back edge v -> descendant w
            if pre[w] <= pre[v] || parent[w] == v {
                continue;
            }
            covered[v] = true;
            let mut chain = vec![v, w];
            let mut x = w;
            while !covered[x] {
                covered[x] = true;
                x = parent[x];
                chain.push(x);
            }
            used += chain.len() - 1;
            chains.push(chain);
        }
    }
    if used != g.m() || chains.is_empty() {
        return None;
    }
    let mut first = chains.remove(0);
    first.pop();
    Some(EarDecomposition { cycle: first, ears: chains })
}

fn ear_edges(g: &Graph, ear: &[Vertex]) -> Vec<EdgeId> {
    ear.windows(2).map(|w| g.edge_id(w[0], w[1]).unwrap()).collect()
}

/// Two-coloring of a connected bridgeless bipartite graph: the starting
/// cycle and every ear are colored 1, 2, 1, ... from their first vertex.
/// `shortest` picks shortest ears first; otherwise the linear-time chain
/// decomposition is used.
pub(crate) fn bipartite_ear_coloring(g: &Graph, shortest: bool) -> Option<EdgeColoring> {
    let dec = if shortest { ear_decomposition(g, false)? } else { chain_decomposition(g)? };
    let mut colors = vec![0; g.m()];
    let mut closed = dec.cycle.clone();
    closed.push(dec.cycle[0]);
    for piece in std::iter::once(&closed).chain(&dec.ears) {
        for (i, e) in ear_edges(g, piece).into_iter().enumerate() {
            colors[e] = if i % 2 == 0 { 1 } else { 2 };
        }
    }
    EdgeColoring::new(2, colors).ok()
}

/// Candidate colorings of an ear with `r` edges over colors 1..=3, most
/// regular first.
fn ear_candidates(r: usize) -> Vec<Vec<Color>> {
    const PAIRS: [(Color, Color); 6] = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)];
    let alt = |a: Color, b: Color| (0..r).map(|i| if i % 2 == 0 { a } else { b }).collect::<Vec<_>>();
    let mut out: Vec<Vec<Color>> = PAIRS.iter().map(|&(a, b)| alt(a, b)).collect();
    if r <= 5 {
        for code in 0..3usize.pow(r as u32) {
            let mut x = code;
            out.push(
                (0..r)
                    .map(|_| {
                        let c = (x % 3) as Color + 1;
                        x /= 3;
                        c
                    })
                    .collect(),
            );
        }
    } else {
        for first in 1..=3 {
            for last in 1..=3 {
                for &(a, b) in &PAIRS {
                    let mut c = alt(a, b);
                    c[0] = first;
                    c[r - 1] = last;
                    out.push(c);
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|c| seen.insert(c.clone()));
    out
}

/// Three-coloring of a 2-connected graph with the strong property, grown
/// along an open ear decomposition. Each ear takes the first candidate
/// coloring under which every pair involving its new vertices has a strong
/// witness in the graph built so far. Chords take color 1.
pub(crate) fn strong_three_coloring_by_ears(g: &Graph) -> Option<EdgeColoring> {
    let dec = ear_decomposition(g, true)?;
    let mut colors: Vec<Color> = vec![0; g.m()];
    let mut in_h = vec![false; g.n()];
    let mut closed = dec.cycle.clone();
    closed.push(dec.cycle[0]);
    let cyc = ear_edges(g, &closed);
    let len = cyc.len();
    let base: Vec<Vec<Color>> = if len.is_multiple_of(2) {
        vec![(0..len).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect()]
    } else {
        let mut c: Vec<Color> = (0..len).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect();
        c[len - 1] = 3;
        let mut more = vec![c];
        if len <= 7 {
            more.extend(ear_candidates(len));
        }
        more
    };
    for &v in &dec.cycle {
        in_h[v] = true;
    }
    let cycle_ok = base.into_iter().find(|cand| {
        for (&e, &c) in cyc.iter().zip(cand) {
            colors[e] = c;
        }
        strong_on_built(g, &colors, &in_h, &in_h)
    });
    cycle_ok?;
    for ear in &dec.ears {
        let edges = ear_edges(g, ear);
        if edges.len() == 1 {
            colors[edges[0]] = 1;
            continue;
        }
        let mut fresh = vec![false; g.n()];
        for &v in &ear[1..ear.len() - 1] {
            fresh[v] = true;
            in_h[v] = true;
        }
        let ok = ear_candidates(edges.len()).into_iter().any(|cand| {
            for (&e, &c) in edges.iter().zip(&cand) {
                colors[e] = c;
            }
            strong_on_built(g, &colors, &in_h, &fresh)
        });
        if !ok {
            return None;
        }
    }
    EdgeColoring::new(3, colors).ok()
}

/// Strong property of the colored part (vertices `in_h`, edges with nonzero
/// color) for pairs touching a `fresh` vertex.
fn strong_on_built(g: &Graph, colors: &[Color], in_h: &[bool], fresh: &[bool]) -> bool {
    let verts: Vec<Vertex> = g.vertices().filter(|&v| in_h[v]).collect();
    let edges: Vec<EdgeId> = (0..g.m()).filter(|&e| colors[e] != 0).collect();
    let sub = g.edge_subgraph(&verts, &edges);
    let local: Vec<Color> = (0..sub.graph.m()).map(|e| colors[sub.parent_edge(g, e)]).collect();
    let c = EdgeColoring::new(3, local).expect("colors in range");
    let to = &sub.to_parent;
    proper::first_strong_failure_among(&sub.graph, &c, |a, b| fresh[to[a]] || fresh[to[b]]).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn covers_once(g: &Graph, dec: &EarDecomposition) -> bool {
        let mut count = vec![0; g.m()];
        let mut closed = dec.cycle.clone();
        closed.push(dec.cycle[0]);
        for piece in std::iter::once(&closed).chain(&dec.ears) {
            for e in ear_edges(g, piece) {
                count[e] += 1;
            }
        }
        count.iter().all(|&c| c == 1)
    }

    #[test]
    fn decompositions_cover_every_edge_once() {
        for g in [cycle(5), complete(5), petersen(), complete_bipartite(3, 3), hypercube(3), theta(&[2, 3, 4])] {
            let dec = ear_decomposition(&g, true).unwrap();
            assert!(covers_once(&g, &dec));
            for ear in &dec.ears {
                assert_ne!(ear[0], *ear.last().unwrap());
            }
        }
        // two squares sharing a vertex: bridgeless, not 2-connected
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]).unwrap();
        assert!(ear_decomposition(&g, true).is_none());
        assert!(covers_once(&g, &ear_decomposition(&g, false).unwrap()));
        assert!(ear_decomposition(&path(4), false).is_none());
        for g in [cycle(5), complete(5), petersen(), hypercube(3), theta(&[2, 3, 4]), g.clone()] {
            assert!(covers_once(&g, &chain_decomposition(&g).unwrap()));
        }
        assert!(chain_decomposition(&path(4)).is_none());
        // a bridge between two triangles
        let b = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(chain_decomposition(&b).is_none());
    }

    #[test]
    fn ear_colorings_are_strong() {
        for g in [cycle(4), cycle(8), complete_bipartite(3, 3), hypercube(3), theta(&[3, 3, 5])] {
            for shortest in [true, false] {
                let c = bipartite_ear_coloring(&g, shortest).unwrap();
                assert!(proper::has_strong_property(&g, &c).unwrap().is_strong());
            }
        }
        for g in [cycle(5), complete(4), petersen(), wheel(6), theta(&[2, 4, 5])] {
            let c = strong_three_coloring_by_ears(&g).unwrap();
            assert!(proper::has_strong_property(&g, &c).unwrap().is_strong());
        }
    }
}
