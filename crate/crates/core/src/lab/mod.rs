//! A family of 2-connected graphs with minimum degree 3 that need three
//! colors, and the tools to check and attack it.
//!
//! Six connectors `a, a', b, b', c, c'` sit on a hexagon whose alternate
//! sides are the linking edges `a'b`, `b'c` and `c'a`. Each remaining side,
//! say `a`–`a'`, is replaced by a gadget pair of two halves `A` and `A'`.
//! A half is a chain of three bipartite blocks joined by two cut edges `f`
//! (nearer `a`) and `f'`, entered by an edge `a a1` and left by `a2 a'`.
//! Block entry and exit vertices lie on opposite sides (odd block) or the
//! same side (even block), which fixes the parity of every `a`–`a'` path
//! through a half; the two halves get opposite parities.

mod refute;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use refute::{
    find_one_way_vertex, refute_2_coloring, structural_refutation, Exit, OneWayVertex, Refutation, RefutationMethod,
    RefutationWitness,
};

use crate::graph::{
    bipartition, bridges_and_cut_vertices, distances_from, edge_connectivity, vertex_connectivity, Graph, GraphError,
    Vertex,
};
use crate::proper::ColoringError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("scale must be at least 1")]
    ZeroScale,
    #[error("gadget index {0} out of range")]
    NoSuchGadget(usize),
    #[error("expected a 2-coloring, found {0} colors in use")]
    NotTwoColoring(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    /// Blocks `K(s+2, s+2)`: every vertex has degree at least 3.
    K33,
    /// Blocks are paths, down to single vertices at scale 1.
    #[serde(rename = "mini")]
    MiniPath,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub entry: Vertex,
    pub exit: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Half {
    pub name: String,
    /// `a1`: joined to the gadget's entry connector.
    pub attach_entry: Vertex,
    /// `a2`: joined to the gadget's exit connector.
    pub attach_exit: Vertex,
    /// `[f, f']`, each as (end nearer the entry, end nearer the exit).
    pub cut_edges: [(Vertex, Vertex); 2],
    pub blocks: Vec<Block>,
    /// Parity of the length of every entry-to-exit path through the half.
    pub parity: u8,
}

impl Half {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.blocks.iter().flat_map(|b| b.vertices.iter().copied()).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetPair {
    pub name: String,
    /// `a` for the pair `(A, A')`.
    pub entry: Vertex,
    /// `a'`.
    pub exit: Vertex,
    /// `ac'`, as (inside end, outside end).
    pub entry_link: (Vertex, Vertex),
    /// `a'b`, as (inside end, outside end).
    pub exit_link: (Vertex, Vertex),
    pub halves: [Half; 2],
}

impl GadgetPair {
    /// `A ∪ A'` plus the two connectors.
    pub fn region(&self) -> Vec<Vertex> {
        let mut v = self.halves[0].vertices();
        v.extend(self.halves[1].vertices());
        v.extend([self.entry, self.exit]);
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetSpec {
    pub kind: BlockKind,
    pub scale: usize,
    /// `[a, a', b, b', c, c']`.
    pub connectors: [Vertex; 6],
    /// `[a'b, b'c, c'a]`.
    pub linking_edges: [(Vertex, Vertex); 3],
    pub gadgets: Vec<GadgetPair>,
}

struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn fresh(&mut self, count: usize) -> Vec<Vertex> {
        let out = (self.n..self.n + count).collect();
        self.n += count;
        out
    }

    fn block(&mut self, kind: BlockKind, scale: usize, odd: bool) -> Block {
        match kind {
            BlockKind::K33 => {
                let t = scale + 2;
                let left = self.fresh(t);
                let right = self.fresh(t);
                for &x in &left {
                    for &y in &right {
                        self.edges.push((x, y));
                    }
                }
                let exit = if odd { right[0] } else { left[1] };
                Block { vertices: [left.clone(), right].concat(), entry: left[0], exit }
            }
            BlockKind::MiniPath => {
                let len = if odd { 2 * scale - 1 } else { 2 * (scale - 1) };
                let verts = self.fresh(len + 1);
                for w in verts.windows(2) {
                    self.edges.push((w[0], w[1]));
                }
                Block { entry: verts[0], exit: *verts.last().unwrap(), vertices: verts }
            }
        }
    }

    fn half(&mut self, name: String, kind: BlockKind, scale: usize, odd: [bool; 3], ends: (Vertex, Vertex)) -> Half {
        let blocks: Vec<Block> = odd.iter().map(|&o| self.block(kind, scale, o)).collect();
        let f = (blocks[0].exit, blocks[1].entry);
        let f2 = (blocks[1].exit, blocks[2].entry);
        self.edges.extend([f, f2, (ends.0, blocks[0].entry), (blocks[2].exit, ends.1)]);
        let parity = ((4 + odd.iter().filter(|&&o| o).count()) % 2) as u8;
        Half { name, attach_entry: blocks[0].entry, attach_exit: blocks[2].exit, cut_edges: [f, f2], blocks, parity }
    }
}

/// Builds the instance with the given block type at `scale`.
///
/// Scale 1 gives 114 vertices and 189 edges with `K(3,3)` blocks, and 27
/// vertices and 30 edges with path blocks.
pub fn build_counterexample(kind: BlockKind, scale: usize) -> Result<(Graph, GadgetSpec), LabError> {
    if scale == 0 {
        return Err(LabError::ZeroScale);
    }
    let mut b = Builder { n: 6, edges: Vec::new() };
    let [a, a2, bb, b2, c, c2] = [0, 1, 2, 3, 4, 5];
    let linking_edges = [(a2, bb), (b2, c), (c2, a)];
    b.edges.extend(linking_edges);
    let parities: [[bool; 3]; 2] = match kind {
        BlockKind::K33 => [[true, true, true], [true, false, true]],
        BlockKind::MiniPath => [[false, false, false], [false, true, false]],
    };
    // (name, entry, exit, entry link partner, exit link partner)
    let pairs = [("A", a, a2, c2, bb), ("B", bb, b2, a2, c), ("C", c, c2, b2, a)];
    let mut gadgets = Vec::new();
    for (name, entry, exit, before, after) in pairs {
        let h0 = b.half(name.to_string(), kind, scale, parities[0], (entry, exit));
        let h1 = b.half(format!("{name}'"), kind, scale, parities[1], (entry, exit));
        gadgets.push(GadgetPair {
            name: name.to_string(),
            entry,
            exit,
            entry_link: (entry, before),
            exit_link: (exit, after),
            halves: [h0, h1],
        });
    }
    let g = Graph::new(b.n, b.edges)?;
    Ok((g, GadgetSpec { kind, scale, connectors: [a, a2, bb, b2, c, c2], linking_edges, gadgets }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub checks: Vec<Check>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }
}

pub const CHECK_LAYOUT: &str = "layout";
pub const CHECK_LINKS: &str = "connector-hexagon";
pub const CHECK_ATTACH: &str = "half-attachments";
pub const CHECK_CUT_EDGES: &str = "two-cut-edges-per-half";
pub const CHECK_PARITY: &str = "opposite-parities";
pub const CHECK_MIN_DEGREE: &str = "min-degree-3";
pub const CHECK_CONNECTIVITY: &str = "connectivity-2";
pub const CHECK_LINK_CUT: &str = "links-form-min-edge-cut";
pub const CHECK_NONCOMPLETE: &str = "noncomplete";

/// Checks every structural property the instance is meant to have and
/// reports each one. Degree and connectivity are required for the `K33`
/// kind; for path blocks they are reported with `passed` set to whether
/// they hold, but only the minimum degree is expected to fail.
pub fn verify_gadget_structure(g: &Graph, spec: &GadgetSpec) -> StructureReport {
    let mut r = StructureReport::default();
    let n = g.n();
    let in_range =
        spec.connectors.iter().all(|&v| v < n) && spec.gadgets.iter().all(|p| p.region().iter().all(|&v| v < n));
    if !in_range || spec.gadgets.len() != 3 {
        r.push(CHECK_LAYOUT, false, "vertex ids out of range or not three gadget pairs");
        return r;
    }
    // halves partition the non-connector vertices
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut overlap = false;
    for (gi, p) in spec.gadgets.iter().enumerate() {
        for (hi, h) in p.halves.iter().enumerate() {
            for v in h.vertices() {
                overlap |= owner[v].is_some() || spec.connectors.contains(&v);
                owner[v] = Some((gi, hi));
            }
        }
    }
    let covered = g.vertices().all(|v| owner[v].is_some() || spec.connectors.contains(&v));
    r.push(CHECK_LAYOUT, covered && !overlap, format!("halves disjoint: {}, cover all: {covered}", !overlap));

    // connector edges are exactly the three linking edges, in hexagon order
    let [a, a2, b, b2, c, c2] = spec.connectors;
    let expected = [(a2, b), (b2, c), (c2, a)];
    let mut among: Vec<(Vertex, Vertex)> = Vec::new();
    for &x in &spec.connectors {
        for &y in &spec.connectors {
            if x < y && g.has_edge(x, y) {
                among.push((x, y));
            }
        }
    }
    let mut want: Vec<(Vertex, Vertex)> = expected.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    want.sort_unstable();
    let links_ok = among == want && spec.linking_edges == expected;
    r.push(CHECK_LINKS, links_ok, format!("edges among connectors {among:?}"));

    // each half meets the rest of the graph only through a a1 and a2 a'
    let mut attach_ok = true;
    let mut attach_detail = String::new();
    for p in &spec.gadgets {
        for h in &p.halves {
            let mine: Vec<Vertex> = h.vertices();
            let mut leaving: Vec<(Vertex, Vertex)> = Vec::new();
            for &v in &mine {
                for w in g.neighbors(v) {
                    if mine.binary_search(&w).is_err() {
                        leaving.push((v, w));
                    }
                }
            }
            leaving.sort_unstable();
            let mut want = vec![(h.attach_entry, p.entry), (h.attach_exit, p.exit)];
            want.sort_unstable();
            if leaving != want {
                attach_ok = false;
                attach_detail += &format!("{}: leaves via {leaving:?}; ", h.name);
            }
        }
    }
    r.push(CHECK_ATTACH, attach_ok, attach_detail);

    // cut edges of G[half] outside the blocks are exactly f and f', f first
    let mut cut_ok = true;
    let mut cut_detail = String::new();
    for h in spec.gadgets.iter().flat_map(|p| &p.halves) {
        let verts = h.vertices();
        let sub = g.induced_subgraph(&verts);
        let block_of = |v: Vertex| h.blocks.iter().position(|b| b.vertices.contains(&v));
        let mut between: Vec<(Vertex, Vertex)> = bridges_and_cut_vertices(&sub.graph)
            .bridges
            .iter()
            .map(|&e| {
                let (x, y) = sub.graph.edge(e);
                (sub.to_parent[x], sub.to_parent[y])
            })
            .filter(|&(x, y)| block_of(x) != block_of(y))
            .collect();
        between.sort_unstable();
        let mut declared: Vec<(Vertex, Vertex)> = h.cut_edges.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
        declared.sort_unstable();
        let d = distances_from(&sub.graph, sub.from_parent[h.attach_entry].unwrap());
        let dist = |v: Vertex| d[sub.from_parent[v].unwrap()];
        let [(v1, _), (v3, _)] = h.cut_edges;
        let ordered = matches!((dist(v1), dist(v3)), (Some(x), Some(y)) if x < y);
        if between != declared || !ordered {
            cut_ok = false;
            cut_detail += &format!("{}: cut edges {between:?}, f nearer entry: {ordered}; ", h.name);
        }
    }
    r.push(CHECK_CUT_EDGES, cut_ok, cut_detail);

    // parity bookkeeping: bipartite blocks chained entry to exit
    let mut parity_ok = true;
    let mut parity_detail = String::new();
    for p in &spec.gadgets {
        let mut got = [None, None];
        for (hi, h) in p.halves.iter().enumerate() {
            got[hi] = half_parity(g, h);
            if got[hi] != Some(h.parity) {
                parity_ok = false;
                parity_detail += &format!("{}: computed {:?}, declared {}; ", h.name, got[hi], h.parity);
            }
        }
        if got[0].is_none() || got[0] == got[1] {
            parity_ok = false;
            parity_detail += &format!("{}: halves {:?} not opposite; ", p.name, got);
        }
    }
    r.push(CHECK_PARITY, parity_ok, parity_detail);

    let delta = g.min_degree();
    r.push(CHECK_MIN_DEGREE, delta >= 3, format!("min degree {delta}"));
    let kappa = vertex_connectivity(g);
    r.push(CHECK_CONNECTIVITY, kappa == 2, format!("vertex connectivity {kappa}"));
    let kp = edge_connectivity(g);
    let p = &spec.gadgets[0];
    let cut = [p.entry_link, p.exit_link].map(|(x, y)| g.edge_id(x, y));
    let separates = match cut {
        [Some(e1), Some(e2)] => !g.without_edges(&[e1, e2]).is_connected(),
        _ => false,
    };
    r.push(CHECK_LINK_CUT, kp == 2 && separates, format!("edge connectivity {kp}, links separate: {separates}"));
    r.push(CHECK_NONCOMPLETE, !g.is_complete(), "");
    r
}

/// Entry-to-exit path parity through `h`, if every block is connected and
/// bipartite and the chain is wired entry to exit.
fn half_parity(g: &Graph, h: &Half) -> Option<u8> {
    let [(v1, v2), (v3, v4)] = h.cut_edges;
    let chained = h.blocks.len() == 3
        && h.attach_entry == h.blocks[0].entry
        && v1 == h.blocks[0].exit
        && v2 == h.blocks[1].entry
        && v3 == h.blocks[1].exit
        && v4 == h.blocks[2].entry
        && h.attach_exit == h.blocks[2].exit;
    if !chained {
        return None;
    }
    let mut total = 4u8;
    for b in &h.blocks {
        let sub = g.induced_subgraph(&b.vertices);
        if !sub.graph.is_connected() {
            return None;
        }
        let bp = bipartition(&sub.graph)?;
        let sides = bp.sides(sub.graph.n());
        let (x, y) = (sub.from_parent[b.entry]?, sub.from_parent[b.exit]?);
        if sides[x] != sides[y] {
            total += 1;
        }
    }
    Some(total % 2)
}
