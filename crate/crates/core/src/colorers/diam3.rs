//! Two-colorings of 2-connected noncomplete graphs of diameter 3.
//!
//! [`classify_diam3`] finds which construction applies:
//!
//! * `ThreeEC`: the graph is 3-edge-connected.
//! * `Case1Sub11` / `Case1Sub12`: some 2-edge cut `{u1u2, v1v2}` leaves two
//!   sides `H1 ∋ u1, v1` and `H2 ∋ u2, v2` of at least three vertices each.
//!   With `Qi = Hi - {ui, vi}`, `Qi0` are the common neighbors of `ui` and
//!   `vi` in `Qi`, `Qi1` the remaining neighbors of `ui` and `Qi2` those of
//!   `vi`. Labels are normalized so that `Q22` is empty; then `Q12` is empty
//!   (Sub11) or `Q21` is (Sub12).
//! * `Case2OddCycle`: no even cycle at all (checked before the cuts).
//! * `Case2Bipartite`: every 2-edge cut isolates at most two vertices. A
//!   maximal 2-edge-connected bipartite subgraph `H` then leaves only single
//!   vertices (`A`) and single edges (`B`) outside, and the edges are grouped
//!   into classes `C(a, b)` by their two attachment vertices.
//!
//! [`color_diam3`] builds a seed coloring for the case and grows it by
//! vertex additions. Each stage is checked; a failed check is reported as
//! [`ColorError::ProofStepFalsified`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    color_3ec, extend_at, grow_by_degree2_additions, search_coloring, strong_2_coloring_bipartite, ColorError,
};
use crate::graph::{
    diameter, edge_connectivity, is_two_connected, maximal_2ec_bipartite_subgraph, maximum_matching, odd_cycle,
    shortest_even_cycle, two_edge_cuts, EdgeId, Graph, Side, Vertex,
};
use crate::proper::{self, Color, EdgeColoring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Diam3Case {
    ThreeEC,
    #[serde(rename = "Case1_Sub11")]
    Case1Sub11,
    #[serde(rename = "Case1_Sub12")]
    Case1Sub12,
    #[serde(rename = "Case2_OddCycle")]
    Case2OddCycle,
    #[serde(rename = "Case2_Bipartite")]
    Case2Bipartite,
}

impl Diam3Case {
    pub const ALL: [Diam3Case; 5] = [
        Diam3Case::ThreeEC,
        Diam3Case::Case1Sub11,
        Diam3Case::Case1Sub12,
        Diam3Case::Case2OddCycle,
        Diam3Case::Case2Bipartite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Diam3Case::ThreeEC => "ThreeEC",
            Diam3Case::Case1Sub11 => "Case1_Sub11",
            Diam3Case::Case1Sub12 => "Case1_Sub12",
            Diam3Case::Case2OddCycle => "Case2_OddCycle",
            Diam3Case::Case2Bipartite => "Case2_Bipartite",
        }
    }
}

impl std::fmt::Display for Diam3Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The 2-edge cut and the sets hanging off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1Parts {
    /// `[u1u2, v1v2]`, as `(side 1 end, side 2 end)`.
    pub cut: [(Vertex, Vertex); 2],
    pub h1: Vec<Vertex>,
    pub h2: Vec<Vertex>,
    pub u1: Vertex,
    pub v1: Vertex,
    pub u2: Vertex,
    pub v2: Vertex,
    /// `q[i][j]` is `Q(i+1),j`.
    pub q: [[Vec<Vertex>; 3]; 2],
    /// Maximum matching between `Q11` and `Q12`, as `(Q11 end, Q12 end)`.
    pub matching: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Parts {
    pub h_vertices: Vec<Vertex>,
    pub side_u: Vec<Vertex>,
    pub side_v: Vec<Vertex>,
    pub h_edges: Vec<(Vertex, Vertex)>,
    /// Components of `G - H` with one vertex.
    pub singletons: Vec<Vertex>,
    /// Components of `G - H` with two vertices.
    pub edge_components: Vec<(Vertex, Vertex)>,
    /// Attachment pair of each edge component, ascending.
    pub attachments: Vec<(Vertex, Vertex)>,
    /// `C(a, b)`: indices into `edge_components` per attachment pair.
    pub classes: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diam3Decomposition {
    pub case: Diam3Case,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case1: Option<Case1Parts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case2: Option<Case2Parts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_cycle: Option<Vec<Vertex>>,
}

fn class_key(a: Vertex, b: Vertex) -> String {
    format!("{a}-{b}")
}

pub fn classify_diam3(g: &Graph) -> Result<Diam3Decomposition, ColorError> {
    if !g.is_connected() {
        return Err(ColorError::Disconnected);
    }
    if !is_two_connected(g) {
        return Err(ColorError::NotTwoConnected);
    }
    if g.is_complete() {
        return Err(ColorError::Complete);
    }
    let d = diameter(g)?;
    if d != 3 {
        return Err(ColorError::WrongDiameter(d));
    }
    let plain = |case| Diam3Decomposition { case, case1: None, case2: None, odd_cycle: None };
    if edge_connectivity(g) >= 3 {
        return Ok(plain(Diam3Case::ThreeEC));
    }
    // C7 also has 2-edge cuts with two large sides; odd cycles are taken
    // out first so they keep their own construction
    if shortest_even_cycle(g).is_none() {
        let cycle = odd_cycle(g).expect("a 2-connected graph without even cycles is an odd cycle");
        return Ok(Diam3Decomposition { odd_cycle: Some(cycle), ..plain(Diam3Case::Case2OddCycle) });
    }
    if let Some((case, parts)) = case1(g)? {
        return Ok(Diam3Decomposition { case1: Some(parts), ..plain(case) });
    }
    Ok(Diam3Decomposition { case2: Some(case2(g)?), ..plain(Diam3Case::Case2Bipartite) })
}

fn falsified(case: Diam3Case, detail: impl Into<String>, pair: Option<(Vertex, Vertex)>) -> ColorError {
    ColorError::ProofStepFalsified { case: case.name(), detail: detail.into(), pair }
}

fn case1(g: &Graph) -> Result<Option<(Diam3Case, Case1Parts)>, ColorError> {
    let mut cuts = two_edge_cuts(g);
    cuts.sort_unstable();
    for (e1, e2) in cuts {
        let rest = g.without_edges(&[e1, e2]);
        let comps = rest.components();
        if comps.len() != 2 || comps.iter().any(|c| c.len() < 3) {
            continue;
        }
        let (_, label) = rest.component_labels();
        let [side_a, side_b] = [comps[0].clone(), comps[1].clone()];
        let in_a = |v: Vertex| label[v] == label[side_a[0]];
        let split = |e: EdgeId| {
            let (x, y) = g.edge(e);
            if in_a(x) {
                (x, y)
            } else {
                (y, x)
            }
        };
        let (p, q) = (split(e1), split(e2));
        // relabelings: identity, swap the cut edges, swap the sides, both
        let labelings = [
            (side_a.clone(), side_b.clone(), p, q),
            (side_a.clone(), side_b.clone(), q, p),
            (side_b.clone(), side_a.clone(), (p.1, p.0), (q.1, q.0)),
            (side_b.clone(), side_a.clone(), (q.1, q.0), (p.1, p.0)),
        ];
        let parts: Vec<Case1Parts> =
            labelings.into_iter().map(|(h1, h2, uu, vv)| case1_parts(g, h1, h2, uu, vv)).collect();
        let empty = |p: &Case1Parts, i: usize, j: usize| p.q[i][j].is_empty();
        if let Some(p) = parts.iter().find(|p| empty(p, 1, 2) && empty(p, 0, 2)) {
            return Ok(Some((Diam3Case::Case1Sub11, p.clone())));
        }
        if let Some(p) = parts.into_iter().find(|p| empty(p, 1, 2) && empty(p, 1, 1)) {
            let mut p = p;
            let m = maximum_matching(g, &p.q[0][1], &p.q[0][2]);
            let in_q11 = |v: Vertex| p.q[0][1].binary_search(&v).is_ok();
            p.matching = m
                .into_iter()
                .map(|e| {
                    let (x, y) = g.edge(e);
                    if in_q11(x) {
                        (x, y)
                    } else {
                        (y, x)
                    }
                })
                .collect();
            p.matching.sort_unstable();
            return Ok(Some((Diam3Case::Case1Sub12, p)));
        }
        return Err(falsified(
            Diam3Case::Case1Sub11,
            format!("no labeling of cut {:?},{:?} empties Q22 together with Q12 or Q21", g.edge(e1), g.edge(e2)),
            None,
        ));
    }
    Ok(None)
}

fn case1_parts(
    g: &Graph,
    h1: Vec<Vertex>,
    h2: Vec<Vertex>,
    (u1, u2): (Vertex, Vertex),
    (v1, v2): (Vertex, Vertex),
) -> Case1Parts {
    let q_sets = |h: &[Vertex], u: Vertex, v: Vertex| {
        let mut out: [Vec<Vertex>; 3] = Default::default();
        for &w in h {
            if w == u || w == v {
                continue;
            }
            match (g.has_edge(w, u), g.has_edge(w, v)) {
                (true, true) => out[0].push(w),
                (true, false) => out[1].push(w),
                (false, true) => out[2].push(w),
                (false, false) => {}
            }
        }
        out
    };
    Case1Parts {
        cut: [(u1, u2), (v1, v2)],
        q: [q_sets(&h1, u1, v1), q_sets(&h2, u2, v2)],
        h1,
        h2,
        u1,
        v1,
        u2,
        v2,
        matching: Vec::new(),
    }
}

fn case2(g: &Graph) -> Result<Case2Parts, ColorError> {
    let case = Diam3Case::Case2Bipartite;
    let core = maximal_2ec_bipartite_subgraph(g).map_err(|e| falsified(case, e.to_string(), None))?;
    let sides = core.bipartition.sides(g.n());
    let outside: Vec<Vertex> = g.vertices().filter(|&v| !core.contains(v)).collect();
    let rest = g.induced_subgraph(&outside);
    let mut singletons = Vec::new();
    let mut edge_components = Vec::new();
    let mut attachments = Vec::new();
    for comp in rest.graph.components() {
        let verts: Vec<Vertex> = comp.iter().map(|&v| rest.to_parent[v]).collect();
        match verts[..] {
            [a] => singletons.push(a),
            [x, y] => {
                let mut nb: Vec<Vertex> = g.neighbors(x).chain(g.neighbors(y)).filter(|&w| w != x && w != y).collect();
                nb.sort_unstable();
                nb.dedup();
                if nb.len() != 2 {
                    return Err(falsified(case, format!("edge component {x}-{y} has attachments {nb:?}"), None));
                }
                if sides[nb[0]] != sides[nb[1]] {
                    return Err(falsified(case, format!("edge component {x}-{y} attaches across H"), None));
                }
                edge_components.push((x.min(y), x.max(y)));
                attachments.push((nb[0], nb[1]));
            }
            _ => return Err(falsified(case, format!("component {verts:?} of G-H is larger than an edge"), None)),
        }
    }
    let mut classes: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in attachments.iter().enumerate() {
        classes.entry(class_key(a, b)).or_default().push(i);
    }
    let pick = |s: Side| core.vertices.iter().copied().filter(|&v| sides[v] == Some(s)).collect();
    Ok(Case2Parts {
        side_u: pick(Side::U),
        side_v: pick(Side::V),
        h_edges: core.edges.iter().map(|&e| g.edge(e)).collect(),
        h_vertices: core.vertices.clone(),
        singletons,
        edge_components,
        attachments,
        classes,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Diam3Options {
    /// On a failed construction step, search for a 2-coloring of the whole
    /// graph instead of returning the error.
    pub fallback_search: bool,
}

/// A diameter-3 coloring together with the decomposition that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diam3Coloring {
    pub coloring: EdgeColoring,
    pub decomposition: Diam3Decomposition,
    /// Set when the construction failed and search supplied the coloring;
    /// carries the construction's error.
    pub fallback: Option<ColorError>,
}

/// Verified 2-coloring of a 2-connected noncomplete graph of diameter 3.
pub fn color_diam3(g: &Graph) -> Result<EdgeColoring, ColorError> {
    color_diam3_with(g, Diam3Options::default()).map(|r| r.coloring)
}

pub fn color_diam3_with(g: &Graph, opts: Diam3Options) -> Result<Diam3Coloring, ColorError> {
    let dec = classify_diam3(g)?;
    let built = construct(g, &dec).and_then(|c| match proper::is_proper_connected(g, &c) {
        Ok(proper::Connectivity::Connected) if c.k() == 2 => Ok(c),
        Ok(proper::Connectivity::Connected) => Err(falsified(dec.case, "more than two colors", None)),
        Ok(proper::Connectivity::Fails(u, v)) => Err(falsified(dec.case, "final coloring fails", Some((u, v)))),
        Err(_) => Err(ColorError::Disconnected),
    });
    match built {
        Ok(coloring) => Ok(Diam3Coloring { coloring, decomposition: dec, fallback: None }),
        Err(e) if opts.fallback_search => {
            let coloring = search_coloring(g, 2, false, "diameter-3 fallback")?;
            Ok(Diam3Coloring { coloring, decomposition: dec, fallback: Some(e) })
        }
        Err(e) => Err(e),
    }
}

fn construct(g: &Graph, dec: &Diam3Decomposition) -> Result<EdgeColoring, ColorError> {
    match dec.case {
        Diam3Case::ThreeEC => color_3ec(g),
        Diam3Case::Case1Sub11 => {
            let p = dec.case1.as_ref().unwrap();
            let (seed, c0) = sub11_seed(g, p)?;
            grow_by_degree2_additions(g, &seed, &c0)
        }
        Diam3Case::Case1Sub12 => {
            let p = dec.case1.as_ref().unwrap();
            let (seed, c0) = if p.matching.is_empty() { sub11_seed(g, p)? } else { sub12_seed(g, p)? };
            grow_by_degree2_additions(g, &seed, &c0)
        }
        Diam3Case::Case2OddCycle => {
            let cycle = dec.odd_cycle.as_ref().unwrap();
            let mut colors = vec![0; g.m()];
            for i in 0..cycle.len() {
                let e = g.edge_id(cycle[i], cycle[(i + 1) % cycle.len()]).unwrap();
                colors[e] = if i % 2 == 0 { 1 } else { 2 };
            }
            if colors.contains(&0) {
                return Err(falsified(dec.case, "graph has edges off its odd cycle", None));
            }
            Ok(EdgeColoring::new(2, colors)?)
        }
        Diam3Case::Case2Bipartite => case2_coloring(g, dec.case2.as_ref().unwrap()),
    }
}

/// Maps a coloring of the spanning subgraph of `g[verts]` made of
/// `edges` (parent pairs) onto the induced subgraph, other edges at `rest`.
fn seed_coloring(
    g: &Graph,
    verts: &[Vertex],
    parts: &[((Vertex, Vertex), Color)],
    rest: Color,
) -> (Graph, EdgeColoring) {
    let sub = g.induced_subgraph(verts);
    let mut colors = vec![rest; sub.graph.m()];
    for &((a, b), c) in parts {
        let (x, y) = (sub.from_parent[a].unwrap(), sub.from_parent[b].unwrap());
        colors[sub.graph.edge_id(x, y).unwrap()] = c;
    }
    (sub.graph, EdgeColoring::new(2, colors).expect("two colors"))
}

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Seed `G[{u1, v1, u2, v2} ∪ Q10 ∪ Q20]`, colored through its spanning
/// subgraph `K(2, |Q10|) ∪ K(2, |Q20|)` plus the cut edges, which is
/// 2-connected and bipartite as soon as both common-neighbor sets are
/// nonempty.
fn sub11_seed(g: &Graph, p: &Case1Parts) -> Result<(Vec<Vertex>, EdgeColoring), ColorError> {
    let case = Diam3Case::Case1Sub11;
    if p.q[0][0].is_empty() || p.q[1][0].is_empty() {
        return Err(falsified(case, "a common-neighbor set Q10 or Q20 is empty", None));
    }
    let mut skeleton = vec![(p.u1, p.u2), (p.v1, p.v2)];
    for &w in &p.q[0][0] {
        skeleton.extend([(p.u1, w), (p.v1, w)]);
    }
    for &w in &p.q[1][0] {
        skeleton.extend([(p.u2, w), (p.v2, w)]);
    }
    let verts = sorted([&[p.u1, p.v1, p.u2, p.v2][..], &p.q[0][0], &p.q[1][0]].concat());
    let sub = g.induced_subgraph(&verts);
    let local = |(a, b): (Vertex, Vertex)| (sub.from_parent[a].unwrap(), sub.from_parent[b].unwrap());
    let skel = Graph::new(verts.len(), skeleton.iter().map(|&e| local(e)))?;
    let c_skel =
        strong_2_coloring_bipartite(&skel).map_err(|e| falsified(case, format!("seed skeleton: {e}"), None))?;
    let parts: Vec<((Vertex, Vertex), Color)> = skel
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| ((sub.to_parent[a], sub.to_parent[b]), c_skel.color(e)))
        .collect();
    let (seed, c0) = seed_coloring(g, &verts, &parts, 1);
    if let Some(pair) = proper::first_failing_pair_among(&seed, &c0, |_, _| true) {
        return Err(falsified(case, "lifted seed coloring fails", Some(pair)));
    }
    Ok((verts, c0))
}

/// Candidate colorings of a part: a strong coloring and its color swap when
/// the part is 2-connected bipartite, every coloring otherwise.
fn part_candidates(edges: &[(Vertex, Vertex)]) -> Vec<Vec<Color>> {
    if edges.is_empty() {
        return vec![Vec::new()];
    }
    let mut ids: Vec<Vertex> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let at = |v: Vertex| ids.binary_search(&v).unwrap();
    let part = Graph::new(ids.len(), edges.iter().map(|&(a, b)| (at(a), at(b)))).expect("simple part");
    if let Ok(c) = strong_2_coloring_bipartite(&part) {
        let order = |c: &EdgeColoring| -> Vec<Color> {
            edges.iter().map(|&(a, b)| c.color(part.edge_id(at(a), at(b)).unwrap())).collect()
        };
        let base = order(&c);
        let swapped = base.iter().map(|&x| 3 - x).collect();
        return vec![base, swapped];
    }
    let r = edges.len().min(12);
    (0..1u32 << r)
        .map(|code| (0..edges.len()).map(|i| if i < r && code >> i & 1 == 1 { 2 } else { 1 }).collect())
        .collect()
}

/// Seed `G[{u1, u2, v1, v2} ∪ V(M) ∪ Q20]`: strong colorings of the part
/// around `u2, v2, Q20` and of the paths `u1 x y v1` over the matching,
/// combined over both cut-edge colors and the color of the remaining edges.
fn sub12_seed(g: &Graph, p: &Case1Parts) -> Result<(Vec<Vertex>, EdgeColoring), ColorError> {
    let case = Diam3Case::Case1Sub12;
    let x_part: Vec<(Vertex, Vertex)> = p.q[1][0].iter().flat_map(|&w| [(p.u2, w), (p.v2, w)]).collect();
    let y_part: Vec<(Vertex, Vertex)> = p.matching.iter().flat_map(|&(x, y)| [(p.u1, x), (x, y), (y, p.v1)]).collect();
    let m_verts: Vec<Vertex> = p.matching.iter().flat_map(|&(x, y)| [x, y]).collect();
    let verts = sorted([&[p.u1, p.v1, p.u2, p.v2][..], &m_verts, &p.q[1][0]].concat());
    let xs = part_candidates(&x_part);
    let ys = part_candidates(&y_part);
    for cx in &xs {
        for cy in &ys {
            for cut in 0..4u8 {
                for rest in [1, 2] {
                    let mut parts: Vec<((Vertex, Vertex), Color)> =
                        x_part.iter().copied().zip(cx.iter().copied()).collect();
                    parts.extend(y_part.iter().copied().zip(cy.iter().copied()));
                    parts.push(((p.u1, p.u2), 1 + (cut & 1)));
                    parts.push(((p.v1, p.v2), 1 + (cut >> 1)));
                    let (seed, c0) = seed_coloring(g, &verts, &parts, rest);
                    if proper::first_failing_pair_among(&seed, &c0, |_, _| true).is_none() {
                        return Ok((verts, c0));
                    }
                }
            }
        }
    }
    let seed = g.induced_subgraph(&verts).graph;
    search_coloring(&seed, 2, false, "Case1_Sub12 seed")
        .map(|c| (verts, c))
        .map_err(|e| falsified(case, format!("seed: {e}"), None))
}

/// Colors `G - A`: `H` strongly, edges inside a side of `H` with 2, each
/// class `C(a, b)` by its own rule; then adds the singletons.
fn case2_coloring(g: &Graph, p: &Case2Parts) -> Result<EdgeColoring, ColorError> {
    let case = Diam3Case::Case2Bipartite;
    let mut colors: Vec<Color> = vec![0; g.m()];
    let h_ids: Vec<EdgeId> = p.h_edges.iter().map(|&(a, b)| g.edge_id(a, b).unwrap()).collect();
    let h = g.edge_subgraph(&p.h_vertices, &h_ids);
    let c_h = strong_2_coloring_bipartite(&h.graph).map_err(|e| falsified(case, format!("H: {e}"), None))?;
    for e in 0..h.graph.m() {
        colors[h.parent_edge(g, e)] = c_h.color(e);
    }
    let mut in_h = vec![false; g.n()];
    for &v in &p.h_vertices {
        in_h[v] = true;
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if in_h[a] && in_h[b] && colors[e] == 0 {
            colors[e] = 2;
        }
    }
    let mut by_pair: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
    for (i, &ab) in p.attachments.iter().enumerate() {
        by_pair.entry(ab).or_default().push(i);
    }
    for (&(a, b), members) in &by_pair {
        let mut verts = vec![a, b];
        for &i in members {
            verts.extend([p.edge_components[i].0, p.edge_components[i].1]);
        }
        let verts = sorted(verts);
        let sub = g.induced_subgraph(&verts);
        let ab_local = sub.graph.edge_id(sub.from_parent[a].unwrap(), sub.from_parent[b].unwrap());
        let part = sub.graph.without_edges(&ab_local.into_iter().collect::<Vec<_>>());
        let local_colors: Vec<Color> = if members.len() >= 2 {
            let c = strong_2_coloring_bipartite(&part)
                .map_err(|e| falsified(case, format!("class C({a},{b}): {e}"), None))?;
            c.colors().to_vec()
        } else {
            // a path a x y b: pendant edges 1, central edge 2
            let la = sub.from_parent[a].unwrap();
            let lb = sub.from_parent[b].unwrap();
            if part.m() != 3 || part.degree(la) != 1 || part.degree(lb) != 1 {
                return Err(falsified(case, format!("class C({a},{b}) is not a path of length 3"), None));
            }
            part.edges()
                .iter()
                .map(|&(x, y)| if [x, y].contains(&la) || [x, y].contains(&lb) { 1 } else { 2 })
                .collect()
        };
        for (e, &(x, y)) in part.edges().iter().enumerate() {
            let pe = g.edge_id(sub.to_parent[x], sub.to_parent[y]).unwrap();
            colors[pe] = local_colors[e];
        }
    }
    let mut in_a = vec![false; g.n()];
    for &v in &p.singletons {
        in_a[v] = true;
    }
    let keep: Vec<Vertex> = g.vertices().filter(|&v| !in_a[v]).collect();
    let base = g.induced_subgraph(&keep);
    let base_colors: Vec<Color> = (0..base.graph.m()).map(|e| colors[base.parent_edge(g, e)]).collect();
    if base_colors.contains(&0) {
        return Err(falsified(case, "an edge of G - A was left uncolored", None));
    }
    let c_base = EdgeColoring::new(2, base_colors)?;
    if let Some((u, v)) = proper::first_failing_pair_among(&base.graph, &c_base, |_, _| true) {
        return Err(falsified(case, "G - A is not proper connected", Some((base.to_parent[u], base.to_parent[v]))));
    }
    if p.singletons.is_empty() {
        return Ok(c_base);
    }
    // each singleton has degree 2 into H; add them one by one
    let mut full = colors.clone();
    for &a in &p.singletons {
        for &(_, e) in g.incident(a) {
            full[e] = 0;
        }
    }
    let mut added = keep.clone();
    for &a in &p.singletons {
        added.insert(added.partition_point(|&x| x < a), a);
        let sub = g.induced_subgraph(&added);
        let local: Vec<Color> = (0..sub.graph.m()).map(|e| full[sub.parent_edge(g, e)]).collect();
        let done = extend_at(&sub.graph, &local, 2, sub.from_parent[a].unwrap());
        let Some(done) = done else {
            return grow_by_degree2_additions(g, &keep, &c_base);
        };
        for (e, &c) in done.iter().enumerate() {
            full[sub.parent_edge(g, e)] = c;
        }
    }
    Ok(EdgeColoring::new(2, full)?)
}
