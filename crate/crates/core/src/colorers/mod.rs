//! Constructive colorings: bridgeless bipartite graphs, 2-connected graphs,
//! 3-edge-connected graphs, single vertex additions and the diameter-3
//! pipeline in [`diam3`]. Every coloring returned here has been verified.

pub mod diam3;
mod ears;

use thiserror::Error;

pub use diam3::{
    classify_diam3, color_diam3, color_diam3_with, Case1Parts, Case2Parts, Diam3Case, Diam3Coloring,
    Diam3Decomposition, Diam3Options,
};

use crate::graph::{
    bridges_and_cut_vertices, edge_connectivity, is_k_edge_connected, is_two_connected, max_cut_bipartite_subgraph,
    odd_cycle, two_fan, EdgeId, Graph, GraphError, Vertex,
};
use crate::proper::{self, Color, ColoringError, EdgeColoring};
use crate::solver::{exists_pc_coloring, Search, SearchBudget};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is complete")]
    Complete,
    #[error("edge connectivity is {0}, at least 3 needed")]
    EdgeConnectivityTooLow(usize),
    #[error("diameter is {0}, 3 needed")]
    WrongDiameter(usize),
    #[error("graph has an odd cycle {0:?}")]
    NotBipartite(Vec<Vertex>),
    #[error("edge {0}-{1} is a bridge")]
    Bridge(Vertex, Vertex),
    #[error("subgraph is not a connected spanning subgraph")]
    NotSpanning,
    #[error("given coloring leaves pair {0:?} without a proper path")]
    InputNotProperConnected((Vertex, Vertex)),
    #[error("a new vertex needs at least two attachments, got {0}")]
    TooFewAttachments(usize),
    #[error("no coloring of the new edges works with the existing coloring")]
    LocalExtensionFailed,
    #[error("no outside vertex has two neighbors in the grown subgraph (first outside vertex {vertex}, fan {fan:?})")]
    GrowthStalled { vertex: Vertex, fan: Option<[Vec<Vertex>; 2]> },
    #[error("{case}: construction step failed ({detail}){}", pair.map(|(u, v)| format!(", pair {u}-{v}")).unwrap_or_default())]
    ProofStepFalsified { case: &'static str, detail: String, pair: Option<(Vertex, Vertex)> },
    #[error("search found no coloring: {0}")]
    SearchFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Node budget for the small searches used as fallbacks.
const FALLBACK_BUDGET: u64 = 2_000_000;

/// Extends a coloring of the connected spanning subgraph `h` to `g`, giving
/// the extra edges color 1. Every proper path of `h` survives in `g`.
pub fn lift_spanning_coloring(g: &Graph, h: &Graph, c_h: &EdgeColoring) -> Result<EdgeColoring, ColorError> {
    if !h.is_spanning_subgraph_of(g) || !h.is_connected() {
        return Err(ColorError::NotSpanning);
    }
    c_h.check_against(h)?;
    let c = lift_unchecked(g, h, c_h);
    if let proper::Connectivity::Fails(u, v) =
        proper::is_proper_connected(g, &c).map_err(|_| ColorError::Disconnected)?
    {
        return Err(ColorError::InputNotProperConnected((u, v)));
    }
    Ok(c)
}

fn lift_unchecked(g: &Graph, h: &Graph, c_h: &EdgeColoring) -> EdgeColoring {
    let mut colors = vec![1; g.m()];
    for (e, &(a, b)) in h.edges().iter().enumerate() {
        colors[g.edge_id(a, b).expect("spanning subgraph edge")] = c_h.color(e);
    }
    EdgeColoring::new(c_h.k().max(1), colors).expect("colors in range")
}

/// Strong 2-coloring of a connected bridgeless bipartite graph.
///
/// Colors the starting cycle and every ear of an ear decomposition
/// alternately from its first vertex; an exhaustive search over 2-colorings
/// backs this up should the check ever fail.
pub fn strong_2_coloring_bipartite(h: &Graph) -> Result<EdgeColoring, ColorError> {
    if h.n() < 2 {
        return Err(ColorError::TooSmall);
    }
    if !h.is_connected() {
        return Err(ColorError::Disconnected);
    }
    if let Some(cycle) = odd_cycle(h) {
        return Err(ColorError::NotBipartite(cycle));
    }
    if let Some(&b) = bridges_and_cut_vertices(h).bridges.first() {
        let (u, v) = h.edge(b);
        return Err(ColorError::Bridge(u, v));
    }
    for shortest in [false, true] {
        if let Some(c) = ears::bipartite_ear_coloring(h, shortest) {
            if proper::first_strong_failure_among(h, &c, |_, _| true).is_none() {
                return Ok(c);
            }
        }
    }
    search_coloring(h, 2, true, "bridgeless bipartite")
}

fn search_coloring(g: &Graph, k: Color, strong: bool, what: &str) -> Result<EdgeColoring, ColorError> {
    match exists_pc_coloring(g, k, strong, SearchBudget::nodes(FALLBACK_BUDGET)) {
        Ok((Search::Found(c), _)) => Ok(c),
        Ok((Search::Absent, _)) => Err(ColorError::SearchFailed(format!("{what}: no {k}-coloring exists"))),
        Ok((Search::Inconclusive, _)) => Err(ColorError::SearchFailed(format!("{what}: budget exhausted"))),
        Err(e) => Err(ColorError::SearchFailed(format!("{what}: {e}"))),
    }
}

/// Adds a new vertex `g.n()` joined to `attach` and colors only its edges,
/// leaving `c` unchanged on `g`. Returns the enlarged graph and coloring.
pub fn extend_vertex_addition(
    g: &Graph,
    c: &EdgeColoring,
    attach: &[Vertex],
) -> Result<(Graph, EdgeColoring), ColorError> {
    if attach.len() < 2 {
        return Err(ColorError::TooFewAttachments(attach.len()));
    }
    c.check_against(g)?;
    let g2 = g.with_new_vertex(attach)?;
    let v = g.n();
    let mut colors = vec![0; g2.m()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        colors[g2.edge_id(a, b).unwrap()] = c.color(e);
    }
    let k = c.k().max(2);
    let colors = extend_at(&g2, &colors, k, v).ok_or(ColorError::LocalExtensionFailed)?;
    Ok((g2, EdgeColoring::new(k, colors)?))
}

/// Colors the uncolored edges at `v` (all of them incident to `v`) with
/// colors 1 and 2 so that `v` reaches every vertex. First the four choices
/// on the first two such edges with the rest at 1, then every assignment
/// (up to 2^16).
pub(crate) fn extend_at(g: &Graph, colors: &[Color], k: Color, v: Vertex) -> Option<Vec<Color>> {
    let new: Vec<EdgeId> = g.incident(v).iter().map(|&(_, e)| e).filter(|&e| colors[e] == 0).collect();
    let mut colors = colors.to_vec();
    let works = |colors: &[Color]| {
        let c = EdgeColoring::new(k, colors.to_vec()).expect("complete coloring");
        proper::first_failing_pair_among(g, &c, |a, b| a == v || b == v).is_none()
    };
    let d = new.len();
    let mut tried = std::collections::HashSet::new();
    let first_pass = (0..4u32).map(|code| code & 0b11);
    let full = (0..if d <= 16 { 1u32 << d } else { 0 }).collect::<Vec<_>>();
    for code in first_pass.chain(full) {
        if !tried.insert(code) {
            continue;
        }
        for (i, &e) in new.iter().enumerate() {
            colors[e] = if code >> i & 1 == 1 { 2 } else { 1 };
        }
        if works(&colors) {
            return Some(colors);
        }
    }
    None
}

/// A proper-connecting coloring with at most 3 colors and the strong
/// property, for a 2-connected graph. Uses 2 colors when a quick search
/// finds a strong 2-coloring.
pub fn color_2connected_3(g: &Graph) -> Result<EdgeColoring, ColorError> {
    if !is_two_connected(g) {
        return Err(ColorError::NotTwoConnected);
    }
    let strong = |c: &EdgeColoring| proper::first_strong_failure_among(g, c, |_, _| true).is_none();
    if odd_cycle(g).is_none() {
        for shortest in [false, true] {
            if let Some(c) = ears::bipartite_ear_coloring(g, shortest) {
                if strong(&c) {
                    return Ok(c);
                }
            }
        }
    }
    if g.m() <= 24 {
        if let Ok((Search::Found(c), _)) = exists_pc_coloring(g, 2, true, SearchBudget::nodes(200_000)) {
            return Ok(c);
        }
    }
    if let Some(c) = ears::strong_three_coloring_by_ears(g) {
        if strong(&c) {
            return Ok(c);
        }
    }
    search_coloring(g, 3, true, "2-connected")
}

/// Strong 2-coloring of a 3-edge-connected noncomplete graph: a locally
/// maximal cut gives a 2-edge-connected bipartite spanning subgraph, which
/// is colored along ears and lifted.
pub fn color_3ec(g: &Graph) -> Result<EdgeColoring, ColorError> {
    if g.is_complete() {
        return Err(ColorError::Complete);
    }
    if !is_k_edge_connected(g, 3) {
        return Err(ColorError::EdgeConnectivityTooLow(edge_connectivity(g)));
    }
    let h = max_cut_bipartite_subgraph(g);
    let strong = |c: &EdgeColoring| proper::first_strong_failure_among(g, c, |_, _| true);
    // the ear coloring is checked once, on g; the slower route through
    // strong_2_coloring_bipartite only runs if that check fails
    if let Some(c_h) = ears::bipartite_ear_coloring(&h.graph, false) {
        let c = lift_unchecked(g, &h.graph, &c_h);
        if strong(&c).is_none() {
            return Ok(c);
        }
    }
    if edge_connectivity(&h.graph) < 2 {
        return Err(ColorError::ProofStepFalsified {
            case: "ThreeEC",
            detail: "bipartite spanning subgraph has a bridge".into(),
            pair: None,
        });
    }
    let c_h = strong_2_coloring_bipartite(&h.graph)?;
    let c = lift_unchecked(g, &h.graph, &c_h);
    match strong(&c) {
        None => Ok(c),
        Some(pair) => Err(ColorError::ProofStepFalsified {
            case: "ThreeEC",
            detail: "lifted coloring is not strong".into(),
            pair: Some(pair),
        }),
    }
}

/// Grows the 2-coloring `c0` of `g[g0]` (local indices follow `g0` sorted
/// ascending) to all of `g`, one vertex at a time: the smallest outside
/// vertex with at least two neighbors inside is added, coloring only its new
/// edges when possible and re-solving the enlarged subgraph otherwise.
pub fn grow_by_degree2_additions(g: &Graph, g0: &[Vertex], c0: &EdgeColoring) -> Result<EdgeColoring, ColorError> {
    let mut inside = vec![false; g.n()];
    let mut verts: Vec<Vertex> = g0.to_vec();
    verts.sort_unstable();
    verts.dedup();
    for &v in &verts {
        inside[v] = true;
    }
    let seed = g.induced_subgraph(&verts);
    c0.check_against(&seed.graph)?;
    let mut colors: Vec<Color> = vec![0; g.m()];
    for e in 0..seed.graph.m() {
        colors[seed.parent_edge(g, e)] = c0.color(e);
    }
    while verts.len() < g.n() {
        let next = g.vertices().find(|&v| !inside[v] && g.neighbors(v).filter(|&w| inside[w]).count() >= 2);
        let Some(v) = next else {
            let vertex = g.vertices().find(|&v| !inside[v]).unwrap();
            let target: Vec<Vertex> = verts.clone();
            let fan = two_fan(g, vertex, &target).ok();
            return Err(ColorError::GrowthStalled { vertex, fan });
        };
        inside[v] = true;
        verts.insert(verts.partition_point(|&x| x < v), v);
        let sub = g.induced_subgraph(&verts);
        let local: Vec<Color> = (0..sub.graph.m()).map(|e| colors[sub.parent_edge(g, e)]).collect();
        let lv = sub.from_parent[v].unwrap();
        let solved = match extend_at(&sub.graph, &local, 2, lv) {
            Some(c) => c,
            None => search_coloring(&sub.graph, 2, false, "vertex addition")?.colors().to_vec(),
        };
        for (e, &c) in solved.iter().enumerate() {
            colors[sub.parent_edge(g, e)] = c;
        }
    }
    let c = EdgeColoring::new(2, colors)?;
    match proper::is_proper_connected(g, &c) {
        Ok(proper::Connectivity::Connected) => Ok(c),
        Ok(proper::Connectivity::Fails(u, v)) => Err(ColorError::ProofStepFalsified {
            case: "growth",
            detail: "grown coloring fails".into(),
            pair: Some((u, v)),
        }),
        Err(_) => Err(ColorError::Disconnected),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn strong(g: &Graph, c: &EdgeColoring) -> bool {
        proper::has_strong_property(g, c).unwrap().is_strong()
    }

    fn connected(g: &Graph, c: &EdgeColoring) -> bool {
        proper::is_proper_connected(g, c).unwrap().is_connected()
    }

    #[test]
    fn lift_examples() {
        let h = cycle(4);
        let c_h = EdgeColoring::new(2, vec![1, 2, 2, 1]).unwrap();
        assert_eq!(lift_spanning_coloring(&h, &h, &c_h).unwrap(), c_h);
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let c = lift_spanning_coloring(&g, &h, &c_h).unwrap();
        assert_eq!(c.color_of(&g, 0, 2), Some(1));
        let g = complete(5);
        let s = star(4);
        let c = lift_spanning_coloring(&g, &s, &EdgeColoring::new(4, vec![1, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(c.used_colors(), 4);
        assert_eq!(
            lift_spanning_coloring(&g, &path(4), &EdgeColoring::uniform(&path(4), 2, 1)),
            Err(ColorError::NotSpanning)
        );
    }

    #[test]
    fn bipartite_examples() {
        for g in [cycle(4), cycle(6), complete_bipartite(3, 3), hypercube(3)] {
            let c = strong_2_coloring_bipartite(&g).unwrap();
            assert!(strong(&g, &c));
            assert!(c.k() == 2);
        }
        assert!(matches!(strong_2_coloring_bipartite(&cycle(5)), Err(ColorError::NotBipartite(_))));
        assert_eq!(strong_2_coloring_bipartite(&path(2)), Err(ColorError::Bridge(0, 1)));
    }

    #[test]
    fn extension_examples() {
        let g = cycle(4);
        let c = EdgeColoring::new(2, vec![1, 2, 2, 1]).unwrap();
        let (g2, c2) = extend_vertex_addition(&g, &c, &[0, 1]).unwrap();
        assert!(connected(&g2, &c2));
        assert_eq!(
            c2.colors(),
            &{
                let mut old: Vec<Color> = vec![0; g2.m()];
                for (e, &(a, b)) in g.edges().iter().enumerate() {
                    old[g2.edge_id(a, b).unwrap()] = c.color(e);
                }
                for (e, &(a, b)) in g2.edges().iter().enumerate() {
                    if b == 4 || a == 4 {
                        old[e] = c2.color(e);
                    }
                }
                old
            }[..]
        );
        let g = complete(4);
        let (g2, c2) = extend_vertex_addition(&g, &EdgeColoring::uniform(&g, 1, 1), &[0, 1]).unwrap();
        assert!(connected(&g2, &c2));
        assert_eq!(
            extend_vertex_addition(&g, &EdgeColoring::uniform(&g, 1, 1), &[2]),
            Err(ColorError::TooFewAttachments(1))
        );
    }

    #[test]
    fn two_connected_examples() {
        // a 4-edge detour cannot both start and end off the direct edge's
        // color with two colors, so C5 needs a third for the strong property
        let c = color_2connected_3(&cycle(5)).unwrap();
        assert!(strong(&cycle(5), &c));
        assert_eq!(c.used_colors(), 3);
        let (two, _) = exists_pc_coloring(&cycle(5), 2, true, SearchBudget::unbounded()).unwrap();
        assert_eq!(two, Search::Absent);
        let c = color_2connected_3(&cycle(6)).unwrap();
        assert!(strong(&cycle(6), &c) && c.used_colors() == 2);
        for g in [complete(4), petersen(), wheel(7), prism(5), theta(&[2, 5, 8])] {
            let c = color_2connected_3(&g).unwrap();
            assert!(strong(&g, &c) && c.used_colors() <= 3);
        }
        assert_eq!(color_2connected_3(&path(3)), Err(ColorError::NotTwoConnected));
    }

    #[test]
    fn three_ec_examples() {
        for g in [petersen(), complete_bipartite(3, 3), hypercube(3), prism(4)] {
            let c = color_3ec(&g).unwrap();
            assert!(strong(&g, &c) && c.k() == 2);
        }
        assert_eq!(color_3ec(&complete(5)), Err(ColorError::Complete));
        assert_eq!(color_3ec(&cycle(5)), Err(ColorError::EdgeConnectivityTooLow(2)));
    }

    #[test]
    fn growth_examples() {
        let g = petersen();
        let c = color_3ec(&g).unwrap();
        let all: Vec<Vertex> = g.vertices().collect();
        assert_eq!(grow_by_degree2_additions(&g, &all, &c).unwrap(), c);
        // wheel without one spoke, grown from the rim
        let w = wheel(5);
        let spoke = w.edge_id(0, 1).unwrap();
        let g = w.without_edges(&[spoke]);
        let rim: Vec<Vertex> = (1..6).collect();
        let rim_graph = g.induced_subgraph(&rim).graph;
        let c0 = exists_pc_coloring(&rim_graph, 2, false, SearchBudget::unbounded()).unwrap().0.found().unwrap();
        let c = grow_by_degree2_additions(&g, &rim, &c0).unwrap();
        assert!(connected(&g, &c));
        // long cycle from an edge: nobody ever has two neighbors inside
        assert!(matches!(
            grow_by_degree2_additions(&cycle(6), &[0, 1], &EdgeColoring::uniform(&path(2), 2, 1)),
            Err(ColorError::GrowthStalled { .. })
        ));
    }
}
