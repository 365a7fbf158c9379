//! Properly colored paths: existence, proper connectedness and the strong
//! property, each answer backed by a checkable certificate.

mod certificate;
mod coloring;
pub mod engine;

use std::collections::BTreeMap;

use thiserror::Error;

pub use certificate::{CertificateError, ProperPathCertificate, StrongWitness};
pub use coloring::{Color, ColoringError, ColoringFile, EdgeColoring};
pub use engine::{mask_of, ColorMask, Engine, PathQuery, WalkTree, ANY_COLOR};

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProperError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Outcome of a proper-connectedness check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    /// Lexicographically first pair with no proper path.
    Fails(Vertex, Vertex),
}

impl Connectivity {
    pub fn is_connected(self) -> bool {
        self == Connectivity::Connected
    }

    pub fn failing_pair(self) -> Option<(Vertex, Vertex)> {
        match self {
            Connectivity::Connected => None,
            Connectivity::Fails(u, v) => Some((u, v)),
        }
    }
}

/// Outcome of a strong-property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongCheck {
    /// One witness per pair `u < v`.
    Strong(BTreeMap<(Vertex, Vertex), StrongWitness>),
    Fails(Vertex, Vertex),
}

impl StrongCheck {
    pub fn is_strong(&self) -> bool {
        matches!(self, StrongCheck::Strong(_))
    }

    pub fn failing_pair(&self) -> Option<(Vertex, Vertex)> {
        match *self {
            StrongCheck::Strong(_) => None,
            StrongCheck::Fails(u, v) => Some((u, v)),
        }
    }
}

fn checked<'a>(g: &'a Graph, c: &'a EdgeColoring) -> Result<Engine<'a>, ProperError> {
    c.check_against(g)?;
    Ok(Engine::new(g, c.colors(), c.k()))
}

/// Is there a properly colored walk from `u` to `v`? A `false` answer rules
/// out a proper path; `true` proves nothing about paths.
pub fn proper_walk_exists(g: &Graph, c: &EdgeColoring, u: Vertex, v: Vertex) -> bool {
    assert_ne!(u, v, "endpoints must differ");
    Engine::new(g, c.colors(), c.k()).walk_exists(u, v, &PathQuery::default())
}

/// A properly colored path from `u` to `v`, if one exists.
pub fn proper_path_exists(g: &Graph, c: &EdgeColoring, u: Vertex, v: Vertex) -> Option<ProperPathCertificate> {
    proper_path_with(g, c, u, v, &PathQuery::default())
}

/// A properly colored path from `u` to `v` obeying `q`.
pub fn proper_path_with(
    g: &Graph,
    c: &EdgeColoring,
    u: Vertex,
    v: Vertex,
    q: &PathQuery,
) -> Option<ProperPathCertificate> {
    assert_ne!(u, v, "endpoints must differ");
    let path = Engine::new(g, c.colors(), c.k()).find_path(u, v, q)?;
    Some(ProperPathCertificate::from_path(g, c, path))
}

/// Confirms that no proper path joins `u` and `v`, using only the matching
/// reduction. Independent of the walk and DFS stages of the usual search.
pub fn confirm_no_proper_path(g: &Graph, c: &EdgeColoring, u: Vertex, v: Vertex) -> bool {
    assert_ne!(u, v, "endpoints must differ");
    let eng = Engine::new(g, c.colors(), c.k());
    match g.edge_id(u, v) {
        Some(_) => false,
        None => eng.matching_path(u, v, &PathQuery::default()).is_none(),
    }
}

pub fn is_proper_connected(g: &Graph, c: &EdgeColoring) -> Result<Connectivity, ProperError> {
    let eng = checked(g, c)?;
    if !g.is_connected() {
        return Err(ProperError::Disconnected);
    }
    Ok(match failing_pair(&eng, |_, _| true) {
        None => Connectivity::Connected,
        Some((u, v)) => Connectivity::Fails(u, v),
    })
}

/// Proper-connectedness restricted to the pairs accepted by `pairs`.
pub fn first_failing_pair_among(
    g: &Graph,
    c: &EdgeColoring,
    pairs: impl Fn(Vertex, Vertex) -> bool,
) -> Option<(Vertex, Vertex)> {
    failing_pair(&Engine::new(g, c.colors(), c.k()), pairs)
}

pub(crate) fn failing_pair(eng: &Engine, pairs: impl Fn(Vertex, Vertex) -> bool) -> Option<(Vertex, Vertex)> {
    let g = eng.graph();
    let q = PathQuery::default();
    for u in g.vertices() {
        if !(u + 1..g.n()).any(|v| pairs(u, v)) {
            continue;
        }
        let tree = eng.walk_tree(u, &q);
        for v in u + 1..g.n() {
            if pairs(u, v) && !eng.path_exists_with_tree(&tree, u, v, &q) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn has_strong_property(g: &Graph, c: &EdgeColoring) -> Result<StrongCheck, ProperError> {
    let eng = checked(g, c)?;
    if !g.is_connected() {
        return Err(ProperError::Disconnected);
    }
    // pairs arrive in increasing order, so the map can be bulk-built
    let mut witnesses = Vec::with_capacity(g.n() * g.n().saturating_sub(1) / 2);
    let mut fail = None;
    strong_scan(
        &eng,
        |_, _| true,
        strong_pair,
        |u, v, w| match w {
            Some((p1, p2)) => {
                let cert = |p| ProperPathCertificate::from_path(g, c, p);
                witnesses.push(((u, v), StrongWitness { p1: cert(p1), p2: cert(p2) }));
                true
            }
            None => {
                fail = Some((u, v));
                false
            }
        },
    );
    Ok(match fail {
        Some((u, v)) => StrongCheck::Fails(u, v),
        None => StrongCheck::Strong(witnesses.into_iter().collect::<BTreeMap<_, _>>()),
    })
}

/// First pair accepted by `pairs` lacking a strong witness.
pub fn first_strong_failure_among(
    g: &Graph,
    c: &EdgeColoring,
    pairs: impl Fn(Vertex, Vertex) -> bool,
) -> Option<(Vertex, Vertex)> {
    strong_failing_pair(&Engine::new(g, c.colors(), c.k()), pairs)
}

pub(crate) fn strong_failing_pair(eng: &Engine, pairs: impl Fn(Vertex, Vertex) -> bool) -> Option<(Vertex, Vertex)> {
    let mut fail = None;
    let exists = |eng: &Engine, trees: &[(Color, WalkTree)], u, v| strong_pair_exists(eng, trees, u, v).then_some(());
    strong_scan(eng, pairs, exists, |u, v, w| {
        if w.is_none() {
            fail = Some((u, v));
        }
        w.is_some()
    });
    fail
}

type PathPair = (Vec<Vertex>, Vec<Vertex>);

/// Walks pairs `u < v` in order, handing what `find` reports for each pair
/// to `sink`; stops when `sink` returns false.
fn strong_scan<T>(
    eng: &Engine,
    pairs: impl Fn(Vertex, Vertex) -> bool,
    find: impl Fn(&Engine, &[(Color, WalkTree)], Vertex, Vertex) -> Option<T>,
    mut sink: impl FnMut(Vertex, Vertex, Option<T>) -> bool,
) {
    let g = eng.graph();
    let k = eng.palette();
    for u in g.vertices() {
        if !(u + 1..g.n()).any(|v| pairs(u, v)) {
            continue;
        }
        // one walk tree per start color
        let trees: Vec<(Color, WalkTree)> = (1..=k)
            .map(|s| {
                let q = PathQuery { start_colors: mask_of(s), ..PathQuery::default() };
                (s, eng.walk_tree(u, &q))
            })
            .collect();
        for v in u + 1..g.n() {
            if !pairs(u, v) {
                continue;
            }
            let w = find(eng, &trees, u, v);
            if !sink(u, v, w) {
                return;
            }
        }
    }
}

fn strong_pair(eng: &Engine, trees: &[(Color, WalkTree)], u: Vertex, v: Vertex) -> Option<PathPair> {
    let mut combos: Vec<(Color, Color, &WalkTree)> = Vec::with_capacity(trees.len() * eng.palette() as usize);
    for (s, tree) in trees {
        let ends = tree.end_colors_at(v);
        for e in 1..=eng.palette() {
            if ends & mask_of(e) != 0 {
                combos.push((*s, e, tree));
            }
        }
    }
    let mut found: Vec<Option<Option<Vec<Vertex>>>> = vec![None; combos.len()];
    let mut resolve = |i: usize| -> bool {
        let (s, e, tree) = combos[i];
        found[i]
            .get_or_insert_with(|| {
                let q = PathQuery { start_colors: mask_of(s), end_colors: mask_of(e), allowed: None };
                eng.find_path_with_tree(tree, u, v, &q)
            })
            .is_some()
    };
    for i in 0..combos.len() {
        for j in i + 1..combos.len() {
            let (a, b) = (combos[i], combos[j]);
            if a.0 == b.0 || a.1 == b.1 {
                continue;
            }
            if !resolve(i) {
                break;
            }
            if resolve(j) {
                let p1 = found[i].take().flatten().expect("resolved");
                let p2 = found[j].take().flatten().expect("resolved");
                return Some((p1, p2));
            }
        }
    }
    None
}

fn strong_pair_exists(eng: &Engine, trees: &[(Color, WalkTree)], u: Vertex, v: Vertex) -> bool {
    strong_combos(eng, trees, u, v).is_some()
}

/// (start color, end color, tree index)
type Combo = (Color, Color, usize);

/// The first two (start, end) combinations, differing in both colors, that
/// each have a proper path from `u` to `v`. Allocation-free for palettes up
/// to 8.
fn strong_combos(eng: &Engine, trees: &[(Color, WalkTree)], u: Vertex, v: Vertex) -> Option<(Combo, Combo)> {
    const CAP: usize = 64;
    let k = eng.palette();
    let need = trees.len() * k as usize;
    let mut stack_combos = [(0, 0, 0); CAP];
    let mut stack_state = [0u8; CAP];
    let mut heap_combos;
    let mut heap_state;
    let (combos, state): (&mut [Combo], &mut [u8]) = if need <= CAP {
        (&mut stack_combos, &mut stack_state)
    } else {
        heap_combos = vec![(0, 0, 0); need];
        heap_state = vec![0u8; need];
        (&mut heap_combos, &mut heap_state)
    };
    // as in strong_pair, but without building paths
    let mut len = 0;
    for (t, (s, tree)) in trees.iter().enumerate() {
        let ends = tree.end_colors_at(v);
        for e in 1..=k {
            if ends & mask_of(e) != 0 {
                combos[len] = (*s, e, t);
                len += 1;
            }
        }
    }
    // 0 unknown, 1 path found, 2 none
    let mut resolve = |i: usize| {
        if state[i] == 0 {
            let (s, e, t) = combos[i];
            let q = PathQuery { start_colors: mask_of(s), end_colors: mask_of(e), allowed: None };
            state[i] = if eng.path_exists_with_tree(&trees[t].1, u, v, &q) { 1 } else { 2 };
        }
        state[i] == 1
    };
    for i in 0..len {
        for j in i + 1..len {
            let (a, b) = (combos[i], combos[j]);
            if a.0 == b.0 || a.1 == b.1 {
                continue;
            }
            if !resolve(i) {
                break;
            }
            if resolve(j) {
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn col(g: &Graph, k: Color, colors: &[Color]) -> EdgeColoring {
        assert_eq!(colors.len(), g.m());
        EdgeColoring::new(k, colors.to_vec()).unwrap()
    }

    /// Colors `cycle(n)` by position along 0,1,..,n-1,0.
    fn cycle_colored(n: usize, around: &[Color]) -> (Graph, EdgeColoring) {
        let g = cycle(n);
        let mut colors = vec![0; n];
        for i in 0..n {
            colors[g.edge_id(i, (i + 1) % n).unwrap()] = around[i];
        }
        let c = col(&g, 2, &colors);
        (g, c)
    }

    #[test]
    fn walk_examples() {
        let g = path(2);
        assert!(proper_walk_exists(&g, &col(&g, 1, &[1]), 0, 1));
        let g = path(3);
        assert!(!proper_walk_exists(&g, &col(&g, 1, &[1, 1]), 0, 2));
        let (g, c) = cycle_colored(4, &[1, 2, 1, 2]);
        assert!(proper_walk_exists(&g, &c, 0, 2));
    }

    #[test]
    fn path_examples() {
        let g = complete(3);
        let c = EdgeColoring::uniform(&g, 1, 1);
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(proper_path_exists(&g, &c, u, v).unwrap().path, vec![u, v]);
        }
        let g = path(4);
        assert!(proper_path_exists(&g, &col(&g, 2, &[1, 1, 2]), 0, 3).is_none());
    }

    #[test]
    fn connectivity_examples() {
        for n in 3..7 {
            let g = complete(n);
            assert_eq!(is_proper_connected(&g, &EdgeColoring::uniform(&g, 1, 1)), Ok(Connectivity::Connected));
        }
        let g = star(3);
        let c = col(&g, 2, &[1, 2, 2]);
        assert_eq!(is_proper_connected(&g, &c), Ok(Connectivity::Fails(2, 3)));
        let (g, c) = cycle_colored(5, &[1, 2, 1, 2, 1]);
        assert!(is_proper_connected(&g, &c).unwrap().is_connected());
        let g = disjoint_union(&[path(2), path(2)]);
        assert_eq!(is_proper_connected(&g, &EdgeColoring::uniform(&g, 1, 1)), Err(ProperError::Disconnected));
    }

    #[test]
    fn strong_examples() {
        let (g, c) = cycle_colored(4, &[1, 2, 1, 2]);
        match has_strong_property(&g, &c).unwrap() {
            StrongCheck::Strong(w) => {
                assert_eq!(w.len(), 6);
                for wit in w.values() {
                    wit.verify(&g, &c).unwrap();
                }
            }
            StrongCheck::Fails(u, v) => panic!("pair {u},{v} failed"),
        }
        let g = path(5);
        assert!(!has_strong_property(&g, &col(&g, 2, &[1, 2, 1, 2])).unwrap().is_strong());
        let g = complete(4);
        assert!(!has_strong_property(&g, &EdgeColoring::uniform(&g, 1, 1)).unwrap().is_strong());
    }
}
