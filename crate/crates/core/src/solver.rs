//! Exact proper connection number by backtracking over edge colorings.
//!
//! Edges are colored in BFS order from vertex 0. The first edge gets color 1
//! and a color may only appear once every smaller color has, which removes
//! the palette symmetry. After each assignment a walk filter runs over all
//! pairs at distance at least two: uncolored edges act as wildcards, so a
//! pair with no walk can never be joined in any completion. Complete
//! colorings are then checked exactly.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{distances_from, EdgeId, Graph, Vertex};
use crate::proper::{self, mask_of, Color, ColorMask, EdgeColoring, Engine, PathQuery, ANY_COLOR};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("palette size must be at least 1")]
    EmptyPalette,
}

/// Cap on search-tree nodes. `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> SearchBudget {
        SearchBudget { max_nodes: Some(max_nodes) }
    }

    pub fn unbounded() -> SearchBudget {
        SearchBudget { max_nodes: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The whole (symmetry-reduced) space was explored.
    Absent,
    /// Budget ran out first.
    Inconclusive,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.elapsed += other.elapsed;
    }
}

/// Edge order used by the search: edges as BFS from vertex 0 first meets them.
pub fn bfs_edge_order(g: &Graph) -> Vec<EdgeId> {
    let mut seen_v = vec![false; g.n()];
    let mut seen_e = vec![false; g.m()];
    let mut order = Vec::with_capacity(g.m());
    for root in g.vertices() {
        if seen_v[root] {
            continue;
        }
        seen_v[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in g.incident(x) {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                if !seen_v[y] {
                    seen_v[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

struct Solver<'g> {
    g: &'g Graph,
    k: Color,
    strong: bool,
    order: Vec<EdgeId>,
    colors: Vec<Color>,
    /// Pairs `(u, v)`, `u < v`, at distance at least two, grouped by `u`.
    far: Vec<Vec<Vertex>>,
    hot_source: Vertex,
    stats: SearchStats,
    budget: Option<u64>,
    out_of_budget: bool,
}

impl Solver<'_> {
    fn run(&mut self, i: usize, used: Color) -> bool {
        if let Some(max) = self.budget {
            if self.stats.nodes >= max {
                self.out_of_budget = true;
                return false;
            }
        }
        self.stats.nodes += 1;
        if i == self.order.len() {
            self.stats.leaves += 1;
            return self.exact_ok();
        }
        let e = self.order[i];
        let top = (used + 1).min(self.k);
        for c in 1..=top {
            self.colors[e] = c;
            if self.filter_ok() && self.run(i + 1, used.max(c)) {
                return true;
            }
            if self.out_of_budget {
                break;
            }
        }
        self.colors[e] = 0;
        false
    }

    fn exact_ok(&self) -> bool {
        let eng = Engine::new(self.g, &self.colors, self.k);
        if self.strong {
            proper::strong_failing_pair(&eng, |_, _| true).is_none()
        } else {
            proper::failing_pair(&eng, |_, _| true).is_none()
        }
    }

    fn filter_ok(&mut self) -> bool {
        let n = self.g.n();
        let eng = Engine::new(self.g, &self.colors, self.k);
        for step in 0..n {
            let u = (self.hot_source + step) % n;
            let ok = if self.strong { self.strong_walks_ok(&eng, u) } else { self.walks_ok(&eng, u) };
            if !ok {
                self.hot_source = u;
                return false;
            }
        }
        true
    }

    fn walks_ok(&self, eng: &Engine, u: Vertex) -> bool {
        if self.far[u].is_empty() {
            return true;
        }
        let tree = eng.walk_tree(u, &PathQuery::default());
        self.far[u].iter().all(|&v| tree.reaches(v, ANY_COLOR) || tree.reaches_wildcard(v))
    }

    /// Every pair `(u, v)`, `v > u`, must have walk end colors allowing two
    /// walks with different starts and different ends.
    fn strong_walks_ok(&self, eng: &Engine, u: Vertex) -> bool {
        let n = self.g.n();
        let trees: Vec<_> = (1..=self.k)
            .map(|s| eng.walk_tree(u, &PathQuery { start_colors: mask_of(s), ..PathQuery::default() }))
            .collect();
        let all: ColorMask = ((1u32 << (self.k + 1)) - 1) & !1;
        (u + 1..n).all(|v| {
            let ends: Vec<ColorMask> =
                trees.iter().map(|t| if t.reaches_wildcard(v) { all } else { t.end_colors_at(v) & all }).collect();
            crossing_pair(&ends)
        })
    }
}

/// Given, per start color, the mask of feasible end colors: are there two
/// different starts with two different ends?
fn crossing_pair(ends: &[ColorMask]) -> bool {
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            let (a, b) = (ends[i], ends[j]);
            if a == 0 || b == 0 {
                continue;
            }
            // fails only when both are the same single color
            if !(a == b && a.count_ones() == 1) {
                return true;
            }
        }
    }
    false
}

/// Searches for a `k`-coloring making `g` proper connected (and strong when
/// `require_strong`). A found coloring has been verified exactly.
pub fn exists_pc_coloring(
    g: &Graph,
    k: Color,
    require_strong: bool,
    budget: SearchBudget,
) -> Result<(Search<EdgeColoring>, SearchStats), SolverError> {
    if k == 0 {
        return Err(SolverError::EmptyPalette);
    }
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    let start = Instant::now();
    let far = g
        .vertices()
        .map(|u| {
            let d = distances_from(g, u);
            (u + 1..g.n()).filter(|&v| d[v].is_some_and(|d| d >= 2)).collect()
        })
        .collect();
    let mut s = Solver {
        g,
        k,
        strong: require_strong,
        order: bfs_edge_order(g),
        colors: vec![0; g.m()],
        far,
        hot_source: 0,
        stats: SearchStats::default(),
        budget: budget.max_nodes,
        out_of_budget: false,
    };
    let found = if g.n() <= 1 {
        true
    } else if g.m() == 0 {
        false
    } else {
        s.run(0, 0)
    };
    s.stats.elapsed = start.elapsed();
    let result = if found {
        Search::Found(EdgeColoring::new(k, s.colors).expect("complete coloring in range"))
    } else if s.out_of_budget {
        Search::Inconclusive
    } else {
        Search::Absent
    };
    Ok((result, s.stats))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// Value is exact: a coloring exists and search proved one color fewer
    /// impossible.
    Exhaustive,
    /// Lower bound backed only by refuted random samples.
    SampledRefutation,
    /// A verified coloring gives an upper bound; the lower side is open.
    ConstructiveUpper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcResult {
    /// `pc(G)` when determined.
    pub value: Option<Color>,
    /// Every smaller palette was shown impossible.
    pub lower_bound: Color,
    /// Smallest palette with a verified coloring found, if any.
    pub upper_bound: Option<Color>,
    pub coloring: Option<EdgeColoring>,
    pub evidence: Evidence,
    pub stats: SearchStats,
}

/// Smallest `k <= k_max` admitting a proper-connecting coloring (strong if
/// asked). Palettes are tried in increasing order; once one is inconclusive
/// the result can only bracket the value.
pub fn pc_exact(g: &Graph, k_max: Color, require_strong: bool, budget: SearchBudget) -> Result<PcResult, SolverError> {
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    let mut stats = SearchStats::default();
    let mut lower_bound = 1;
    let mut open = false;
    for k in 1..=k_max {
        let (res, st) = exists_pc_coloring(g, k, require_strong, budget)?;
        stats.absorb(st);
        match res {
            Search::Found(c) => {
                return Ok(PcResult {
                    value: (!open).then_some(k),
                    lower_bound,
                    upper_bound: Some(k),
                    coloring: Some(c),
                    evidence: if open { Evidence::ConstructiveUpper } else { Evidence::Exhaustive },
                    stats,
                });
            }
            Search::Absent if !open => lower_bound = k + 1,
            Search::Absent => {}
            Search::Inconclusive => open = true,
        }
    }
    Ok(PcResult { value: None, lower_bound, upper_bound: None, coloring: None, evidence: Evidence::Exhaustive, stats })
}

/// A uniformly random `k`-coloring drawn from `rng`.
pub fn random_coloring<R: Rng>(g: &Graph, k: Color, rng: &mut R) -> EdgeColoring {
    let colors = (0..g.m()).map(|_| rng.gen_range(1..=k)).collect();
    EdgeColoring::new(k, colors).expect("colors in range")
}

/// Generator for trial `trial` under `seed`: one ChaCha stream per trial, so
/// results do not depend on how trials are split across workers.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledFailure {
    pub trial: u64,
    pub coloring: EdgeColoring,
    pub pair: (Vertex, Vertex),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SampleReport {
    /// Colorings that failed, each with a re-verified failing pair. Sorted
    /// by trial.
    pub failures: Vec<SampledFailure>,
    /// Colorings that made the graph proper connected.
    pub successes: Vec<(u64, EdgeColoring)>,
    /// Failing pairs the independent re-check did not confirm.
    pub unconfirmed: Vec<SampledFailure>,
}

/// Draws `trials` random `k`-colorings and records, for each, the first
/// failing pair, confirmed by the matching reduction alone.
pub fn sample_refute(g: &Graph, k: Color, trials: u64, seed: u64, jobs: usize) -> Result<SampleReport, SolverError> {
    if k == 0 {
        return Err(SolverError::EmptyPalette);
    }
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    let jobs = jobs.max(1) as u64;
    let run = |lo: u64, hi: u64| {
        let mut part = SampleReport::default();
        for trial in lo..hi {
            let c = random_coloring(g, k, &mut trial_rng(seed, trial));
            match proper::first_failing_pair_among(g, &c, |_, _| true) {
                None => part.successes.push((trial, c)),
                Some(pair) => {
                    let confirmed = proper::confirm_no_proper_path(g, &c, pair.0, pair.1);
                    let f = SampledFailure { trial, coloring: c, pair };
                    if confirmed {
                        part.failures.push(f);
                    } else {
                        part.unconfirmed.push(f);
                    }
                }
            }
        }
        part
    };
    let chunk = trials.div_ceil(jobs).max(1);
    let parts: Vec<SampleReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| (j * chunk, ((j + 1) * chunk).min(trials)))
            .filter(|(lo, hi)| lo < hi)
            .map(|(lo, hi)| scope.spawn(move || run(lo, hi)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut report = SampleReport::default();
    for p in parts {
        report.failures.extend(p.failures);
        report.successes.extend(p.successes);
        report.unconfirmed.extend(p.unconfirmed);
    }
    report.failures.sort_by_key(|f| f.trial);
    report.successes.sort_by_key(|s| s.0);
    report.unconfirmed.sort_by_key(|f| f.trial);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn pc(g: &Graph) -> Color {
        pc_exact(g, 8, false, SearchBudget::unbounded()).unwrap().value.unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(pc(&complete(4)), 1);
        assert_eq!(pc(&star(4)), 4);
        assert_eq!(pc(&cycle(5)), 2);
        assert_eq!(pc(&path(3)), 2);
        assert_eq!(pc(&petersen()), 2);
    }

    #[test]
    fn found_colorings_verify() {
        for g in [cycle(7), petersen(), wheel(5), complete_bipartite(2, 3)] {
            let (res, _) = exists_pc_coloring(&g, 2, false, SearchBudget::unbounded()).unwrap();
            let c = res.found().unwrap();
            assert!(proper::is_proper_connected(&g, &c).unwrap().is_connected());
        }
        let (res, _) = exists_pc_coloring(&cycle(6), 2, true, SearchBudget::unbounded()).unwrap();
        let c = res.found().unwrap();
        assert!(proper::has_strong_property(&cycle(6), &c).unwrap().is_strong());
    }

    #[test]
    fn budget_gives_inconclusive() {
        let (res, stats) = exists_pc_coloring(&star(6), 5, false, SearchBudget::nodes(3)).unwrap();
        assert_eq!(res, Search::Inconclusive);
        assert_eq!(stats.nodes, 3);
        let r = pc_exact(&star(6), 6, false, SearchBudget::nodes(3)).unwrap();
        assert_eq!(r.value, None);
    }

    #[test]
    fn strong_needs_more_than_plain() {
        // trees are never strong
        let (res, _) = exists_pc_coloring(&path(4), 3, true, SearchBudget::unbounded()).unwrap();
        assert_eq!(res, Search::Absent);
    }

    #[test]
    fn sampling_is_split_independent() {
        let g = path(3);
        let a = sample_refute(&g, 1, 10, 5, 1).unwrap();
        assert_eq!(a.failures.len(), 10);
        assert!(a.failures.iter().all(|f| f.pair == (0, 2)));
        let g = petersen();
        let one = sample_refute(&g, 2, 40, 9, 1).unwrap();
        let four = sample_refute(&g, 2, 40, 9, 4).unwrap();
        assert_eq!(one, four);
        assert!(sample_refute(&complete(4), 1, 5, 1, 2).unwrap().failures.is_empty());
    }
}
