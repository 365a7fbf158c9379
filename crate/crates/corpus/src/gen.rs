//! Exhaustive generation of unlabelled graphs by canonical vertex addition.
//!
//! A graph on `n + 1` vertices is accepted from its parent only when the
//! added vertex lies in the orbit of the canonical deletion vertex: the
//! minimum-degree vertex that comes last in canonical order. Siblings are
//! deduplicated by canonical form, so each isomorphism class appears once.
//! A minimum-degree bound is enforced with lookahead, since deleting a
//! vertex lowers every degree by at most one.

use std::collections::HashSet;
use std::time::Instant;

use pconn::Graph;

use crate::canon::Canon;

/// Largest order the generator accepts.
pub const MAX_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenOptions {
    pub min_degree: usize,
    pub deadline: Option<Instant>,
}

/// How far an enumeration got.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coverage {
    /// Graphs handed to the callback.
    pub emitted: u64,
    /// Graphs accepted at every order, including intermediate ones.
    pub nodes: u64,
    /// False when the deadline stopped the run early.
    pub complete: bool,
}

struct Gen<'f> {
    /// Order at which graphs are handed to `visit`.
    stop: usize,
    /// Final order, for the degree lookahead.
    target: usize,
    min_degree: usize,
    deadline: Option<Instant>,
    canon: Canon,
    visit: &'f mut dyn FnMut(&Graph),
    cov: Coverage,
    stopped: bool,
}

fn to_graph(rows: &[u64]) -> Graph {
    let n = rows.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| rows[u] >> v & 1 == 1).map(move |v| (u, v)));
    Graph::new(n, edges).expect("bitmask rows form a simple graph")
}

impl Gen<'_> {
    /// Accepted one-vertex extensions of `rows`, one per class.
    fn children(&mut self, rows: &[u64]) -> Vec<Vec<u64>> {
        let n = rows.len();
        let slack = self.target - n - 1;
        let need = self.min_degree.saturating_sub(slack);
        let deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
        // vertices that must gain an edge now
        let forced: u64 = (0..n).filter(|&v| (deg[v] as usize) < need).fold(0, |m, v| m | 1 << v);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut accepted: Vec<Vec<u64>> = Vec::new();
        for s in 0u64..1 << n {
            if s & forced != forced {
                continue;
            }
            let d = s.count_ones();
            if (d as usize) < need {
                continue;
            }
            // the new vertex must have minimum degree in the child
            if (0..n).any(|v| deg[v] + ((s >> v & 1) as u32) < d) {
                continue;
            }
            let mut child = rows.to_vec();
            for (v, r) in child.iter_mut().enumerate() {
                *r |= (s >> v & 1) << n;
            }
            child.push(s);
            let lab = self.canon.label(&child);
            let last_min = lab
                .order
                .iter()
                .rev()
                .map(|&x| x as usize)
                .find(|&x| child[x].count_ones() == d)
                .expect("new vertex has minimum degree");
            if lab.orbits[last_min] != lab.orbits[n] {
                continue;
            }
            if seen.insert(lab.canonical.to_vec()) {
                accepted.push(child);
            }
        }
        accepted
    }

    fn extend(&mut self, rows: &mut [u64]) {
        self.cov.nodes += 1;
        if self.cov.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stopped = true;
        }
        if self.stopped {
            return;
        }
        let n = rows.len();
        if n == self.stop {
            self.cov.emitted += 1;
            (self.visit)(&to_graph(rows));
            return;
        }
        let accepted = self.children(rows);
        for mut child in accepted {
            self.extend(&mut child);
            if self.stopped {
                return;
            }
        }
    }
}

impl Gen<'_> {
    /// Stores the accepted graphs of order `stop` below `rows`.
    fn collect(&mut self, rows: &[u64], stop: usize, out: &mut Vec<Vec<u64>>) {
        if rows.len() == stop {
            out.push(rows.to_vec());
            return;
        }
        for child in self.children(rows) {
            self.collect(&child, stop, out);
        }
    }
}

/// Calls `visit` once per isomorphism class of graphs on `n` vertices with
/// minimum degree at least `opts.min_degree`.
pub fn for_each_graph(n: usize, opts: GenOptions, visit: &mut dyn FnMut(&Graph)) -> Coverage {
    assert!(n <= MAX_ORDER, "exhaustive generation is limited to {MAX_ORDER} vertices");
    if n == 0 {
        visit(&Graph::empty(0));
        return Coverage { emitted: 1, nodes: 1, complete: true };
    }
    let mut gen = Gen {
        stop: n,
        target: n,
        min_degree: opts.min_degree,
        deadline: opts.deadline,
        canon: Canon::default(),
        visit,
        cov: Coverage::default(),
        stopped: false,
    };
    gen.extend(&mut [0u64]);
    gen.cov.complete = !gen.stopped;
    gen.cov
}

/// Parallel [`for_each_graph`]: the accepted graphs two orders below `n`
/// are dealt round-robin to `jobs` threads, which extend them to order `n`.
/// `visit` sees each class once, in no fixed order. `nodes` counts only the
/// work done by the threads.
pub fn for_each_graph_par(n: usize, opts: GenOptions, jobs: usize, visit: &(dyn Fn(&Graph) + Sync)) -> Coverage {
    assert!(n <= MAX_ORDER, "exhaustive generation is limited to {MAX_ORDER} vertices");
    if jobs <= 1 || n < 4 {
        return for_each_graph(n, opts, &mut |g| visit(g));
    }
    let mut seeds: Vec<Vec<u64>> = Vec::new();
    let mut collect = |_: &Graph| {};
    let mut gen = Gen {
        stop: n - 2,
        target: n,
        min_degree: opts.min_degree,
        deadline: opts.deadline,
        canon: Canon::default(),
        visit: &mut collect,
        cov: Coverage::default(),
        stopped: false,
    };
    gen.collect(&[0u64], n - 2, &mut seeds);
    let seeds = &seeds;
    let parts: Vec<Coverage> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                scope.spawn(move || {
                    let mut local = |g: &Graph| visit(g);
                    let mut gen = Gen {
                        stop: n,
                        target: n,
                        min_degree: opts.min_degree,
                        deadline: opts.deadline,
                        canon: Canon::default(),
                        visit: &mut local,
                        cov: Coverage::default(),
                        stopped: false,
                    };
                    for rows in seeds.iter().skip(j).step_by(jobs) {
                        gen.extend(&mut rows.clone());
                        if gen.stopped {
                            break;
                        }
                    }
                    gen.cov.complete = !gen.stopped;
                    gen.cov
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("generator thread panicked")).collect()
    });
    let mut cov = Coverage { emitted: 0, nodes: 0, complete: true };
    for p in parts {
        cov.emitted += p.emitted;
        cov.nodes += p.nodes;
        cov.complete &= p.complete;
    }
    cov
}

/// Collects every graph on `n` vertices passing `keep`.
pub fn all_graphs(n: usize, min_degree: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    let mut out = Vec::new();
    for_each_graph(n, GenOptions { min_degree, deadline: None }, &mut |g| {
        if keep(g) {
            out.push(g.clone());
        }
    });
    out
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n, 0, |g| g.is_connected())
}
