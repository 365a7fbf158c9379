//! Text formats: edge lists, graph6, and JSON for colorings and gadget specs.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-based
//! vertices. Blank lines and lines starting with `#` are skipped.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::lab::GadgetSpec;
use crate::proper::{ColoringError, ColoringFile, EdgeColoring};

/// Upper limit on the vertex count accepted by the parsers.
pub const MAX_VERTICES: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

fn at(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line { line, msg: msg.into() }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(GraphFormat::EdgeList),
            "graph6" => Ok(GraphFormat::Graph6),
            other => Err(format!("unknown format `{other}` (expected edgelist or graph6)")),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => {
            let line = text.lines().map(str::trim).find(|l| !l.is_empty()).ok_or(ParseError::MissingHeader)?;
            parse_graph6(line)
        }
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Graph6 => write_graph6(g) + "\n",
    }
}

fn numbers(s: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| at(line, format!("`{t}` is not a nonnegative integer"))))
        .collect()
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = match numbers(header, hl)?[..] {
        [n, m] => (n, m),
        _ => return Err(at(hl, "header must be `n m`")),
    };
    if n > MAX_VERTICES {
        return Err(at(hl, format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }
    if m > n.saturating_mul(n.saturating_sub(1)) / 2 {
        return Err(at(hl, format!("{m} edges cannot fit in a simple graph on {n} vertices")));
    }
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (ln, l) in lines {
        let (u, v) = match numbers(l, ln)?[..] {
            [u, v] => (u, v),
            _ => return Err(at(ln, "edge line must be `u v`")),
        };
        if edges.len() == m {
            return Err(at(ln, format!("more than the declared {m} edges")));
        }
        if let Some(&w) = [u, v].iter().find(|&&w| w >= n) {
            return Err(at(ln, format!("vertex {w} out of range 0..{n}")));
        }
        if u == v {
            return Err(at(ln, format!("self-loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(at(ln, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::new(n, edges).expect("edges validated"))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let body = line.trim().strip_prefix(">>graph6<<").unwrap_or(line.trim()).as_bytes();
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let short = || ParseError::Graph6("truncated size prefix".into());
    let (n, rest) = match body {
        [] => return Err(ParseError::Graph6("empty input".into())),
        [126, 126, tail @ ..] => {
            if tail.len() < 6 {
                return Err(short());
            }
            let n = tail[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &tail[6..])
        }
        [126, tail @ ..] => {
            if tail.len() < 3 {
                return Err(short());
            }
            let n = tail[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &tail[3..])
        }
        [b, tail @ ..] => ((b - 63) as usize, tail),
    };
    if n > MAX_VERTICES {
        return Err(ParseError::Graph6(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(ParseError::Graph6(format!(
            "expected {} data bytes for n = {n}, found {}",
            bits.div_ceil(6),
            rest.len()
        )));
    }
    let bit = |i: usize| (rest[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    if (bits..rest.len() * 6).any(bit) {
        return Err(ParseError::Graph6("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 encodes a simple graph"))
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    let push6 = |out: &mut Vec<u8>, x: usize, groups: u32| {
        for k in (0..groups).rev() {
            out.push(((x >> (6 * k)) & 63) as u8 + 63);
        }
    };
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        push6(&mut out, n, 3);
    } else {
        out.extend([126, 126]);
        push6(&mut out, n, 6);
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in g.edges() {
        let i = v * (v - 1) / 2 + u;
        data[i / 6] |= 1 << (5 - i % 6);
    }
    out.extend(data.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("ascii")
}

pub fn parse_coloring_json(text: &str, g: &Graph) -> Result<EdgeColoring, ParseError> {
    let file: ColoringFile = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    Ok(file.into_coloring(g)?)
}

pub fn write_coloring_json(g: &Graph, c: &EdgeColoring) -> String {
    serde_json::to_string_pretty(&c.to_json(g)).expect("serializable")
}

/// Reads a gadget spec. Pair with [`spec_out_of_range`] before use.
pub fn parse_gadget_spec(text: &str) -> Result<GadgetSpec, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))
}

pub fn write_gadget_spec(spec: &GadgetSpec) -> String {
    serde_json::to_string_pretty(spec).expect("serializable")
}

/// First vertex mentioned by `spec` that is not below `n`.
pub fn spec_out_of_range(spec: &GadgetSpec, n: usize) -> Option<Vertex> {
    let mut all: Vec<Vertex> = spec.connectors.to_vec();
    all.extend(spec.gadgets.iter().flat_map(|p| p.region()));
    all.extend(spec.linking_edges.iter().flat_map(|&(a, b)| [a, b]));
    all.into_iter().find(|&v| v >= n)
}
