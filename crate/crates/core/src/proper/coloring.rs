use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};

pub type Color = u8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color {color} on edge {edge} is outside 1..={k}")]
    ColorOutOfRange { edge: EdgeId, color: Color, k: Color },
    #[error("edge {0}-{1} is not in the graph")]
    UnknownEdge(Vertex, Vertex),
    #[error("edge {0}-{1} colored twice")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} has no color")]
    Uncolored(Vertex, Vertex),
    #[error("palette size must be at least 1")]
    EmptyPalette,
}

/// A total edge-coloring with colors in `1..=k`, indexed by [`EdgeId`].
/// Adjacent edges may share a color.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    k: Color,
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(k: Color, colors: Vec<Color>) -> Result<EdgeColoring, ColoringError> {
        if k == 0 {
            return Err(ColoringError::EmptyPalette);
        }
        if let Some((edge, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(ColoringError::ColorOutOfRange { edge, color, k });
        }
        Ok(EdgeColoring { k, colors })
    }

    /// Every edge of `g` gets `color`.
    pub fn uniform(g: &Graph, k: Color, color: Color) -> EdgeColoring {
        EdgeColoring::new(k, vec![color; g.m()]).expect("color within palette")
    }

    /// Builds a coloring of `g` from `(u, v, color)` triples covering every
    /// edge exactly once.
    pub fn from_triples(
        g: &Graph,
        k: Color,
        triples: &[(Vertex, Vertex, Color)],
    ) -> Result<EdgeColoring, ColoringError> {
        let mut colors = vec![0; g.m()];
        for &(u, v, c) in triples {
            let e = g.edge_id(u, v).ok_or(ColoringError::UnknownEdge(u, v))?;
            if colors[e] != 0 {
                return Err(ColoringError::DuplicateEdge(u, v));
            }
            if c == 0 || c > k {
                return Err(ColoringError::ColorOutOfRange { edge: e, color: c, k });
            }
            colors[e] = c;
        }
        if let Some(e) = colors.iter().position(|&c| c == 0) {
            let (u, v) = g.edge(e);
            return Err(ColoringError::Uncolored(u, v));
        }
        EdgeColoring::new(k, colors)
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    /// Color of edge `uv` in `g`.
    pub fn color_of(&self, g: &Graph, u: Vertex, v: Vertex) -> Option<Color> {
        g.edge_id(u, v).map(|e| self.colors[e])
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn check_against(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.m() {
            return Err(ColoringError::LengthMismatch { expected: g.m(), got: self.colors.len() });
        }
        Ok(())
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut seen = [false; 256];
        self.colors.iter().for_each(|&c| seen[c as usize] = true);
        seen.iter().filter(|&&b| b).count()
    }

    /// Same assignment over a larger palette.
    pub fn with_palette(&self, k: Color) -> Result<EdgeColoring, ColoringError> {
        EdgeColoring::new(k, self.colors.clone())
    }

    pub fn triples(&self, g: &Graph) -> Vec<(Vertex, Vertex, Color)> {
        g.edges().iter().zip(&self.colors).map(|(&(u, v), &c)| (u, v, c)).collect()
    }

    pub fn to_json(&self, g: &Graph) -> ColoringFile {
        ColoringFile { k: self.k, edges: self.triples(g) }
    }
}

/// Serialized coloring: `{ "k": int, "edges": [[u, v, color], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub k: Color,
    pub edges: Vec<(Vertex, Vertex, Color)>,
}

impl ColoringFile {
    pub fn into_coloring(self, g: &Graph) -> Result<EdgeColoring, ColoringError> {
        EdgeColoring::from_triples(g, self.k, &self.edges)
    }
}
