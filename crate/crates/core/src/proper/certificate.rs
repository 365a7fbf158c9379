use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::coloring::{Color, EdgeColoring};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("path has fewer than two vertices")]
    TooShort,
    #[error("color list length does not match the path")]
    LengthMismatch,
    #[error("vertex {0} repeats")]
    RepeatedVertex(Vertex),
    #[error("{0}-{1} is not an edge")]
    NotAdjacent(Vertex, Vertex),
    #[error("recorded color of {0}-{1} differs from the coloring")]
    WrongColor(Vertex, Vertex),
    #[error("consecutive edges at {0} share a color")]
    NotProper(Vertex),
    #[error("the two paths do not join the same pair with distinct start and end colors")]
    NotStrong,
}

/// A properly colored path with its color sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperPathCertificate {
    pub path: Vec<Vertex>,
    pub colors: Vec<Color>,
}

impl ProperPathCertificate {
    /// Reads the colors of `path` off `c`. No properness check.
    pub fn from_path(g: &Graph, c: &EdgeColoring, path: Vec<Vertex>) -> ProperPathCertificate {
        let colors =
            path.windows(2).map(|w| c.color_of(g, w[0], w[1]).expect("path edge missing from graph")).collect();
        ProperPathCertificate { path, colors }
    }

    pub fn start_color(&self) -> Color {
        self.colors[0]
    }

    pub fn end_color(&self) -> Color {
        *self.colors.last().unwrap()
    }

    pub fn source(&self) -> Vertex {
        self.path[0]
    }

    pub fn target(&self) -> Vertex {
        *self.path.last().unwrap()
    }

    pub fn reversed(&self) -> ProperPathCertificate {
        let mut path = self.path.clone();
        let mut colors = self.colors.clone();
        path.reverse();
        colors.reverse();
        ProperPathCertificate { path, colors }
    }

    /// Re-walks the path against `g` and `c`.
    pub fn verify(&self, g: &Graph, c: &EdgeColoring) -> Result<(), CertificateError> {
        if self.path.len() < 2 {
            return Err(CertificateError::TooShort);
        }
        if self.colors.len() + 1 != self.path.len() {
            return Err(CertificateError::LengthMismatch);
        }
        let mut seen = vec![false; g.n()];
        for &v in &self.path {
            if v >= g.n() {
                return Err(CertificateError::NotAdjacent(v, v));
            }
            if seen[v] {
                return Err(CertificateError::RepeatedVertex(v));
            }
            seen[v] = true;
        }
        for (i, w) in self.path.windows(2).enumerate() {
            let col = c.color_of(g, w[0], w[1]).ok_or(CertificateError::NotAdjacent(w[0], w[1]))?;
            if col != self.colors[i] {
                return Err(CertificateError::WrongColor(w[0], w[1]));
            }
            if i > 0 && self.colors[i - 1] == col {
                return Err(CertificateError::NotProper(w[0]));
            }
        }
        Ok(())
    }
}

/// Two proper paths between the same pair whose start colors differ and
/// whose end colors differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongWitness {
    pub p1: ProperPathCertificate,
    pub p2: ProperPathCertificate,
}

impl StrongWitness {
    pub fn verify(&self, g: &Graph, c: &EdgeColoring) -> Result<(), CertificateError> {
        self.p1.verify(g, c)?;
        self.p2.verify(g, c)?;
        let same_ends = self.p1.source() == self.p2.source() && self.p1.target() == self.p2.target();
        if !same_ends || self.p1.start_color() == self.p2.start_color() || self.p1.end_color() == self.p2.end_color() {
            return Err(CertificateError::NotStrong);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn verify_catches_each_defect() {
        let g = path(4);
        let c = EdgeColoring::new(2, vec![1, 2, 2]).unwrap();
        let ok = ProperPathCertificate::from_path(&g, &c, vec![0, 1, 2]);
        assert_eq!(ok.verify(&g, &c), Ok(()));
        assert_eq!((ok.start_color(), ok.end_color()), (1, 2));
        let bad = ProperPathCertificate::from_path(&g, &c, vec![1, 2, 3]);
        assert_eq!(bad.verify(&g, &c), Err(CertificateError::NotProper(2)));
        let walk = ProperPathCertificate { path: vec![0, 1, 0], colors: vec![1, 1] };
        assert_eq!(walk.verify(&g, &c), Err(CertificateError::RepeatedVertex(0)));
        let jump = ProperPathCertificate { path: vec![0, 2], colors: vec![1] };
        assert_eq!(jump.verify(&g, &c), Err(CertificateError::NotAdjacent(0, 2)));
        let lie = ProperPathCertificate { path: vec![0, 1], colors: vec![2] };
        assert_eq!(lie.verify(&g, &c), Err(CertificateError::WrongColor(0, 1)));
    }
}
