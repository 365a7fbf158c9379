//! Canonical labelling through nauty, for graphs with at most 64 vertices.

use std::os::raw::c_int;

use nauty_Traces_sys::{densenauty, optionblk, statsblk, TRUE, WORDSIZE};

/// Adjacency rows as bitmasks, bit `w` of row `v` set when `vw` is an edge.
pub type Rows = [u64];

/// Largest vertex count handled by [`Canon`].
pub const MAX_N: usize = WORDSIZE as usize;

/// Reusable nauty buffers.
#[derive(Default)]
pub struct Canon {
    g: Vec<u64>,
    cg: Vec<u64>,
    lab: Vec<c_int>,
    ptn: Vec<c_int>,
    orbits: Vec<c_int>,
}

/// Result of one call: the canonical graph (rows, LSB-first like the
/// input), the canonical order and the automorphism orbits.
pub struct Labelling<'a> {
    pub canonical: &'a [u64],
    /// `order[i]` is the input vertex placed at canonical position `i`.
    pub order: &'a [c_int],
    pub orbits: &'a [c_int],
}

// nauty numbers bits from the most significant end of a word
fn to_nauty(row: u64, n: usize) -> u64 {
    row.reverse_bits() & (!0u64 << (64 - n.max(1)))
}

impl Canon {
    pub fn label(&mut self, rows: &Rows) -> Labelling<'_> {
        let n = rows.len();
        assert!((1..=MAX_N).contains(&n), "canonical labelling supports 1..={MAX_N} vertices");
        self.g.clear();
        self.g.extend(rows.iter().map(|&r| to_nauty(r, n)));
        self.cg.resize(n, 0);
        self.lab.resize(n, 0);
        self.ptn.resize(n, 0);
        self.orbits.resize(n, 0);
        let mut options = optionblk { getcanon: TRUE as c_int, ..optionblk::default() };
        let mut stats = statsblk::default();
        // SAFETY: every buffer holds n entries and m = 1 word per row.
        unsafe {
            densenauty(
                self.g.as_mut_ptr(),
                self.lab.as_mut_ptr(),
                self.ptn.as_mut_ptr(),
                self.orbits.as_mut_ptr(),
                &mut options,
                &mut stats,
                1,
                n as c_int,
                self.cg.as_mut_ptr(),
            );
        }
        for r in &mut self.cg {
            *r = r.reverse_bits();
        }
        Labelling { canonical: &self.cg, order: &self.lab, orbits: &self.orbits }
    }

    /// Canonical rows only.
    pub fn canonical_form(&mut self, rows: &Rows) -> Vec<u64> {
        self.label(rows).canonical.to_vec()
    }
}
