//! Proper connection of edge-colored graphs.
//!
//! * [`graph`]: simple graphs and the connectivity, bipartite and matching
//!   primitives the rest of the crate builds on.
//! * [`proper`]: proper-path search, proper connectedness and the strong
//!   property, with certificates.
//! * [`solver`]: exact `pc(G)` by symmetry-reduced backtracking, and random
//!   sampling of colorings.
//! * [`colorers`]: verified constructive colorings (bridgeless bipartite,
//!   2-connected, 3-edge-connected, vertex additions, diameter 3).
//! * [`io`]: edge-list, graph6 and JSON formats.
//! * [`lab`]: the gadget counterexample family, its structure checks and
//!   refutation of its 2-colorings.

pub mod colorers;
pub mod graph;
pub mod io;
pub mod lab;
pub mod proper;
pub mod solver;

pub use graph::{EdgeId, Graph, GraphError, Vertex};
pub use proper::{Color, EdgeColoring};
