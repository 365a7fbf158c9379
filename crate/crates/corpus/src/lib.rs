//! Graph corpora for the test suites: every unlabelled graph of a given
//! order (canonical augmentation over nauty), and seeded random families.

pub mod canon;
pub mod gen;
pub mod random;

pub use gen::{all_graphs, connected_graphs, for_each_graph, for_each_graph_par, Coverage, GenOptions};
pub use random::{
    find_diam3_case, gnp, is_diam3_instance, random_connected, random_diam3, random_spanning_subgraph, random_tree,
    seeded_diam3_corpus,
};
