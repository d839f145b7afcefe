//! Decide, count and lazily enumerate NAC-colorings of finite simple
//! graphs.
//!
//! A NAC-coloring is a surjective red/blue edge coloring in which every
//! cycle is either monochromatic or carries at least two edges of each
//! color. The search here compresses the space through monochromatic
//! classes (edge sets forced to one color), prunes candidates with cached
//! small cycles, and optionally splits the graph into subgraphs whose NAC
//! sets are product-merged back together. A 3-SAT reduction that emits
//! degree-5 gadget graphs, together with brute-force oracles, rounds out
//! the crate.

pub mod bitset;
pub mod check;
pub mod fixtures;
pub mod graph;
pub mod graph6;
pub mod mono;
pub mod sat;
pub mod search;

pub use bitset::Bitset;
pub use check::{collect_small_cycles, cycle_mask_ok, is_nac_coloring, ClassColoring, CycleRecord};
pub use graph::{blocks, connected_components, parse_edge_list, Graph};
pub use graph6::{encode_graph6, parse_graph6};
pub use mono::{monochromatic_classes, triangle_components, MonochromaticPartition, UnionFind};
pub use sat::{
    build_reduction, decode_assignment, extend_for_density, parse_dimacs, sat_brute_force,
    CnfFormula, Label, Lit, ReductionArtifact,
};
pub use search::{
    count, decompose, enumerate, enumerate_brute_force, enumerate_naive, exists, merge_all,
    nac_product_merge, Bag, CheckStats, MergeStrategy, NacColoring, SearchConfig, SplitStrategy,
};
