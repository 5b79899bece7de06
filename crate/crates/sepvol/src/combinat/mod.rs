//! Graphs on labeled vertices, permutations with their orbit partitions,
//! coordinate-permutation actions, and graph contraction.

mod graph;
mod perm;

pub use graph::Graph;
pub use perm::{CycleBlocks, Permutation};
