//! Exact-arithmetic engine for symmetric edge polytopes of graphs: builds
//! the polytopes, computes their subpolytopes fixed by coordinate
//! permutations, and cross-checks volumes through three independent
//! channels (closed-form contraction formula, exact hull triangulation,
//! Ehrhart dilate counting). Everything is computed over arbitrary-precision
//! rationals; there is no floating point anywhere.

pub mod cli;
pub mod combinat;
pub mod ehrhart;
mod error;
pub mod linalg;
pub mod polytope;
pub mod sep;

pub use error::{Error, Result};

pub use combinat::{CycleBlocks, Graph, Permutation};
pub use linalg::{QMatrix, QVector, Rational};
pub use polytope::{convex_hull, HPolytope, Polytope};
