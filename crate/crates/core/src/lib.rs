//! Exact minimum dominating set solvers for `G(n,p)` random graphs, together
//! with the closed-form average-case bounds for best-first branch-and-bound
//! and exhaustive search, and a seeded experiment harness that measures the
//! search-tree growth empirically.
//!
//! Modules:
//! - [`graph`]: bitset graphs, seeded sampling, domination predicates and
//!   brute-force ground truth.
//! - [`branch_bound`]: best-first branch-and-bound over prefix-encoded nodes.
//! - [`exhaustive`]: full subset enumeration and dominating-set counting.
//! - [`bounds`]: log-space evaluation of the growth-rate bounds, Lambert W.
//! - [`harness`]: regimes, sweeps, growth-rate fits, CSV persistence and the
//!   cross-solver verification battery.
//! - [`cli`]: the `domlab` command line.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod branch_bound;
pub mod cli;
mod error;
pub mod exhaustive;
pub mod graph;
pub mod harness;
mod report;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use report::{Algorithm, CapReason, SolveReport};
