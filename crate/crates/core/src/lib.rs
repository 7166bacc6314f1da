//! Exact computation of k-fault-tolerant mutual-visibility in graphs.
//!
//! A vertex set `X` is *k-fault-tolerant mutual-visibility* (k-ftmv) if every
//! two non-adjacent members are joined by `k + 1` internally disjoint shortest
//! paths whose internal vertices avoid `X`. `μ^k(G)` is the size of a largest
//! such set.

pub mod cli;
pub mod error;
pub mod formulas;
pub mod generators;
pub mod graph;
pub mod reduction;
pub mod solver;
pub mod visibility;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet};
