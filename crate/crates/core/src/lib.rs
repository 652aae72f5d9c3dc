//! Certified epsilon-homogeneous sets for graphs that avoid a forbidden
//! induced family, or verified induced copies when they do not.
//!
//! [`pipeline::run`] is the entry point. It partitions the graph until
//! almost every pair of parts is sparse or dense, builds a reduced graph
//! on the parts, and either lifts a clique or independent set of the
//! reduced graph to a homogeneous vertex set or samples induced copies of
//! a family member. Every result carries a certificate that
//! [`oracle::verify_outcome`] checks against the graph alone.

pub mod bitset;
pub mod cli;
pub mod clique;
pub mod cotree;
pub mod error;
pub mod family;
pub mod graph;
pub mod induced;
pub mod oracle;
pub mod pipeline;
pub mod rational;
pub mod regularity;

pub use error::{Error, Result};
pub use family::FamilySpec;
pub use graph::{Density, Graph, VertexSet};
pub use pipeline::{run, Outcome, RunConfig};
