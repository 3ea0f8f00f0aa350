//! Sampling of large graphs by exploration, with analytic bias curves for
//! breadth-first search on random graphs and estimators that correct it.

pub mod analytic;
pub mod distribution;
pub mod edgelist;
pub mod error;
pub mod estimate;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod sampling;
pub mod seeds;

pub use distribution::DegreeDistribution;
pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use sampling::{SampleTrace, Technique};
