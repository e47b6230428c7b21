//! Width parameters of graph classes of bounded diameter.

pub mod atlas;
pub mod bitset;
pub mod constructions;
pub mod containment;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod refuter;
pub mod width;

pub use error::{Error, GraphError, Result};
pub use graph::{Graph, GraphBuilder};
