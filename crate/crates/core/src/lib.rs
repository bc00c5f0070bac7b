//! Graph minors, embeddings and obstruction search for graphs on surfaces.

mod bits;
pub mod cli;
pub mod connectivity;
pub mod decomposition;
pub mod dichotomy;
pub mod enumerate;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod io;
pub mod limits;
pub mod minors;
pub mod outerplanar;
pub mod patterns;
pub mod structures;

pub use error::{Error, Result};
pub use graph::{Graph, MarkedGraph, VSet, V};
pub use limits::{Deadline, Search};
