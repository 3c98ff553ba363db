//! Spectral radii of k-uniform hypergraphs, with a focus on supertrees.

pub mod certificates;
pub mod cli;
pub mod constructors;
pub mod error;
pub mod hypergraph;
pub mod ordering;
pub mod spectral;

pub use error::{Error, Result};
pub use hypergraph::{CanonicalKey, Hypergraph};
