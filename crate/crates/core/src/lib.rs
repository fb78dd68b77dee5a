//! Random cusped hyperbolic surfaces built from trivalent ribbon graphs.
//!
//! Each vertex of a ribbon graph becomes an ideal triangle and each edge a
//! gluing with zero shear. The crate samples such graphs from the pairing
//! model and measures their topology, closed geodesics and expansion.

pub mod expansion;
pub mod experiments;
pub mod geodesics;
pub mod ribbon_graph;
pub mod sampler;
pub mod stats;
pub mod topology;

pub use ribbon_graph::{GraphError, RibbonGraph};
