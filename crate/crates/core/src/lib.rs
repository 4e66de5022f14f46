//! Graph vulnerability and robustness toolkit.
//!
//! * [`graph`], [`io`], [`generators`]: simple undirected graphs, edge-list
//!   ingestion and synthetic families.
//! * [`spectral`]: dense and Lanczos eigensolvers for adjacency and Laplacian matrices.
//! * [`measures`]: robustness measures with exact and approximate variants.
//! * [`attacks`]: node/edge removal strategies and attack curves.
//! * [`defenses`]: edge addition/rewiring heuristics and Netshield node selection.
//! * [`simulators`]: SIS/SIR dissemination and cascading failures.

pub mod attacks;
pub mod defenses;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod measures;
pub mod simulators;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
