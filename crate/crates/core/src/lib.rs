//! Harmonic analysis on metrized graphs: effective resistance, Green's
//! functions of general measures, the canonical measure and tau constant, and
//! Laplacian eigenpairs with respect to a measure.

pub mod builtins;
pub mod circuit;
pub mod cli;
pub mod cpa;
pub mod error;
pub mod graph;
pub mod io;
pub mod green;
pub mod measure;
pub mod numerics;
pub mod spectral;

pub use error::{Error, ErrorKind, Result};
pub use graph::{EdgeId, EdgeSpec, MetrizedGraph, Point, VertexId};
pub use measure::Measure;
