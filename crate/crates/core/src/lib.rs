//! Harmonic analysis on directed graphs built on the combinatorial directed
//! Laplacian `L = D_out - A`: a biorthogonal graph Fourier transform,
//! directed total variation with conditioning-aware bounds, and bandlimited
//! sampling with stability certificates.

pub mod bgft;
pub mod eigen;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod rng;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::DirectedGraph;
pub use nalgebra;
