//! Exact computation of the separation index of graphs and triangulated
//! 2-spheres, together with the surrounding machinery: bistellar moves,
//! stacked/flag classification, isomorph-free enumeration of small spheres,
//! and Z2 homology / sigma- and mu-vectors for triangulated 3-manifolds.
//!
//! All separation-index and mu-vector arithmetic is exact rational; no
//! floating point enters any computed invariant. Floats appear only in
//! display helpers that render a decimal approximation next to the exact
//! fraction.

pub mod census;
pub mod complex;
pub mod graph;
pub mod homology;
pub mod io;
pub mod moves;
pub mod rational;
pub mod separation;

mod error;

pub use complex::{Complex, FVector, SphereDefect, Vertex};
pub use error::{Error, Result};
pub use graph::Graph;
pub use rational::Rational;
