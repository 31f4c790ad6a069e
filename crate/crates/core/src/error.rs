use crate::complex::{SphereDefect, Vertex};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by the whole library. Variants carry enough context to
/// point at the offending vertex/facet/line rather than just a category.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("facet list is empty")]
    EmptyFacetList,

    #[error("facet #{index} is empty")]
    EmptyFacet { index: usize },

    #[error("facet #{index} repeats vertex {label}")]
    RepeatedVertex { index: usize, label: Vertex },

    #[error("vertex label {label} out of range for n = {n}")]
    LabelOutOfRange { label: Vertex, n: usize },

    #[error("vertex {label} occurs in no facet")]
    UnusedLabel { label: Vertex },

    #[error("facet {inner:?} is contained in facet {outer:?}")]
    NonMaximalFacet { inner: Vec<Vertex>, outer: Vec<Vertex> },

    #[error("vertex {vertex} is not a vertex of the complex")]
    UnknownVertex { vertex: Vertex },

    #[error("not a triangulated 2-sphere: {defect}")]
    NotASphere { defect: SphereDefect },

    #[error("{facet:?} is not a facet of the complex")]
    MissingFacet { facet: Vec<Vertex> },

    #[error("edge ({0}, {1}) is not an edge of the complex", edge.0, edge.1)]
    MissingEdge { edge: (Vertex, Vertex) },

    #[error("edge ({0}, {1}) is already present", edge.0, edge.1)]
    EdgeAlreadyPresent { edge: (Vertex, Vertex) },

    #[error("edge ({0}, {1}) does not lie in exactly two facets", edge.0, edge.1)]
    BadFlipEdge { edge: (Vertex, Vertex) },

    #[error("flip of ({0}, {1}) would create ({2}, {3}), not the requested edge", removed.0, removed.1, actual.0, actual.1)]
    FlipMismatch {
        removed: (Vertex, Vertex),
        actual: (Vertex, Vertex),
    },

    #[error("vertex {vertex} has degree {degree}, expected 3")]
    DegreeNotThree { vertex: Vertex, degree: usize },

    #[error("cannot restore facet {facet:?}: those vertices already span a face")]
    FaceObstruction { facet: Vec<Vertex> },

    #[error("input has {n} vertices, which exceeds the cap of {cap} (raise the cap to accept exponential cost)")]
    CapExceeded { n: usize, cap: usize },

    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("complex has no induced 3-cycle (it is flag), so no index-reducing flip exists")]
    NoInducedThreeCycle,

    #[error("operation supports dimension at most {max}, complex has dimension {dim}")]
    DimensionTooHigh { dim: usize, max: usize },

    #[error("graphs are represented with 64-bit adjacency rows; n = {n} exceeds 64")]
    GraphTooLarge { n: usize },

    #[error("link of vertex {vertex} is not a 2-sphere: {defect}")]
    LinkNotSphere { vertex: Vertex, defect: SphereDefect },

    #[error("complex is not neighbourly")]
    NotNeighbourly,

    #[error("complex is not connected")]
    NotConnected,

    #[error("complex is not a closed 3-manifold: {reason}")]
    NotManifold3 { reason: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{message}")]
    Input { message: String },

    #[error("replay failed at move #{index}: {message}")]
    Replay { index: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable process exit code for the CLI: 2 for anything that boils down
    /// to bad input, 3 for size caps. Exit code 1 (verification violation)
    /// is decided by the CLI itself, not by the error type.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}
