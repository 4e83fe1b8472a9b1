use crate::complex::Simplex;
use thiserror::Error;

/// Errors reported by the library.
///
/// Programmer-contract violations (e.g. handing an unsorted slice to an
/// internal constructor) panic instead; everything that can arise from user
/// data or parameter files goes through this enum.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} is outside the ambient set 0..{ambient}")]
    VertexOutOfRange { vertex: usize, ambient: usize },

    #[error("vertex {vertex} is not a face of the complex")]
    VertexNotFound { vertex: usize },

    #[error("dimension {dim} is outside the cap 0..={cap}")]
    DimensionOutOfRange { dim: usize, cap: usize },

    #[error("face {face} exceeds the dimension cap {cap}")]
    FaceAboveCap { face: Simplex, cap: usize },

    #[error("simplex has repeated vertices")]
    RepeatedVertices,

    #[error("{0}")]
    InvalidParams(String),

    #[error("determining set must be nonempty")]
    EmptyDeterminingSet,

    #[error("expansion start set is not contained in the complex vertices: {vertex} missing")]
    ExpansionStartNotPresent { vertex: usize },

    #[error("face {face} of the inner complex is not a face of the outer complex")]
    NotASubcomplex { face: Simplex },

    #[error("exterior face {face} has boundary outside the inner complex")]
    ExteriorBoundaryEscapes { face: Simplex },

    #[error("inner complex has face {face} above the model dimension cap {cap}")]
    InnerAboveModelCap { face: Simplex, cap: usize },

    #[error("ambient vertex counts differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("genus must be at least 1, got {0}")]
    GenusTooSmall(u32),

    #[error("identical vertices passed where distinct ones are required")]
    IdenticalVertices,

    #[error("clique size {clique_size} is smaller than the pattern vertex count {needed}")]
    CliqueSizeTooSmall { clique_size: usize, needed: usize },

    #[error("tail argument n^(-alpha1) = {z} is not inside (0, 1)")]
    TailOutOfDomain { z: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
