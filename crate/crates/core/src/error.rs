use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("exterior degree {degree} out of range for a {rows}x{cols} matrix")]
    WedgeDegree {
        degree: usize,
        rows: usize,
        cols: usize,
    },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("linear system is rank deficient (rank {rank}, {cols} unknowns)")]
    RankDeficient { rank: usize, cols: usize },

    #[error("expected an integral result: {0}")]
    NonIntegral(String),

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,

    #[error("polar dual is not a lattice polytope: vertex {0}")]
    DualNotLattice(String),

    #[error("polytope is not reflexive")]
    NotReflexive,

    #[error("polytope is not facet-simplicial")]
    NotFacetSimplicial,

    #[error("faces {face:?} and {coface:?} are not incident")]
    NotIncident {
        face: Vec<usize>,
        coface: Vec<usize>,
    },

    #[error("unknown face {0:?}")]
    UnknownFace(Vec<usize>),

    #[error("expected a {expected}-dimensional polytope, got dimension {actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("boundary of boundary is nonzero at (deg {deg}, r {r})")]
    BoundarySquared { deg: usize, r: usize },

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}
