//! Polyhedral convex sets, their duals, recession cones and support functionals.

pub mod dd;
pub mod fm;
pub mod json;
mod ops;
mod polyhedron;

pub use ops::*;
pub use polyhedron::{HalfSpace, Membership, PolyhedralSet, Representation, VRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvexError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("half space with zero normal")]
    ZeroNormal,
    #[error("V-representation needs at least one point")]
    EmptyVRep,
    #[error("input is not a cone: {0}")]
    NotACone(&'static str),
    #[error("set is empty")]
    Empty,
    #[error("set is not semi-equicontinuous (its recession cone contains a line)")]
    NotSemiEquicontinuous,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("the closure contains the origin")]
    ZeroInClosure,
    #[error("set is unbounded")]
    Unbounded,
    #[error("point is not in the open set")]
    PointOutside,
    #[error("reconstruction differs from the input set")]
    RoundTripMismatch,
    #[error("invalid polyhedral JSON: {0}")]
    Json(String),
}
