//! Finite-dimensional Lie algebras, root decompositions with respect to an
//! elliptic Cartan subalgebra, and orbit projections.

mod algebra;
mod cones;
mod decomp;
mod matrix;
mod sample;

pub use algebra::FiniteLieAlgebra;
pub use cones::{cmin_cmax, find_positive_systems, SandwichCones};
pub use decomp::{
    complex_bracket, decompose, ComplexElement, RootData, RootDecomposition, RootVectorTag,
    RootVectorType, CLUSTER_TOL, TYPE_TOL,
};
pub use matrix::{build_un, build_upq, MatrixRealForm};
pub use sample::{
    ad_product, kostant_sample, kostant_trial, orbit_projection_curve, summarize, torus_average_error, weyl_vertex_samples,
    KostantReport, HULL_TOL,
};

pub(crate) use algebra::{bilinear, unit};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootSysError {
    #[error("structure constants are not antisymmetric")]
    NotAntisymmetric,
    #[error("Jacobi identity fails (residual {0:e})")]
    JacobiFails(f64),
    #[error("invariant form is not invariant (residual {0:e})")]
    KappaNotInvariant(f64),
    #[error("not a root vector (residual {0:e})")]
    NotARootVector(f64),
    #[error("a root space has dimension > 1; the basis check is not conclusive")]
    MultidimensionalRootSpace,
    #[error("the algebra has non-compact roots")]
    NonCompactType,
    #[error("not a positive system: {0}")]
    NotAPositiveSystem(String),
    #[error("sandwich C_min ⊆ C_max fails")]
    SandwichViolated,
    #[error("root decomposition failed: {0}")]
    Decomposition(String),
    #[error("orbit point off the closed-form curve at s = {s} (defect {defect:e})")]
    OffCurve { s: f64, defect: f64 },
    #[error("numeric overflow in the matrix exponential at s = {0}")]
    NumericOverflow(f64),
    #[error("invalid algebra data: {0}")]
    Schema(String),
}

#[cfg(test)]
mod tests;
