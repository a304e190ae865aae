//! Convex geometry of invariant cones at desk scale.
//!
//! The exact kernel (`convexcore`, `coxeter`, `majorize`) is generic over
//! [`Scalar`]; `rootsys` and `doubleext` are numerical and work in `f64`.

pub mod convexcore;
pub mod coxeter;
pub mod doubleext;
pub mod linalg;
pub mod lp;
pub mod majorize;
pub mod numeric;
pub mod rootsys;
pub mod scalar;

pub use linalg::Vector;
pub use scalar::{format_rational, parse_rational, Scalar};

/// Exact rational scalar.
pub type Rational = num::rational::BigRational;
pub type RationalVector = Vector<Rational>;
pub type PolyhedralSetQ = convexcore::PolyhedralSet<Rational>;
pub type PolyhedralSetF64 = convexcore::PolyhedralSet<f64>;
pub type HalfSpaceQ = convexcore::HalfSpace<Rational>;
pub type ReflectionDataQ = coxeter::ReflectionData<Rational>;
pub type ReflectionDataF64 = coxeter::ReflectionData<f64>;
pub type LinearCoxeterSystemQ = coxeter::LinearCoxeterSystem<Rational>;
pub type LinearCoxeterSystemF64 = coxeter::LinearCoxeterSystem<f64>;

/// Shorthand for an exact rational `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
