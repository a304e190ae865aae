//! Rearrangements and majorization of finite sequences and step functions.

mod cones;
mod ryff;
mod schurhorn;

use itertools::Itertools;

use crate::linalg::{dedup_vectors, Vector};
use crate::lp::{self, LinearProgram, Relation};
use crate::scalar::Scalar;

pub use cones::{
    maxnorm_identity_check, maxnorm_vertices, permutation_cone_check, permutation_cone_witness,
    PermConeReport, PermConeWitness,
};
pub use ryff::{equimeasurable, ryff_majorized, ryff_rearrangement, StepFunction};
pub use schurhorn::{
    report as schur_horn_report, schur_horn_sample, schur_horn_trial, SchurHornReport, SchurHornRow, SCHUR_HORN_TOL,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MajorizeError {
    #[error("k = {k} is out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("empty vector")]
    Empty,
    #[error("invalid step function: {0}")]
    BadStepFunction(String),
    #[error("the cone is the whole space")]
    NotProper,
    #[error("the cone has empty interior")]
    EmptyInterior,
    #[error("permutation-invariant cone violates the sign dichotomy")]
    DichotomyViolated,
    #[error("n = {0} is outside the supported range")]
    UnsupportedSize(usize),
}

/// Entries sorted in decreasing order.
pub fn decreasing<T: Scalar>(x: &[T]) -> Vec<T> {
    let mut v = x.to_vec();
    v.sort_by(|a, b| b.partial_cmp(a).expect("scalars are ordered"));
    v
}

/// Sum of the `k` largest entries.
pub fn s_k<T: Scalar>(x: &[T], k: usize) -> Result<T, MajorizeError> {
    if k == 0 || k > x.len() {
        return Err(MajorizeError::KOutOfRange { k, n: x.len() });
    }
    Ok(decreasing(x).into_iter().take(k).fold(T::zero(), |a, b| a + b))
}

/// All partial sums `s_1(x), ..., s_n(x)`.
pub fn partial_sums<T: Scalar>(x: &[T]) -> Vec<T> {
    decreasing(x)
        .into_iter()
        .scan(T::zero(), |acc, v| {
            *acc = acc.clone() + v;
            Some(acc.clone())
        })
        .collect()
}

fn same_dim<T>(x: &[T], y: &[T]) -> Result<(), MajorizeError> {
    if x.len() != y.len() {
        return Err(MajorizeError::DimensionMismatch(x.len(), y.len()));
    }
    if x.is_empty() {
        return Err(MajorizeError::Empty);
    }
    Ok(())
}

/// `y ∈ conv(S_n x)`: `s_k(y) <= s_k(x)` for `k < n` and `s_n(y) = s_n(x)`.
pub fn hull_membership_finite<T: Scalar>(x: &[T], y: &[T]) -> Result<bool, MajorizeError> {
    same_dim(x, y)?;
    let (sx, sy) = (partial_sums(x), partial_sums(y));
    let n = x.len();
    let ineqs = (0..n - 1).all(|k| !(sy[k].clone() - sx[k].clone()).is_pos());
    Ok(ineqs && sy[n - 1].approx_eq(&sx[n - 1]))
}

/// Largest violation of the majorization conditions; nonpositive means inside.
pub fn majorization_slack(x: &[f64], y: &[f64]) -> Result<f64, MajorizeError> {
    same_dim(x, y)?;
    let (sx, sy) = (partial_sums(x), partial_sums(y));
    let n = x.len();
    let ineq = (0..n - 1).map(|k| sy[k] - sx[k]).fold(f64::NEG_INFINITY, f64::max);
    Ok(ineq.max((sy[n - 1] - sx[n - 1]).abs()))
}

/// `s_k(y) <= s_k(x)` and `s_k(-y) <= s_k(-x)` for every `k <= n`.
pub fn hull_membership_twosided<T: Scalar>(x: &[T], y: &[T]) -> Result<bool, MajorizeError> {
    same_dim(x, y)?;
    let neg = |v: &[T]| v.iter().map(|a| -a.clone()).collect::<Vec<T>>();
    let holds = |a: &[T], b: &[T]| {
        partial_sums(a).iter().zip(partial_sums(b)).all(|(sa, sb)| !(sb - sa.clone()).is_pos())
    };
    Ok(holds(x, y) && holds(&neg(x), &neg(y)))
}

/// Distinct permutations of `x`.
pub fn orbit<T: Scalar>(x: &[T]) -> Vec<Vector<T>> {
    let n = x.len();
    dedup_vectors(
        (0..n)
            .permutations(n)
            .map(|p| Vector(p.into_iter().map(|i| x[i].clone()).collect()))
            .collect(),
    )
}

/// Membership in `conv(S_n x)` by an LP over the explicit orbit.
pub fn hull_membership_lp<T: Scalar>(x: &[T], y: &[T]) -> Result<bool, MajorizeError> {
    same_dim(x, y)?;
    Ok(lp::in_hull(&orbit(x), &[], &Vector(y.to_vec())).is_some())
}

/// Membership in `conv(S_n x)` as `y = P x` with `P` doubly stochastic.
pub fn hull_membership_birkhoff<T: Scalar>(x: &[T], y: &[T]) -> Result<bool, MajorizeError> {
    same_dim(x, y)?;
    let n = x.len();
    let var = |i: usize, j: usize| i * n + j;
    let mut prog = LinearProgram::new(n * n);
    for i in 0..n {
        let mut row = vec![T::zero(); n * n];
        let mut col = vec![T::zero(); n * n];
        let mut img = vec![T::zero(); n * n];
        for j in 0..n {
            row[var(i, j)] = T::one();
            col[var(j, i)] = T::one();
            img[var(i, j)] = x[j].clone();
        }
        prog.add(row, Relation::Eq, T::one());
        prog.add(col, Relation::Eq, T::one());
        prog.add(img, Relation::Eq, y[i].clone());
    }
    Ok(prog.feasible().is_some())
}

#[cfg(test)]
mod tests;
