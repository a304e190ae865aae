use itertools::Itertools;
use nalgebra::Complex;
use serde::Serialize;

use crate::majorize::{majorization_slack, MajorizeError};
use crate::numeric::{haar_unitary, rng_for, CMat};

pub const SCHUR_HORN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchurHornRow {
    pub trial: u64,
    pub max_slack: f64,
    pub inside: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurHornReport {
    pub n: usize,
    pub rows: Vec<SchurHornRow>,
    pub max_slack: f64,
    pub violations: usize,
    /// Permutation matrices reproduce every permuted `λ` exactly.
    pub extreme_points_attained: bool,
}

fn diagonal(u: &CMat, lambda: &[f64]) -> Vec<f64> {
    let n = lambda.len();
    let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        lambda.iter().map(|&l| Complex::new(l, 0.0)),
    ));
    let m = u * d * u.adjoint();
    (0..n).map(|i| m[(i, i)].re).collect()
}

/// `diag(U diag(λ) U*)` for a Haar unitary drawn from stream `trial`.
pub fn schur_horn_trial(lambda: &[f64], seed: u64, trial: u64) -> (Vec<f64>, SchurHornRow) {
    let mut rng = rng_for(seed, trial);
    let u = haar_unitary(lambda.len(), &mut rng);
    let d = diagonal(&u, lambda);
    let slack = majorization_slack(lambda, &d).expect("same dimension");
    (d, SchurHornRow { trial, max_slack: slack, inside: slack <= SCHUR_HORN_TOL })
}

/// Monte-Carlo check that Haar diagonals lie in `conv(S_n λ)`.
pub fn schur_horn_sample(
    lambda: &[f64],
    trials: usize,
    seed: u64,
) -> Result<SchurHornReport, MajorizeError> {
    let n = lambda.len();
    if n < 2 {
        return Err(MajorizeError::UnsupportedSize(n));
    }
    let rows: Vec<SchurHornRow> =
        (0..trials as u64).map(|t| schur_horn_trial(lambda, seed, t).1).collect();
    Ok(report(lambda, rows))
}

/// Aggregates trial rows and checks the permutation-matrix vertices.
pub fn report(lambda: &[f64], rows: Vec<SchurHornRow>) -> SchurHornReport {
    let n = lambda.len();
    let extreme_points_attained = n > 8
        || (0..n).permutations(n).all(|p| {
            let mut u = CMat::zeros(n, n);
            for (i, &j) in p.iter().enumerate() {
                u[(i, j)] = Complex::new(1.0, 0.0);
            }
            let d = diagonal(&u, lambda);
            d.iter().zip(&p).all(|(a, &j)| *a == lambda[j])
        });
    SchurHornReport {
        n,
        max_slack: rows.iter().map(|r| r.max_slack).fold(f64::NEG_INFINITY, f64::max),
        violations: rows.iter().filter(|r| !r.inside).count(),
        rows,
        extreme_points_attained,
    }
}
