//! Fourier–Motzkin elimination, kept as an independent route from generators
//! to inequalities for cross-checking the double description code.

use crate::linalg::{dedup_vectors, Vector};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::scalar::Scalar;

/// Eliminates variable `j` from the homogeneous system `{x : row·x >= 0}`.
pub fn eliminate<T: Scalar>(rows: &[Vector<T>], j: usize) -> Vec<Vector<T>> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for r in rows {
        if r[j].is_pos() {
            pos.push(r);
        } else if r[j].is_neg() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            // p[j] > 0 > n[j]: the combination kills coordinate j
            let mut row = n.scale(&p[j]).axpy(&(-n[j].clone()), p);
            row[j] = T::zero();
            if !row.is_zero() {
                out.push(row.normalized_direction());
            }
        }
    }
    let out: Vec<Vector<T>> = out.into_iter().map(|r| r.normalized_direction()).collect();
    prune(dedup_vectors(out))
}

/// Removes rows implied by the remaining ones (homogeneous, exact LP).
fn prune<T: Scalar>(mut rows: Vec<Vector<T>>) -> Vec<Vector<T>> {
    let mut i = 0;
    while i < rows.len() {
        if rows[i].is_zero() {
            rows.remove(i);
            continue;
        }
        let dim = rows[i].dim();
        let mut prog = LinearProgram::new_free(dim);
        for (k, r) in rows.iter().enumerate() {
            if k != i {
                prog.add(r.0.clone(), Relation::Ge, T::zero());
            }
        }
        // bounded probe: row_i·x >= -1 makes the minimum finite when implied
        prog.add(rows[i].0.clone(), Relation::Ge, -T::one());
        let implied = matches!(prog.minimize(&rows[i].0), LpOutcome::Optimal { value, .. } if !value.is_neg());
        if implied {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    rows
}

/// Inequalities `a·x >= 0` describing `cone(rays) ⊆ R^dim`, by eliminating the
/// multipliers from `x = Σ λ_k r_k, λ >= 0`.
///
/// Equalities are encoded as inequality pairs, so an equality direction of the
/// cone shows up as two opposite rows.
pub fn cone_hrep<T: Scalar>(dim: usize, rays: &[Vector<T>]) -> Vec<Vector<T>> {
    let k = rays.len();
    let width = dim + k;
    let mut rows = Vec::new();
    for i in 0..dim {
        let mut row = vec![T::zero(); width];
        row[i] = T::one();
        for (l, r) in rays.iter().enumerate() {
            row[dim + l] = -r[i].clone();
        }
        let row = Vector(row);
        rows.push(-&row);
        rows.push(row);
    }
    for l in 0..k {
        rows.push(Vector::unit(width, dim + l));
    }
    for l in (0..k).rev() {
        rows = eliminate(&rows, dim + l);
    }
    rows.into_iter().map(|r| Vector(r.0[..dim].to_vec())).filter(|r| !r.is_zero()).collect()
}
