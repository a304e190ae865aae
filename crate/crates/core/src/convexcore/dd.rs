//! Double description: generators of `{x : a_i·x >= 0, e_j·x = 0}`.

use crate::linalg::Vector;
use crate::scalar::Scalar;

/// A polyhedral cone as `span(lineality) + cone(rays)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeGenerators<T> {
    pub lineality: Vec<Vector<T>>,
    pub rays: Vec<Vector<T>>,
}

impl<T: Scalar> ConeGenerators<T> {
    /// All generators as rays, lineality directions included with both signs.
    pub fn all_rays(&self) -> Vec<Vector<T>> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(-l);
        }
        out
    }
}

struct Ray<T> {
    v: Vector<T>,
    // indices of processed inequalities vanishing on v, sorted
    zeros: Vec<usize>,
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.by_ref().any(|b| b == s))
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Minimal generators of the cone `{x ∈ R^dim : a·x >= 0 (a ∈ ineqs), e·x = 0 (e ∈ eqs)}`.
pub fn cone_generators<T: Scalar>(
    dim: usize,
    ineqs: &[Vector<T>],
    eqs: &[Vector<T>],
) -> ConeGenerators<T> {
    let mut lineality: Vec<Vector<T>> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
    let mut rays: Vec<Ray<T>> = Vec::new();

    for e in eqs {
        cut_lineality(&mut lineality, &mut rays, e, None);
    }

    for (k, a) in ineqs.iter().enumerate() {
        if cut_lineality(&mut lineality, &mut rays, a, Some(k)) {
            continue;
        }
        let vals: Vec<T> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_pos()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_neg()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].approx_zero() {
                    r.zeros.push(k);
                }
            }
            continue;
        }
        let mut next: Vec<Ray<T>> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = intersect(&rays[p].zeros, &rays[n].zeros);
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != n)
                    .all(|r| !is_subset(&common, &rays[r].zeros));
                if !adjacent {
                    continue;
                }
                // (a·p) n - (a·n) p has a-value zero and positive weights on both
                let v = rays[n]
                    .v
                    .scale(&vals[p])
                    .axpy(&(-vals[n].clone()), &rays[p].v)
                    .normalized_direction();
                if v.is_zero() {
                    continue;
                }
                let mut zeros = common;
                zeros.push(k);
                next.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray<T>> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_neg() {
                continue;
            }
            if vals[i].approx_zero() {
                r.zeros.push(k);
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
    }

    ConeGenerators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

/// If some lineality direction is not orthogonal to `a`, use it to reduce the
/// lineality space by one; an inequality additionally contributes that direction as a ray.
fn cut_lineality<T: Scalar>(
    lineality: &mut Vec<Vector<T>>,
    rays: &mut Vec<Ray<T>>,
    a: &Vector<T>,
    ineq_index: Option<usize>,
) -> bool {
    let Some(pivot) = lineality.iter().position(|l| !a.dot(l).approx_zero()) else {
        return false;
    };
    let l0 = lineality.remove(pivot);
    let v0 = a.dot(&l0);
    for l in lineality.iter_mut() {
        let c = a.dot(l) / v0.clone();
        *l = l.axpy(&(-c), &l0).normalized_direction();
    }
    for r in rays.iter_mut() {
        let c = a.dot(&r.v) / v0.clone();
        r.v = r.v.axpy(&(-c), &l0).normalized_direction();
        if let Some(k) = ineq_index {
            r.zeros.push(k);
        }
    }
    if let Some(k) = ineq_index {
        let dir = if v0.is_pos() { l0 } else { -&l0 };
        // a former lineality direction vanishes on every earlier inequality
        rays.push(Ray { v: dir.normalized_direction(), zeros: (0..k).collect() });
    }
    true
}
