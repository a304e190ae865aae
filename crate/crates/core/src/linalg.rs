//! Dense vectors and row-reduction over a [`Scalar`] field.

use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A coordinate vector. With `T = BigRational` all arithmetic is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vector<T>(pub Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Vector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Vector(self.0.iter().map(|x| x.clone() * s.clone()).collect())
    }

    /// `self + s * other`
    pub fn axpy(&self, s: &T, other: &Self) -> Self {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + s.clone() * b.clone())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.approx_zero())
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a.approx_eq(b))
    }

    /// Canonical representative of the ray through `self`.
    pub fn normalized_direction(&self) -> Self {
        let mut v = self.0.clone();
        T::normalize_direction(&mut v);
        Vector(v)
    }

    pub fn sum(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, x| acc + x.clone())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64_lossy).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Vector<U> {
        Vector(self.0.iter().map(f).collect())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vector<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: Scalar> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<T: Scalar> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

impl<T: Scalar> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<T: Scalar> Add for Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        -&self
    }
}

impl<T> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Vector(v)
    }
}

/// Row-major dense matrix as a list of rows.
pub type Rows<T> = Vec<Vec<T>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Scalar>(m: &mut Rows<T>) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // partial pivoting; for exact types any nonzero entry works
        let best = (r..nrows)
            .filter(|&i| !m[i][c].approx_zero())
            .max_by(|&a, &b| {
                m[a][c]
                    .abs()
                    .partial_cmp(&m[b][c].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let delta = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if !T::is_exact() {
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                if x.approx_zero() {
                    *x = T::zero();
                }
            }
        }
    }
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vector<T>]) -> usize {
    let mut m: Rows<T> = rows.iter().map(|v| v.0.clone()).collect();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows and `ncols` columns.
pub fn nullspace<T: Scalar>(rows: &[Vector<T>], ncols: usize) -> Vec<Vector<T>> {
    let mut m: Rows<T> = rows.iter().map(|v| v.0.clone()).collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            Vector(v)
        })
        .collect()
}

/// Solves `A x = b` (any solution), `None` if inconsistent.
pub fn solve<T: Scalar>(a: &[Vector<T>], b: &Vector<T>) -> Option<Vector<T>> {
    let ncols = a.first().map_or(0, Vector::dim);
    let mut m: Rows<T> = a
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut r = row.0.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][ncols].clone();
    }
    Some(Vector(x))
}

/// Coefficients expressing `target` in terms of `basis` (columns), if it lies in their span.
pub fn coordinates_in_span<T: Scalar>(basis: &[Vector<T>], target: &Vector<T>) -> Option<Vector<T>> {
    let n = target.dim();
    let a: Vec<Vector<T>> = (0..n)
        .map(|i| Vector(basis.iter().map(|b| b[i].clone()).collect()))
        .collect();
    if basis.is_empty() {
        return if target.is_zero() { Some(Vector(vec![])) } else { None };
    }
    solve(&a, target)
}

pub fn determinant<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a: Rows<T> = m.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].approx_zero()) else {
            return T::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            let f = a[i][c].clone() / pivot.clone();
            for j in c..n {
                let delta = f.clone() * a[c][j].clone();
                a[i][j] = a[i][j].clone() - delta;
            }
        }
    }
    det
}

pub fn mat_vec<T: Scalar>(m: &[Vec<T>], v: &Vector<T>) -> Vector<T> {
    Vector(
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v.iter())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect(),
    )
}

pub fn mat_mul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Rows<T> {
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| (0..k).fold(T::zero(), |acc, l| acc + row[l].clone() * b[l][j].clone()))
                .collect()
        })
        .collect()
}

pub fn identity<T: Scalar>(n: usize) -> Rows<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Rows<T> {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Removes duplicate vectors (up to the scalar tolerance), keeping first occurrences.
pub fn dedup_vectors<T: Scalar>(vs: Vec<Vector<T>>) -> Vec<Vector<T>> {
    let mut out: Vec<Vector<T>> = Vec::with_capacity(vs.len());
    for v in vs {
        if !out.iter().any(|w| w.approx_eq(&v)) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    type Q = BigRational;

    fn v(c: &[i64]) -> Vector<Q> {
        Vector::from_i64(c)
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let ns = nullspace(&[v(&[1, 1, 1])], 3);
        assert_eq!(ns.len(), 2);
        for n in &ns {
            assert!(v(&[1, 1, 1]).dot(n).approx_zero());
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![v(&[1, 1]), v(&[2, 2])];
        assert!(solve(&a, &v(&[1, 3])).is_none());
        let x = solve(&a, &v(&[1, 2])).unwrap();
        assert_eq!(v(&[1, 1]).dot(&x), Q::from_integer(1.into()));
    }

    #[test]
    fn exact_determinant() {
        let m: Rows<Q> = vec![v(&[0, 1]).0, v(&[1, 0]).0];
        assert_eq!(determinant(&m), Q::from_integer((-1).into()));
        let m: Rows<Q> = vec![v(&[2, 1, 0]).0, v(&[1, 3, 1]).0, v(&[0, 1, 4]).0];
        assert_eq!(determinant(&m), Q::from_integer(18.into()));
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let rows = vec![Vector(vec![1.0, 2.0]), Vector(vec![2.0, 4.0 + 1e-15])];
        assert_eq!(rank(&rows), 1);
    }
}
