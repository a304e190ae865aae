use itertools::Itertools;

use crate::convexcore::{HalfSpace, PolyhedralSet};
use crate::linalg::{dedup_vectors, rank, Vector};
use crate::lp;
use crate::majorize::{orbit, MajorizeError};
use crate::scalar::Scalar;

/// Vertices of `{x : Σx = 0, ‖x‖₁ <= 2}` by exact vertex enumeration.
pub fn maxnorm_vertices<T: Scalar>(n: usize) -> Result<Vec<Vector<T>>, MajorizeError> {
    if !(2..=8).contains(&n) {
        return Err(MajorizeError::UnsupportedSize(n));
    }
    let two = T::from_int(2);
    let ones = Vector(vec![T::one(); n]);
    let mut hs = vec![HalfSpace::new(ones.clone(), T::zero()), HalfSpace::new(-ones, T::zero())];
    // ‖x‖₁ <= 2 as the 2^n sign rows -σ·x >= -2
    for signs in (0..n).map(|_| [T::one(), -T::one()]).multi_cartesian_product() {
        hs.push(HalfSpace::new(-Vector(signs), -two.clone()));
    }
    let set = PolyhedralSet::from_hrep(n, hs).expect("nonzero normals");
    let v = set.vrep();
    assert!(v.rays.is_empty(), "the set is bounded");
    Ok(dedup_vectors(v.points.clone()))
}

/// The vertex set equals `{e_i - e_j : i ≠ j}`.
pub fn maxnorm_identity_check<T: Scalar>(n: usize) -> Result<bool, MajorizeError> {
    let key = |v: &Vector<T>| v.iter().map(|x| x.to_string()).join(",");
    let mut got: Vec<String> = maxnorm_vertices::<T>(n)?.iter().map(key).collect();
    let mut want: Vec<String> = (0..n)
        .cartesian_product(0..n)
        .filter(|(i, j)| i != j)
        .map(|(i, j)| key(&(Vector::unit(n, i) - Vector::unit(n, j))))
        .collect();
    got.sort();
    want.sort();
    Ok(got == want)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PermConeReport<T> {
    pub generators: usize,
    /// `+1` when `χ ∈ Ω⋆`, `-1` when `-χ ∈ Ω⋆`.
    pub chi_sign: i8,
    /// `c` with the constant vector `c·1` certified interior.
    pub constant_interior: T,
}

/// `(F_1, F_2, a, b)` with `a e_{F_1} - b e_{F_2}` certified interior.
pub type PermConeWitness<T> = (Vec<usize>, Vec<usize>, T, T);

fn indicator<T: Scalar>(n: usize, f: &[usize], c: &T) -> Vector<T> {
    let mut v = Vector::zeros(n);
    for &i in f {
        v.0[i] = c.clone();
    }
    v
}

/// Interior certificate: `p ± δ e_i ∈ cone(gens)` for every `i`.
fn certified_interior<T: Scalar>(gens: &[Vector<T>], p: &Vector<T>, delta: &T) -> bool {
    let n = p.dim();
    (0..n).all(|i| {
        let e = Vector::unit(n, i).scale(delta);
        lp::in_cone(gens, &(p.clone() + e.clone())) && lp::in_cone(gens, &(p.clone() - e))
    })
}

fn orbit_generators<T: Scalar>(vectors: &[Vector<T>], n: usize) -> Result<Vec<Vector<T>>, MajorizeError> {
    if n < 2 {
        return Err(MajorizeError::UnsupportedSize(n));
    }
    if let Some(v) = vectors.iter().find(|v| v.dim() != n) {
        return Err(MajorizeError::DimensionMismatch(n, v.dim()));
    }
    let gens: Vec<Vector<T>> =
        dedup_vectors(vectors.iter().flat_map(|v| orbit(&v.0)).filter(|g| !g.is_zero()).collect());
    if gens.is_empty() || rank(&gens) < n {
        return Err(MajorizeError::EmptyInterior);
    }
    Ok(gens)
}

/// Sign dichotomy of the summation functional on the open cone `Ω` generated
/// by the `S_n`-orbits of `vectors`.
///
/// The sign of `χ` on generators is read exactly; properness is decided
/// separately by LP membership of `±e_i`, and the two must agree.
pub fn permutation_cone_check<T: Scalar>(
    vectors: &[Vector<T>],
    n: usize,
) -> Result<PermConeReport<T>, MajorizeError> {
    let gens = orbit_generators(vectors, n)?;
    // the sign of χ is constant on each orbit
    let pos = vectors.iter().any(|v| v.sum().is_pos());
    let neg = vectors.iter().any(|v| v.sum().is_neg());
    let whole = (0..n).all(|i| {
        let e = Vector::unit(n, i);
        lp::in_cone(&gens, &e) && lp::in_cone(&gens, &-e)
    });
    match (pos && neg, whole) {
        (true, true) => return Err(MajorizeError::NotProper),
        (true, false) | (false, true) => return Err(MajorizeError::DichotomyViolated),
        _ => {}
    }
    let chi_sign: i8 = if pos { 1 } else { -1 };
    let s = T::from_int(chi_sign as i64);
    if gens.iter().any(|g| (g.sum() * s.clone()).is_neg()) {
        return Err(MajorizeError::DichotomyViolated);
    }
    let ones = Vector(vec![s.clone(); n]);
    let mut delta = T::one();
    for _ in 0..64 {
        if certified_interior(&gens, &ones, &delta) {
            return Ok(PermConeReport { generators: gens.len(), chi_sign, constant_interior: s });
        }
        delta = delta / T::from_int(2);
    }
    Err(MajorizeError::DichotomyViolated)
}

/// Searches `a e_{F_1} - b e_{F_2}` in `Ω` over block sizes and ratios `b/a = 2^j`,
/// `|j| <= 4`. At finite `n` such an element need not exist (the open
/// orthant has none).
pub fn permutation_cone_witness<T: Scalar>(
    vectors: &[Vector<T>],
    n: usize,
) -> Result<Option<PermConeWitness<T>>, MajorizeError> {
    let gens = orbit_generators(vectors, n)?;
    let two = T::from_int(2);
    for k1 in 1..n {
        for k2 in 1..=n - k1 {
            let f1: Vec<usize> = (0..k1).collect();
            let f2: Vec<usize> = (k1..k1 + k2).collect();
            for j in -4i32..=4 {
                let ratio = if j >= 0 {
                    (0..j).fold(T::one(), |acc, _| acc * two.clone())
                } else {
                    (0..-j).fold(T::one(), |acc, _| acc / two.clone())
                };
                let (a, b) = if j >= 0 { (T::one(), ratio) } else { (T::one() / ratio, T::one()) };
                let w = indicator(n, &f1, &a) - indicator(n, &f2, &b);
                let delta = if a < b { a.clone() } else { b.clone() } / T::from_int(64);
                if certified_interior(&gens, &w, &delta) {
                    return Ok(Some((f1, f2, a, b)));
                }
            }
        }
    }
    Ok(None)
}
