//! Linear Coxeter systems: reflections, chamber descent, Tits cone membership,
//! roots and convex hulls of orbits.

mod builtin;
mod classify;
pub mod json;
mod roots;

use std::collections::HashSet;

pub use builtin::{builtin, BUILTIN_NAMES};
pub use classify::{coxeter_matrix, is_finite_type, CoxeterEntry, FiniteType};
pub use roots::{Root, RootSet};

use crate::linalg::{self, Vector};
use crate::lp;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("unknown built-in system `{0}`")]
    UnknownName(String),
    #[error("pairing α_s(α_s^∨) is not 2 for generator {0}")]
    BadPairing(usize),
    #[error("reflection data needs at least one generator")]
    NoGenerators,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("chamber descent exceeded the cap of {0} reflections")]
    CapExceeded(usize),
    #[error("axiom {0} fails: {1}")]
    AxiomViolated(&'static str, String),
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error("membership indeterminate: {0}")]
    IndeterminateMembership(String),
    #[error("invalid reflection data JSON: {0}")]
    Json(String),
}

/// Functionals `α_s` and coroots `α_s^∨` with `α_s(α_s^∨) = 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionData<T> {
    pub dim: usize,
    pub alphas: Vec<Vector<T>>,
    pub coroots: Vec<Vector<T>>,
    pub labels: Vec<String>,
}

impl<T: Scalar> ReflectionData<T> {
    pub fn new(
        dim: usize,
        alphas: Vec<Vector<T>>,
        coroots: Vec<Vector<T>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, CoxeterError> {
        if alphas.is_empty() {
            return Err(CoxeterError::NoGenerators);
        }
        if alphas.len() != coroots.len() {
            return Err(CoxeterError::DimensionMismatch {
                expected: alphas.len(),
                found: coroots.len(),
            });
        }
        for v in alphas.iter().chain(&coroots) {
            if v.dim() != dim {
                return Err(CoxeterError::DimensionMismatch { expected: dim, found: v.dim() });
            }
        }
        let two = T::from_int(2);
        for (s, (a, c)) in alphas.iter().zip(&coroots).enumerate() {
            if !a.dot(c).approx_eq(&two) {
                return Err(CoxeterError::BadPairing(s));
            }
        }
        let labels = labels.unwrap_or_else(|| (1..=alphas.len()).map(|i| format!("s{i}")).collect());
        Ok(Self { dim, alphas, coroots, labels })
    }

    pub fn rank(&self) -> usize {
        self.alphas.len()
    }

    /// Cartan entries `a_st = α_s(α_t^∨)`.
    pub fn cartan(&self) -> Vec<Vec<T>> {
        self.alphas
            .iter()
            .map(|a| self.coroots.iter().map(|c| a.dot(c)).collect())
            .collect()
    }

    /// Matrix of `r_s` acting on column vectors.
    pub fn reflection_matrix(&self, s: usize) -> Vec<Vec<T>> {
        let (a, c) = (&self.alphas[s], &self.coroots[s]);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let id = if i == j { T::one() } else { T::zero() };
                        id - c[i].clone() * a[j].clone()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> ReflectionData<U> {
        ReflectionData {
            dim: self.dim,
            alphas: self.alphas.iter().map(|v| v.map(&f)).collect(),
            coroots: self.coroots.iter().map(|v| v.map(&f)).collect(),
            labels: self.labels.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lcs3Status {
    Builtin,
    /// No chamber overlap found among words of length at most the given bound.
    EmpiricallyChecked(usize),
    Declared,
}

/// A reflection word; `word[0]` is applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominantForm<T> {
    pub rep: Vector<T>,
    pub word: WeylWord,
    /// `S_v = {s : α_s(rep) = 0}`
    pub stabilizer_generators: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TitsClass {
    Interior,
    BoundaryOrOutside,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct LinearCoxeterSystem<T> {
    pub name: String,
    pub data: ReflectionData<T>,
    pub lcs3: Lcs3Status,
    /// Level functional of an affine system; positive exactly on the interior of the Tits cone.
    pub level: Option<Vector<T>>,
}

/// Word length used when checking LCS3 on user data.
pub const DEFAULT_LCS3_DEPTH: usize = 8;

impl<T: Scalar> LinearCoxeterSystem<T> {
    /// Validates LCS1 and LCS2 exactly and checks LCS3 up to `lcs3_depth`.
    pub fn from_data(
        name: impl Into<String>,
        data: ReflectionData<T>,
        lcs3_depth: usize,
    ) -> Result<Self, CoxeterError> {
        let mut sys = Self { name: name.into(), data, lcs3: Lcs3Status::Declared, level: None };
        sys.check_lcs1()?;
        sys.check_lcs2()?;
        sys.check_lcs3(lcs3_depth)?;
        sys.lcs3 = Lcs3Status::EmpiricallyChecked(lcs3_depth);
        Ok(sys)
    }

    /// Skips the LCS3 search and records the axiom as declared.
    pub fn declared(name: impl Into<String>, data: ReflectionData<T>) -> Result<Self, CoxeterError> {
        let sys = Self { name: name.into(), data, lcs3: Lcs3Status::Declared, level: None };
        sys.check_lcs1()?;
        sys.check_lcs2()?;
        Ok(sys)
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    pub fn default_cap(&self) -> usize {
        64 * self.dim()
    }

    /// An interior point of the chamber `K`, if `K` has one (LCS1).
    pub fn chamber_interior_point(&self) -> Option<Vector<T>> {
        let rows: Vec<(Vector<T>, T, bool)> =
            self.data.alphas.iter().map(|a| (a.clone(), T::zero(), true)).collect();
        lp::strictly_feasible(&rows, self.dim())
    }

    pub fn check_lcs1(&self) -> Result<(), CoxeterError> {
        self.chamber_interior_point()
            .map(|_| ())
            .ok_or_else(|| CoxeterError::AxiomViolated("LCS1", "chamber has empty interior".into()))
    }

    pub fn check_lcs2(&self) -> Result<(), CoxeterError> {
        for s in 0..self.rank() {
            let others: Vec<Vector<T>> = (0..self.rank())
                .filter(|&t| t != s)
                .map(|t| self.data.alphas[t].clone())
                .collect();
            if lp::in_cone(&others, &self.data.alphas[s]) {
                return Err(CoxeterError::AxiomViolated(
                    "LCS2",
                    format!("α_{} lies in the cone of the others", s + 1),
                ));
            }
        }
        Ok(())
    }

    /// No nontrivial `w` of length `<= depth` has `wK⁰ ∩ K⁰ ≠ ∅` (strict LP per element).
    pub fn check_lcs3(&self, depth: usize) -> Result<(), CoxeterError> {
        let n = self.dim();
        let id: Vec<Vec<T>> = linalg::identity(n);
        let mut seen: Vec<Vec<Vec<T>>> = vec![id.clone()];
        let mut frontier = vec![id.clone()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for m in &frontier {
                for s in 0..self.rank() {
                    let w = linalg::mat_mul(&self.data.reflection_matrix(s), m);
                    let same = |a: &Vec<Vec<T>>| {
                        a.iter().flatten().zip(w.iter().flatten()).all(|(x, y)| x.approx_eq(y))
                    };
                    if seen.iter().any(same) {
                        continue;
                    }
                    // x ∈ K⁰ and w x ∈ K⁰
                    let mut rows: Vec<(Vector<T>, T, bool)> = Vec::new();
                    for a in &self.data.alphas {
                        rows.push((a.clone(), T::zero(), true));
                        let pulled: Vec<T> = (0..n)
                            .map(|j| (0..n).fold(T::zero(), |acc, i| acc + a[i].clone() * w[i][j].clone()))
                            .collect();
                        rows.push((Vector(pulled), T::zero(), true));
                    }
                    if lp::strictly_feasible(&rows, n).is_some() {
                        return Err(CoxeterError::AxiomViolated(
                            "LCS3",
                            "a chamber translate meets the open chamber".into(),
                        ));
                    }
                    seen.push(w.clone());
                    next.push(w);
                }
            }
            frontier = next;
        }
        Ok(())
    }

    /// `r_s(v) = v - α_s(v) α_s^∨`
    pub fn reflect(&self, s: usize, v: &Vector<T>) -> Vector<T> {
        let a = self.data.alphas[s].dot(v);
        v.axpy(&(-a), &self.data.coroots[s])
    }

    pub fn try_reflect(&self, s: usize, v: &Vector<T>) -> Result<Vector<T>, CoxeterError> {
        if s >= self.rank() {
            return Err(CoxeterError::BadGenerator(s));
        }
        if v.dim() != self.dim() {
            return Err(CoxeterError::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        Ok(self.reflect(s, v))
    }

    pub fn apply(&self, word: &WeylWord, v: &Vector<T>) -> Vector<T> {
        word.0.iter().fold(v.clone(), |acc, &s| self.reflect(s, &acc))
    }

    pub fn in_chamber(&self, v: &Vector<T>) -> bool {
        self.data.alphas.iter().all(|a| !a.dot(v).is_neg())
    }

    pub fn level_of(&self, v: &Vector<T>) -> Option<T> {
        self.level.as_ref().map(|l| l.dot(v))
    }

    /// Chamber descent with the lowest negative index reflected first.
    pub fn to_dominant(&self, v: &Vector<T>, cap: usize) -> Result<DominantForm<T>, CoxeterError> {
        if v.dim() != self.dim() {
            return Err(CoxeterError::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        let mut cur = v.clone();
        let mut word = Vec::new();
        loop {
            let neg = self.data.alphas.iter().position(|a| a.dot(&cur).is_neg());
            let Some(s) = neg else { break };
            if word.len() == cap {
                return Err(CoxeterError::CapExceeded(cap));
            }
            cur = self.reflect(s, &cur);
            word.push(s);
        }
        let stabilizer_generators = (0..self.rank())
            .filter(|&s| self.data.alphas[s].dot(&cur).approx_zero())
            .collect();
        Ok(DominantForm { rep: cur, word: WeylWord(word), stabilizer_generators })
    }

    /// Interior of the Tits cone iff the point descends to `K` and its stabilizer is finite.
    pub fn tits_cone_classify(&self, v: &Vector<T>) -> TitsClass {
        match self.to_dominant(v, self.default_cap()) {
            Err(_) => TitsClass::BoundaryOrOutside,
            Ok(d) => match is_finite_type(&self.data, &d.stabilizer_generators) {
                FiniteType::Finite => TitsClass::Interior,
                FiniteType::Infinite => TitsClass::BoundaryOrOutside,
                FiniteType::Unknown => TitsClass::Unknown,
            },
        }
    }

    /// `u ∈ conv(W v)` through the dominance test `v⁺ - u⁺ ∈ cone{α_s^∨}`.
    pub fn orbit_hull_membership(&self, v: &Vector<T>, u: &Vector<T>) -> Result<bool, CoxeterError> {
        let cap = self.default_cap();
        match self.tits_cone_classify(v) {
            TitsClass::Interior => {}
            other => {
                return Err(CoxeterError::IndeterminateMembership(format!(
                    "v classified {other:?}"
                )))
            }
        }
        match self.tits_cone_classify(u) {
            TitsClass::Interior => {}
            TitsClass::BoundaryOrOutside => return Ok(false),
            TitsClass::Unknown => {
                return Err(CoxeterError::IndeterminateMembership("u classified Unknown".into()))
            }
        }
        let vp = self.to_dominant(v, cap)?.rep;
        let up = self.to_dominant(u, cap)?.rep;
        Ok(lp::in_cone(&self.data.coroots, &(&vp - &up)))
    }

    /// Floating dominance defect: `max(residual, -min c)` for the least-squares
    /// expansion `v⁺ - u⁺ ≈ Σ c_s α_s^∨`. Zero (up to rounding) exactly on the hull.
    pub fn hull_violation(&self, v: &Vector<T>, u: &Vector<T>) -> Result<f64, CoxeterError> {
        let cap = self.default_cap();
        let vp = self.to_dominant(v, cap)?.rep.to_f64();
        let up = self.to_dominant(u, cap)?.rep.to_f64();
        let n = self.dim();
        let k = self.rank();
        let b = nalgebra::DMatrix::from_fn(n, k, |i, j| self.data.coroots[j][i].to_f64_lossy());
        let d = nalgebra::DVector::from_fn(n, |i, _| vp[i] - up[i]);
        let svd = b.clone().svd(true, true);
        let c = svd.solve(&d, 1e-12).expect("SVD computed with both factors");
        let residual = (&b * &c - &d).amax();
        let neg = c.iter().fold(0.0f64, |m, x| m.max(-x));
        Ok(residual.max(neg))
    }

    /// BFS over the orbit of `v`, stopping after `max_points` distinct points.
    pub fn enumerate_orbit(&self, v: &Vector<T>, max_points: usize) -> Vec<Vector<T>> {
        self.orbit_with_words(v, max_points, usize::MAX).into_iter().map(|(p, _)| p).collect()
    }

    /// Orbit points reachable by words of length at most `max_len`, with one word each.
    pub fn orbit_with_words(
        &self,
        v: &Vector<T>,
        max_points: usize,
        max_len: usize,
    ) -> Vec<(Vector<T>, WeylWord)> {
        let mut out = vec![(v.clone(), WeylWord::default())];
        let mut seen: HashSet<String> = HashSet::new();
        seen.insert(key(v));
        let mut start = 0;
        let mut depth = 0;
        while start < out.len() && out.len() < max_points && depth < max_len {
            let end = out.len();
            for i in start..end {
                for s in 0..self.rank() {
                    let w = self.reflect(s, &out[i].0);
                    if seen.insert(key(&w)) {
                        let mut word = out[i].1.clone();
                        word.0.push(s);
                        out.push((w, word));
                        if out.len() >= max_points {
                            return out;
                        }
                    }
                }
            }
            start = end;
            depth += 1;
        }
        out
    }

    /// `ε = 1 / Σ_j c_j / α_j(v)` for `w = Σ_j c_j α_j^∨`; asserts `v - εw ∈ co(v)`.
    pub fn lemma22_step(
        &self,
        v: &Vector<T>,
        expansion: &[(T, Root<T>)],
    ) -> Result<T, CoxeterError> {
        if expansion.is_empty() {
            return Err(CoxeterError::InvalidExpansion("empty expansion".into()));
        }
        let mut denom = T::zero();
        let mut w = Vector::zeros(self.dim());
        for (c, root) in expansion {
            let av = root.alpha.dot(v);
            if !av.is_pos() {
                return Err(CoxeterError::InvalidExpansion("some α_j(v) <= 0".into()));
            }
            if !c.is_pos() {
                return Err(CoxeterError::InvalidExpansion("some c_j <= 0".into()));
            }
            denom = denom + c.clone() / av;
            w = w.axpy(c, &root.coroot);
        }
        let eps = T::one() / denom;
        let target = v.axpy(&(-eps.clone()), &w);
        if !self.orbit_hull_membership(v, &target)? {
            return Err(CoxeterError::InvalidExpansion("v - εw left the orbit hull".into()));
        }
        Ok(eps)
    }

    /// `C_v = cone{α^∨ : α(v) > 0}` over the roots enumerated to `length_bound`.
    pub fn cone_cv(
        &self,
        v: &Vector<T>,
        length_bound: usize,
    ) -> crate::convexcore::PolyhedralSet<T> {
        let roots = self.enumerate_roots(length_bound);
        let gens: Vec<Vector<T>> = roots
            .roots
            .iter()
            .filter(|r| r.alpha.dot(v).is_pos())
            .map(|r| r.coroot.clone())
            .collect();
        let cv = crate::convexcore::PolyhedralSet::cone(self.dim(), gens).expect("dimensions agree");
        if self.data.alphas.iter().all(|a| a.dot(v).is_pos()) {
            assert!(cv.set_eq(&self.cone_cs()), "C_v = C_S on the open chamber");
        }
        cv
    }

    /// `C_S = cone{α_s^∨}`
    pub fn cone_cs(&self) -> crate::convexcore::PolyhedralSet<T> {
        crate::convexcore::PolyhedralSet::cone(self.dim(), self.data.coroots.clone())
            .expect("dimensions agree")
    }

    /// Exact determinants of the generator matrices.
    pub fn reflection_determinants(&self) -> Vec<T> {
        (0..self.rank()).map(|s| linalg::determinant(&self.data.reflection_matrix(s))).collect()
    }
}

fn key<T: Scalar>(v: &Vector<T>) -> String {
    if T::is_exact() {
        format!("{v:?}")
    } else {
        // snap to a grid well above rounding noise so float orbits close up
        v.iter()
            .map(|x| format!("{:.9}", x.to_f64_lossy() + 0.0))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests;
