use serde::{Deserialize, Serialize};

use crate::numeric::Mat;
use crate::rootsys::RootSysError;
use crate::scalar::{serde_rational::RawRational, Scalar};

/// A Lie algebra given by structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLieAlgebra<T> {
    dim: usize,
    c: Vec<T>,
    pub labels: Vec<String>,
    /// Optional symmetric invariant form.
    pub kappa: Option<Vec<Vec<T>>>,
}

impl<T: Scalar> FiniteLieAlgebra<T> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            c: vec![T::zero(); dim * dim * dim],
            labels: (0..dim).map(|i| format!("e{i}")).collect(),
            kappa: None,
        }
    }

    /// Sets `[e_i, e_j] = Σ v e_k` entries and their antisymmetric partners.
    pub fn from_triples(
        dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize, T)>,
    ) -> Result<Self, RootSysError> {
        let mut alg = Self::zero(dim);
        let mut set = vec![false; dim * dim * dim];
        for (i, j, k, v) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(RootSysError::Schema(format!("index ({i},{j},{k}) out of range")));
            }
            for (a, b, val) in [(i, j, v.clone()), (j, i, -v.clone())] {
                let idx = alg.index(a, b, k);
                if set[idx] && !alg.c[idx].approx_eq(&val) {
                    return Err(RootSysError::NotAntisymmetric);
                }
                alg.c[idx] = val;
                set[idx] = true;
            }
        }
        Ok(alg)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    pub fn with_kappa(mut self, kappa: Vec<Vec<T>>) -> Self {
        self.kappa = Some(kappa);
        self
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[self.index(i, j, k)]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: T) {
        let idx = self.index(i, j, k);
        self.c[idx] = v;
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let w = x[i].clone() * y[j].clone();
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &self.c[self.index(i, j, k)];
                    if !c.is_zero() {
                        *slot = slot.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)`: column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[T]) -> Vec<Vec<T>> {
        let n = self.dim;
        let mut m = vec![vec![T::zero(); n]; n];
        for j in 0..n {
            let e = unit::<T>(n, j);
            for (k, v) in self.bracket(x, &e).into_iter().enumerate() {
                m[k][j] = v;
            }
        }
        m
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = self.constant(i, j, k).clone() + self.constant(j, i, k).clone();
                    worst = worst.max(s.to_f64_lossy().abs());
                }
            }
        }
        worst
    }

    /// Exact-where-possible Jacobi check; returns the largest absolute defect
    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]` over basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit::<T>(n, i), unit::<T>(n, j), unit::<T>(n, k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    for l in 0..n {
                        let s = a[l].clone() + b[l].clone() + c[l].clone();
                        worst = worst.max(s.to_f64_lossy().abs());
                    }
                }
            }
        }
        worst
    }

    pub fn form(&self, x: &[T], y: &[T]) -> Option<T> {
        self.kappa.as_ref().map(|k| bilinear(k, x, y))
    }

    /// `max |κ([x,y],z) + κ(y,[x,z])|` over basis triples; `None` without κ.
    pub fn kappa_invariance_residual(&self) -> Option<f64> {
        let k = self.kappa.as_ref()?;
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            let x = unit::<T>(n, i);
            for j in 0..n {
                let y = unit::<T>(n, j);
                let xy = self.bracket(&x, &y);
                for l in 0..n {
                    let z = unit::<T>(n, l);
                    let s = bilinear(k, &xy, &z) + bilinear(k, &y, &self.bracket(&x, &z));
                    worst = worst.max(s.to_f64_lossy().abs());
                }
            }
        }
        Some(worst)
    }

    pub fn validate(&self, tol: f64) -> Result<(), RootSysError> {
        if self.antisymmetry_residual() > tol {
            return Err(RootSysError::NotAntisymmetric);
        }
        let j = self.jacobi_residual();
        if j > tol {
            return Err(RootSysError::JacobiFails(j));
        }
        if let Some(k) = &self.kappa {
            let n = self.dim;
            for a in 0..n {
                for b in 0..n {
                    if !k[a][b].approx_eq(&k[b][a]) {
                        return Err(RootSysError::Schema("κ is not symmetric".into()));
                    }
                }
            }
            let r = self.kappa_invariance_residual().unwrap_or(0.0);
            if r > tol {
                return Err(RootSysError::KappaNotInvariant(r));
            }
        }
        Ok(())
    }

    pub fn to_f64(&self) -> FiniteLieAlgebra<f64> {
        FiniteLieAlgebra {
            dim: self.dim,
            c: self.c.iter().map(Scalar::to_f64_lossy).collect(),
            labels: self.labels.clone(),
            kappa: self
                .kappa
                .as_ref()
                .map(|k| k.iter().map(|r| r.iter().map(Scalar::to_f64_lossy).collect()).collect()),
        }
    }

    /// Nonzero constants `(i, j, k, c)` with `i < j`.
    pub fn triples(&self) -> Vec<(usize, usize, usize, T)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }
}

impl FiniteLieAlgebra<f64> {
    pub fn ad_matrix(&self, x: &[f64]) -> Mat {
        let m = self.ad(x);
        Mat::from_fn(self.dim, self.dim, |i, j| m[i][j])
    }

    pub fn kappa_matrix(&self) -> Option<Mat> {
        self.kappa.as_ref().map(|k| Mat::from_fn(self.dim, self.dim, |i, j| k[i][j]))
    }
}

pub(crate) fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

pub(crate) fn bilinear<T: Scalar>(k: &[Vec<T>], x: &[T], y: &[T]) -> T {
    let mut s = T::zero();
    for (i, row) in k.iter().enumerate() {
        if x[i].is_zero() {
            continue;
        }
        for (j, kij) in row.iter().enumerate() {
            s = s + x[i].clone() * kij.clone() * y[j].clone();
        }
    }
    s
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    c: Vec<(usize, usize, usize, serde_json::Value)>,
    #[serde(default)]
    kappa: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn value_to_f64(v: serde_json::Value) -> Result<f64, RootSysError> {
    let raw: RawRational =
        serde_json::from_value(v).map_err(|e| RootSysError::Schema(e.to_string()))?;
    match raw {
        RawRational::Float(f) => Ok(f),
        other => other
            .into_rational()
            .map(|r| r.to_f64_lossy())
            .map_err(|e| RootSysError::Schema(e.to_string())),
    }
}

impl FiniteLieAlgebra<f64> {
    /// `{"dim": n, "c": [[i, j, k, value], ...], "kappa": [[..]] | null}`
    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "c": self.triples().into_iter().map(|(i, j, k, v)| serde_json::json!([i, j, k, v])).collect::<Vec<_>>(),
            "kappa": self.kappa,
            "labels": self.labels,
        })
    }

    pub fn from_json(s: &str) -> Result<Self, RootSysError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| RootSysError::Schema(e.to_string()))?;
        Self::from_json_value(v)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self, RootSysError> {
        let doc: AlgebraJson =
            serde_json::from_value(v).map_err(|e| RootSysError::Schema(e.to_string()))?;
        let triples = doc
            .c
            .into_iter()
            .map(|(i, j, k, v)| value_to_f64(v).map(|x| (i, j, k, x)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut alg = Self::from_triples(doc.dim, triples)?;
        if let Some(k) = doc.kappa {
            if k.len() != doc.dim || k.iter().any(|r| r.len() != doc.dim) {
                return Err(RootSysError::Schema("kappa must be dim x dim".into()));
            }
            let k = k
                .into_iter()
                .map(|r| r.into_iter().map(value_to_f64).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            alg.kappa = Some(k);
        }
        if let Some(l) = doc.labels {
            if l.len() != doc.dim {
                return Err(RootSysError::Schema("labels must have dim entries".into()));
            }
            alg.labels = l;
        }
        Ok(alg)
    }
}
