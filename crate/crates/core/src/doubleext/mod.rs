//! Double extensions `(R ⊕_ω g) ⋊ R d` of a Lie algebra by a cocycle and a derivation.

mod lorentz;
mod oscillator;

use rand::Rng;
use serde_json::json;

use crate::linalg::{nullspace, Vector};
use crate::rootsys::{bilinear, unit, FiniteLieAlgebra, RootSysError};
use crate::scalar::{serde_rational::RawRational, Scalar};
use crate::Rational;

pub use lorentz::{
    act_form_residual, adjoint_action, adjoint_matrix, beta_invariance_residual, chi_and_hessian, chi_hessian_variant, chi_value,
    coadjoint_lower_bound, coadjoint_orbit_values, coadjoint_line, lorentz_cone_membership,
    lorentzian_extension, orbit_shape_residual, random_group_element, ConeMembership,
    LorentzianData,
};
pub use oscillator::{oscillator, osci_criterion, pec_check, OsciOutcome, PecReport};

/// Structural residual tolerance for floating data.
pub const STRUCTURE_TOL: f64 = 1e-12;
/// Tolerance for action and orbit assertions.
pub const ACTION_TOL: f64 = 1e-8;
/// Margin for semidefiniteness tests.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DoubleExtError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ω is not antisymmetric")]
    NotAntisymmetric,
    #[error("ω is not a 2-cocycle (residual {0:e})")]
    NotACocycle(f64),
    #[error("D is not a derivation (residual {0:e})")]
    NotADerivation(f64),
    #[error("ω(Dx,y) + ω(x,Dy) = δ([x,y]) fails (residual {0:e})")]
    CompatibilityViolated(f64),
    #[error("ω is degenerate")]
    NotSymplectic,
    #[error("D is not in sp(V, ω) (residual {0:e})")]
    NotInSp(f64),
    #[error("not a Lorentzian double extension: {0}")]
    NotLorentzian(String),
    #[error("point is not in the open Lorentz cone W")]
    NotInW,
    #[error("inverse Cauchy-Schwarz inequality fails (defect {0:e})")]
    InverseCsViolated(f64),
    #[error("z* must be positive")]
    NonpositiveZstar,
    #[error("t must be positive")]
    NonpositiveLevel,
    #[error("numeric overflow in the matrix exponential")]
    NumericOverflow,
    #[error(transparent)]
    Algebra(#[from] RootSysError),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// `ω(x, y) = xᵀ W y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle2<T> {
    pub w: Vec<Vec<T>>,
}

impl<T: Scalar> Cocycle2<T> {
    pub fn new(w: Vec<Vec<T>>) -> Result<Self, DoubleExtError> {
        let n = w.len();
        if w.iter().any(|r| r.len() != n) {
            return Err(DoubleExtError::DimensionMismatch("ω must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if !(w[i][j].clone() + w[j][i].clone()).approx_zero() {
                    return Err(DoubleExtError::NotAntisymmetric);
                }
            }
        }
        Ok(Self { w })
    }

    pub fn zero(n: usize) -> Self {
        Self { w: vec![vec![T::zero(); n]; n] }
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> T {
        bilinear(&self.w, x, y)
    }

    /// `max |ω([x,y],z) + ω([y,z],x) + ω([z,x],y)|` over basis triples.
    pub fn cocycle_residual(&self, g: &FiniteLieAlgebra<T>) -> f64 {
        let n = g.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (unit::<T>(n, i), unit::<T>(n, j), unit::<T>(n, k));
                    let s = self.eval(&g.bracket(&a, &b), &c)
                        + self.eval(&g.bracket(&b, &c), &a)
                        + self.eval(&g.bracket(&c, &a), &b);
                    worst = worst.max(s.to_f64_lossy().abs());
                }
            }
        }
        worst
    }
}

/// `(g, ω, D, δ)` with `[d, (z, x)] = (δ(x), Dx)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleExtensionSpec<T> {
    pub base: FiniteLieAlgebra<T>,
    pub omega: Cocycle2<T>,
    /// `(Dx)_i = Σ_j d[i][j] x_j`.
    pub d: Vec<Vec<T>>,
    pub delta: Vec<T>,
}

fn apply<T: Scalar>(m: &[Vec<T>], x: &[T]) -> Vec<T> {
    m.iter().map(|row| row.iter().zip(x).fold(T::zero(), |a, (p, q)| a + p.clone() * q.clone())).collect()
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (p, q)| s + p.clone() * q.clone())
}

fn max_abs<T: Scalar>(rows: &[Vec<T>]) -> f64 {
    rows.iter().flatten().map(|v| v.to_f64_lossy().abs()).fold(0.0, f64::max)
}

impl<T: Scalar> DoubleExtensionSpec<T> {
    fn n(&self) -> usize {
        self.base.dim()
    }

    pub fn derivation_residual(&self) -> f64 {
        let (g, n) = (&self.base, self.n());
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (unit::<T>(n, i), unit::<T>(n, j));
                let lhs = apply(&self.d, &g.bracket(&a, &b));
                let r1 = g.bracket(&apply(&self.d, &a), &b);
                let r2 = g.bracket(&a, &apply(&self.d, &b));
                for k in 0..n {
                    let s = lhs[k].clone() - r1[k].clone() - r2[k].clone();
                    worst = worst.max(s.to_f64_lossy().abs());
                }
            }
        }
        worst
    }

    /// `max |ω(Dx,y) + ω(x,Dy) - δ([x,y])|` over basis pairs.
    pub fn compatibility_residual(&self) -> f64 {
        let (g, n) = (&self.base, self.n());
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (unit::<T>(n, i), unit::<T>(n, j));
                let s = self.omega.eval(&apply(&self.d, &a), &b) + self.omega.eval(&a, &apply(&self.d, &b))
                    - dot(&self.delta, &g.bracket(&a, &b));
                worst = worst.max(s.to_f64_lossy().abs());
            }
        }
        worst
    }

    fn tolerance(&self) -> f64 {
        if T::is_exact() {
            0.0
        } else {
            let scale = 1.0 + max_abs(&self.d).max(max_abs(&self.omega.w));
            STRUCTURE_TOL * scale * scale
        }
    }

    pub fn validate(&self) -> Result<(), DoubleExtError> {
        let n = self.n();
        if self.omega.w.len() != n || self.d.len() != n || self.d.iter().any(|r| r.len() != n) || self.delta.len() != n {
            return Err(DoubleExtError::DimensionMismatch(format!("base has dimension {n}")));
        }
        let tol = self.tolerance();
        let base_tol = if T::is_exact() { 0.0 } else { STRUCTURE_TOL };
        let j = self.base.jacobi_residual();
        if self.base.antisymmetry_residual() > base_tol {
            return Err(RootSysError::NotAntisymmetric.into());
        }
        if j > base_tol {
            return Err(RootSysError::JacobiFails(j).into());
        }
        let c = self.omega.cocycle_residual(&self.base);
        if c > tol {
            return Err(DoubleExtError::NotACocycle(c));
        }
        let r = self.derivation_residual();
        if r > tol {
            return Err(DoubleExtError::NotADerivation(r));
        }
        let r = self.compatibility_residual();
        if r > tol {
            return Err(DoubleExtError::CompatibilityViolated(r));
        }
        Ok(())
    }

    pub fn to_f64(&self) -> DoubleExtensionSpec<f64> {
        let m = |rows: &[Vec<T>]| rows.iter().map(|r| r.iter().map(Scalar::to_f64_lossy).collect()).collect();
        DoubleExtensionSpec {
            base: self.base.to_f64(),
            omega: Cocycle2 { w: m(&self.omega.w) },
            d: m(&self.d),
            delta: self.delta.iter().map(Scalar::to_f64_lossy).collect(),
        }
    }
}

/// The extension as an `(n+2)`-dimensional algebra with basis `c, e_1..e_n, d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleExtensionAlgebra<T> {
    pub algebra: FiniteLieAlgebra<T>,
    pub c_index: usize,
    pub d_index: usize,
    pub spec: DoubleExtensionSpec<T>,
}

impl<T: Scalar> DoubleExtensionAlgebra<T> {
    pub fn base_dim(&self) -> usize {
        self.spec.base.dim()
    }

    /// `(0, x, 0)`.
    pub fn embed(&self, x: &[T]) -> Vec<T> {
        let mut v = vec![T::zero(); self.base_dim() + 2];
        v[1..=self.base_dim()].clone_from_slice(x);
        v
    }

    /// Largest `|[c, e_k]|` entry.
    pub fn central_residual(&self) -> f64 {
        let n = self.algebra.dim();
        let c = unit::<T>(n, self.c_index);
        (0..n)
            .flat_map(|k| self.algebra.bracket(&c, &unit::<T>(n, k)))
            .map(|v| v.to_f64_lossy().abs())
            .fold(0.0, f64::max)
    }
}

/// Builds `ĝ` with `[(z,x,t), (z',x',t')] = (ω(x,x') + tδ(x') - t'δ(x), [x,x'] + tDx' - t'Dx, 0)`.
pub fn build_double_extension<T: Scalar>(
    spec: DoubleExtensionSpec<T>,
) -> Result<DoubleExtensionAlgebra<T>, DoubleExtError> {
    spec.validate()?;
    let n = spec.n();
    let dim = n + 2;
    let (c, d) = (0, n + 1);
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = spec.omega.w[i][j].clone();
            if !w.is_zero() {
                triples.push((i + 1, j + 1, c, w));
            }
            for k in 0..n {
                let v = spec.base.constant(i, j, k).clone();
                if !v.is_zero() {
                    triples.push((i + 1, j + 1, k + 1, v));
                }
            }
        }
    }
    for j in 0..n {
        if !spec.delta[j].is_zero() {
            triples.push((d, j + 1, c, spec.delta[j].clone()));
        }
        for k in 0..n {
            if !spec.d[k][j].is_zero() {
                triples.push((d, j + 1, k + 1, spec.d[k][j].clone()));
            }
        }
    }
    let mut labels = vec!["c".to_string()];
    labels.extend(spec.base.labels.iter().cloned());
    labels.push("d".to_string());
    let algebra = FiniteLieAlgebra::from_triples(dim, triples)?.with_labels(labels);
    Ok(DoubleExtensionAlgebra { algebra, c_index: c, d_index: d, spec })
}

/// Named base algebras for the random corpus: `abelian2`, `aff1`, `abelian4`,
/// `su2+r`, `aff1+aff1`, `heis+r`.
pub fn named_base(name: &str) -> Option<FiniteLieAlgebra<Rational>> {
    let one = || Rational::from_int(1);
    let t = |v: &[(usize, usize, usize)]| v.iter().map(|&(i, j, k)| (i, j, k, one())).collect::<Vec<_>>();
    let (dim, triples) = match name {
        "abelian2" => (2, vec![]),
        "aff1" => (2, t(&[(0, 1, 1)])),
        "abelian4" => (4, vec![]),
        "su2+r" => (4, t(&[(0, 1, 2), (1, 2, 0), (2, 0, 1)])),
        "aff1+aff1" => (4, t(&[(0, 1, 1), (2, 3, 3)])),
        "heis+r" => (4, t(&[(0, 1, 2)])),
        _ => return None,
    };
    FiniteLieAlgebra::from_triples(dim, triples).ok()
}

pub const NAMED_BASES: [&str; 6] = ["abelian2", "aff1", "abelian4", "su2+r", "aff1+aff1", "heis+r"];

fn random_combination(basis: &[Vector<Rational>], len: usize, rng: &mut impl Rng) -> Vec<Rational> {
    let mut out = vec![Rational::from_int(0); len];
    for b in basis {
        let c = Rational::from_int(rng.random_range(-3..=3));
        for (o, v) in out.iter_mut().zip(b.iter()) {
            *o += &c * v;
        }
    }
    out
}

/// Random exact `(ω, D, δ)` over `base`: `D` from the derivation space, then
/// `(ω, δ)` from the solution space of the cocycle and compatibility equations.
pub fn random_compatible_spec(
    base: &FiniteLieAlgebra<Rational>,
    rng: &mut impl Rng,
) -> DoubleExtensionSpec<Rational> {
    let n = base.dim();
    let c = |i: usize, j: usize, k: usize| base.constant(i, j, k).clone();
    let zero = || Rational::from_int(0);

    // D[a][b] sits at a*n + b
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for k in 0..n {
                let mut row = vec![zero(); n * n];
                for m in 0..n {
                    row[k * n + m] += c(a, b, m);
                    row[m * n + a] -= c(m, b, k);
                    row[m * n + b] -= c(a, m, k);
                }
                rows.push(Vector(row));
            }
        }
    }
    let ders = nullspace(&rows, n * n);
    let flat = random_combination(&ders, n * n, rng);
    let d: Vec<Vec<Rational>> = flat.chunks(n).map(|r| r.to_vec()).collect();

    // unknowns: ω_ij for i < j, then δ
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let np = pairs.len();
    let omega_coef = |row: &mut Vec<Rational>, i: usize, j: usize, s: Rational| {
        if i < j {
            let p = pairs.iter().position(|&q| q == (i, j)).expect("pair");
            row[p] += s;
        } else if j < i {
            let p = pairs.iter().position(|&q| q == (j, i)).expect("pair");
            row[p] -= s;
        }
    };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut row = vec![zero(); np + n];
                for m in 0..n {
                    omega_coef(&mut row, m, k, c(i, j, m));
                    omega_coef(&mut row, m, i, c(j, k, m));
                    omega_coef(&mut row, m, j, c(k, i, m));
                }
                rows.push(Vector(row));
            }
        }
    }
    for &(a, b) in &pairs {
        let mut row = vec![zero(); np + n];
        for m in 0..n {
            omega_coef(&mut row, m, b, d[m][a].clone());
            omega_coef(&mut row, a, m, d[m][b].clone());
            row[np + m] -= c(a, b, m);
        }
        rows.push(Vector(row));
    }
    let sols = nullspace(&rows, np + n);
    let x = random_combination(&sols, np + n, rng);
    let mut w = vec![vec![zero(); n]; n];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        w[i][j] = x[p].clone();
        w[j][i] = -x[p].clone();
    }
    DoubleExtensionSpec { base: base.clone(), omega: Cocycle2 { w }, d, delta: x[np..].to_vec() }
}

fn matrix_json(m: &[Vec<f64>]) -> serde_json::Value {
    json!(m)
}

fn parse_number(v: &serde_json::Value) -> Result<f64, DoubleExtError> {
    let raw: RawRational = serde_json::from_value(v.clone()).map_err(|e| DoubleExtError::Json(e.to_string()))?;
    match raw {
        RawRational::Float(f) => Ok(f),
        other => other.into_rational().map(|r| r.to_f64_lossy()).map_err(|e| DoubleExtError::Json(e.to_string())),
    }
}

fn parse_matrix(v: &serde_json::Value, n: usize, what: &str) -> Result<Vec<Vec<f64>>, DoubleExtError> {
    let rows = v.as_array().ok_or_else(|| DoubleExtError::Json(format!("{what} must be a matrix")))?;
    if rows.len() != n {
        return Err(DoubleExtError::DimensionMismatch(format!("{what} needs {n} rows")));
    }
    rows.iter()
        .map(|r| {
            let r = r.as_array().ok_or_else(|| DoubleExtError::Json(format!("{what} rows must be arrays")))?;
            if r.len() != n {
                return Err(DoubleExtError::DimensionMismatch(format!("{what} needs {n} columns")));
            }
            r.iter().map(parse_number).collect()
        })
        .collect()
}

impl DoubleExtensionSpec<f64> {
    /// `{"base": algebra, "omega": matrix, "D": matrix, "delta": vector}`
    pub fn to_json(&self) -> String {
        json!({
            "base": self.base.to_json_value(),
            "omega": matrix_json(&self.omega.w),
            "D": matrix_json(&self.d),
            "delta": self.delta,
        })
        .to_string()
    }

    pub fn from_json(s: &str) -> Result<Self, DoubleExtError> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| DoubleExtError::Json(e.to_string()))?;
        let base = FiniteLieAlgebra::from_json_value(
            v.get("base").cloned().ok_or_else(|| DoubleExtError::Json("missing base".into()))?,
        )?;
        let n = base.dim();
        let field = |k: &str| v.get(k).ok_or_else(|| DoubleExtError::Json(format!("missing {k}")));
        let omega = Cocycle2::new(parse_matrix(field("omega")?, n, "omega")?)?;
        let d = parse_matrix(field("D")?, n, "D")?;
        let delta: Vec<f64> = match v.get("delta") {
            None | Some(serde_json::Value::Null) => vec![0.0; n],
            Some(x) => x
                .as_array()
                .ok_or_else(|| DoubleExtError::Json("delta must be a vector".into()))?
                .iter()
                .map(parse_number)
                .collect::<Result<_, _>>()?,
        };
        if delta.len() != n {
            return Err(DoubleExtError::DimensionMismatch(format!("delta needs {n} entries")));
        }
        Ok(Self { base, omega, d, delta })
    }
}

#[cfg(test)]
mod tests;
