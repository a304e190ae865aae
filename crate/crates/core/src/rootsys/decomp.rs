use crate::coxeter::{LinearCoxeterSystem, ReflectionData};
use crate::linalg::Vector;
use crate::lp;
use crate::numeric::{null_basis, Mat, Vect};
use crate::rootsys::{FiniteLieAlgebra, RootSysError};

/// Eigenvalue clustering tolerance.
pub const CLUSTER_TOL: f64 = 1e-9;
/// Band for the zero tests of the type classification.
pub const TYPE_TOL: f64 = 1e-10;

/// Element of the complexification stored as `(re, im)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexElement {
    pub re: Vect,
    pub im: Vect,
}

impl ComplexElement {
    /// `x* = -σ(x)` where `σ` conjugates with respect to the real form.
    pub fn star(&self) -> Self {
        Self { re: -&self.re, im: self.im.clone() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { re: &self.re * s, im: &self.im * s }
    }

    pub fn norm(&self) -> f64 {
        (self.re.norm_squared() + self.im.norm_squared()).sqrt()
    }

    /// Applies a real linear map to both parts.
    pub fn map(&self, m: &Mat) -> Self {
        Self { re: m * &self.re, im: m * &self.im }
    }
}

pub fn complex_bracket(alg: &FiniteLieAlgebra<f64>, x: &ComplexElement, y: &ComplexElement) -> ComplexElement {
    let b = |a: &Vect, c: &Vect| Vect::from_vec(alg.bracket(a.as_slice(), c.as_slice()));
    ComplexElement {
        re: b(&x.re, &y.re) - b(&x.im, &y.im),
        im: b(&x.re, &y.im) + b(&x.im, &y.re),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootVectorTag {
    Abelian,
    Nilpotent,
    CompactSimple,
    NoncompactSimple,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootVectorType {
    pub tag: RootVectorTag,
    /// `α([x_α, x_α*])`, a real number.
    pub witness: f64,
}

#[derive(Clone, Debug)]
pub struct RootData {
    /// `λ_α = -iα` on the Cartan basis, so `[h, x_α] = i λ_α(h) x_α`.
    pub lambda: Vec<f64>,
    pub vector: ComplexElement,
    pub kind: RootVectorType,
    /// Real coroot `h_α ∈ t` (Cartan coordinates) with `λ_α(h_α) = 2`; absent for
    /// abelian and nilpotent types.
    pub coroot: Option<Vec<f64>>,
    /// `-Im [x_α, x_α*] = i[x_α, x_α*]` in Cartan coordinates.
    pub bracket_t: Vec<f64>,
    /// Index of `-α` in the root list.
    pub negative: usize,
    /// Dimension of the root space.
    pub multiplicity: usize,
}

/// Root decomposition of `g_C` relative to an elliptic Cartan subalgebra `t`.
#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub algebra: FiniteLieAlgebra<f64>,
    pub cartan_basis: Vec<Vect>,
    pub roots: Vec<RootData>,
    /// `p_t` as a `dim × dim` matrix on `g`.
    pub projection_pt: Mat,
    cartan_solver: Mat,
}

fn generic_weights(r: usize) -> Vec<f64> {
    // fractional parts of multiples of the plastic number: far from rational relations
    (0..r).map(|b| 0.5 + ((b as f64 + 1.0) * 0.754_877_666_246_692_7).fract()).collect()
}

/// Computes the root decomposition from simultaneous eigenspaces of `ad(t)`.
pub fn decompose(
    alg: &FiniteLieAlgebra<f64>,
    cartan_basis: Vec<Vect>,
) -> Result<RootDecomposition, RootSysError> {
    let n = alg.dim();
    let r = cartan_basis.len();
    for a in &cartan_basis {
        for b in &cartan_basis {
            let c = alg.bracket(a.as_slice(), b.as_slice());
            if c.iter().any(|x| x.abs() > CLUSTER_TOL) {
                return Err(RootSysError::Decomposition("Cartan basis does not commute".into()));
            }
        }
    }
    let w = generic_weights(r);
    let h = cartan_basis.iter().zip(&w).fold(Vect::zeros(n), |acc, (b, c)| acc + b * *c);
    let a = alg.ad_matrix(h.as_slice());
    let scale = a.amax().max(1.0);

    let mut lambdas: Vec<f64> = a
        .clone()
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im > CLUSTER_TOL * scale)
        .map(|z| {
            if z.re.abs() > 1e-7 * scale {
                f64::NAN
            } else {
                z.im
            }
        })
        .collect();
    if lambdas.iter().any(|x| x.is_nan()) {
        return Err(RootSysError::Decomposition("ad(h) has non-imaginary eigenvalues".into()));
    }
    lambdas.sort_by(f64::total_cmp);
    let mut clusters: Vec<f64> = Vec::new();
    for l in lambdas {
        if clusters.last().is_none_or(|c| (l - c).abs() > 1e-6 * scale) {
            clusters.push(l);
        }
    }

    let ad_b: Vec<Mat> = cartan_basis.iter().map(|b| alg.ad_matrix(b.as_slice())).collect();
    let a2 = &a * &a;
    let mut roots: Vec<RootData> = Vec::new();
    let mut basis_cols: Vec<Vect> = cartan_basis.clone();
    let mut root_dims = 0;
    for lam in clusters {
        let m = &a2 + Mat::identity(n, n) * (lam * lam);
        let space = null_basis(&m, CLUSTER_TOL);
        if space.is_empty() || !space.len().is_multiple_of(2) {
            return Err(RootSysError::Decomposition(format!(
                "eigenspace for λ = {lam} has dimension {}",
                space.len()
            )));
        }
        let mult = space.len() / 2;
        root_dims += space.len();
        // complex basis of the eigenspace: v_1, J v_1, v_2, J v_2, ...
        let mut chosen: Vec<Vect> = Vec::new();
        for v in space {
            let mut v = v;
            for c in &chosen {
                v -= c * c.dot(&v);
            }
            if v.norm() < 1e-6 {
                continue;
            }
            v /= v.norm();
            let u = &a * &v / lam;
            chosen.push(v.clone());
            let mut u2 = u.clone();
            for c in &chosen {
                u2 -= c * c.dot(&u2);
            }
            if u2.norm() > 1e-9 {
                chosen.push(&u2 / u2.norm());
            }
            basis_cols.push(v.clone());
            basis_cols.push(u.clone());
            let lambda: Vec<f64> = ad_b.iter().map(|ab| (ab * &v).dot(&u) / u.dot(&u)).collect();
            let pos = ComplexElement { re: v.clone(), im: -&u };
            let neg = ComplexElement { re: v, im: u };
            let idx = roots.len();
            for (vec, sign, other) in [(pos, 1.0, idx + 1), (neg, -1.0, idx)] {
                roots.push(RootData {
                    lambda: lambda.iter().map(|x| x * sign).collect(),
                    vector: vec,
                    kind: RootVectorType { tag: RootVectorTag::Abelian, witness: 0.0 },
                    coroot: None,
                    bracket_t: vec![0.0; r],
                    negative: other,
                    multiplicity: mult,
                });
            }
        }
    }
    if root_dims + r != n {
        return Err(RootSysError::Decomposition(format!(
            "root spaces ({root_dims}) plus t ({r}) do not fill g ({n})"
        )));
    }
    let b = Mat::from_columns(&basis_cols);
    let b_inv = b
        .clone()
        .try_inverse()
        .ok_or_else(|| RootSysError::Decomposition("root spaces and t are not independent".into()))?;
    let mut keep = Mat::zeros(n, n);
    for i in 0..r {
        keep[(i, i)] = 1.0;
    }
    let projection_pt = &b * keep * &b_inv;
    let cartan = Mat::from_columns(&cartan_basis);
    let cartan_solver = cartan
        .clone()
        .pseudo_inverse(1e-12)
        .map_err(|e| RootSysError::Decomposition(e.to_string()))?;

    let mut decomp = RootDecomposition {
        algebra: alg.clone(),
        cartan_basis,
        roots,
        projection_pt,
        cartan_solver,
    };
    for i in 0..decomp.roots.len() {
        let x = decomp.roots[i].vector.clone();
        let (kind, bracket_t) = decomp.classify_with_bracket(i, &x)?;
        let root = &mut decomp.roots[i];
        root.kind = kind;
        root.bracket_t = bracket_t.clone();
        if matches!(kind.tag, RootVectorTag::CompactSimple | RootVectorTag::NoncompactSimple) {
            root.coroot = Some(bracket_t.iter().map(|c| 2.0 * c / kind.witness).collect());
        }
    }
    Ok(decomp)
}

impl RootDecomposition {
    pub fn rank(&self) -> usize {
        self.cartan_basis.len()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Cartan coordinates of an element of `t`.
    pub fn t_coords(&self, x: &Vect) -> Vec<f64> {
        (&self.cartan_solver * x).iter().copied().collect()
    }

    pub fn t_element(&self, coords: &[f64]) -> Vect {
        self.cartan_basis
            .iter()
            .zip(coords)
            .fold(Vect::zeros(self.dim()), |acc, (b, c)| acc + b * *c)
    }

    pub fn lambda_at(&self, root: usize, h: &[f64]) -> f64 {
        self.roots[root].lambda.iter().zip(h).map(|(a, b)| a * b).sum()
    }

    /// Largest defect of `[h_b, x] = i λ_α(h_b) x` over the Cartan basis.
    pub fn root_vector_residual(&self, root: usize, x: &ComplexElement) -> f64 {
        let mut worst = 0.0f64;
        for (b, lam) in self.cartan_basis.iter().zip(&self.roots[root].lambda) {
            let ad = self.algebra.ad_matrix(b.as_slice());
            let re = &ad * &x.re + &x.im * *lam;
            let im = &ad * &x.im - &x.re * *lam;
            worst = worst.max(re.amax()).max(im.amax());
        }
        worst / x.norm().max(1e-300)
    }

    fn classify_with_bracket(
        &self,
        root: usize,
        x: &ComplexElement,
    ) -> Result<(RootVectorType, Vec<f64>), RootSysError> {
        if x.norm() < TYPE_TOL {
            return Err(RootSysError::NotARootVector(0.0));
        }
        let res = self.root_vector_residual(root, x);
        if res > 1e-8 {
            return Err(RootSysError::NotARootVector(res));
        }
        let br = complex_bracket(&self.algebra, x, &x.star());
        let size = x.norm_squared_f();
        let bracket_t: Vec<f64> = self.t_coords(&-&br.im);
        let witness = self.lambda_at(root, &bracket_t);
        let tag = if br.norm() < TYPE_TOL * size {
            RootVectorTag::Abelian
        } else if witness.abs() < TYPE_TOL * size {
            RootVectorTag::Nilpotent
        } else if witness > 0.0 {
            RootVectorTag::CompactSimple
        } else {
            RootVectorTag::NoncompactSimple
        };
        Ok((RootVectorType { tag, witness }, bracket_t))
    }

    /// Type of a root vector `x ∈ g_C^α`.
    pub fn classify_root_vector(
        &self,
        root: usize,
        x: &ComplexElement,
    ) -> Result<RootVectorType, RootSysError> {
        self.classify_with_bracket(root, x).map(|(k, _)| k)
    }

    /// No root vector commutes with its adjoint; decided on the basis vectors,
    /// which is conclusive only for one-dimensional root spaces.
    pub fn cone_potential(&self) -> Result<bool, RootSysError> {
        if self.roots.iter().any(|r| r.multiplicity > 1) {
            return Err(RootSysError::MultidimensionalRootSpace);
        }
        Ok(self.roots.iter().all(|r| r.kind.tag != RootVectorTag::Abelian))
    }

    pub fn compact_roots(&self) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.roots[i].kind.tag == RootVectorTag::CompactSimple)
            .collect()
    }

    pub fn noncompact_roots(&self) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.roots[i].kind.tag == RootVectorTag::NoncompactSimple)
            .collect()
    }

    pub fn is_compact_type(&self) -> bool {
        self.roots.iter().all(|r| r.kind.tag == RootVectorTag::CompactSimple)
    }

    /// `r_α(h) = h - λ_α(h) h_α` on Cartan coordinates.
    pub fn reflect(&self, root: usize, h: &[f64]) -> Vec<f64> {
        let c = self.roots[root].coroot.as_ref().expect("reflections need a coroot");
        let l = self.lambda_at(root, h);
        h.iter().zip(c).map(|(a, b)| a - l * b).collect()
    }

    /// `r_β` acting on root functionals: `λ ∘ r_β = λ - λ(h_β) λ_β`.
    pub fn reflect_functional(&self, beta: usize, lambda: &[f64]) -> Vec<f64> {
        let c = self.roots[beta].coroot.as_ref().expect("reflections need a coroot");
        let pairing: f64 = lambda.iter().zip(c).map(|(a, b)| a * b).sum();
        lambda.iter().zip(&self.roots[beta].lambda).map(|(a, b)| a - pairing * b).collect()
    }

    /// Index of the root whose functional matches `lambda`.
    pub fn find_root(&self, lambda: &[f64]) -> Option<usize> {
        self.roots.iter().position(|r| {
            r.lambda.iter().zip(lambda).all(|(a, b)| (a - b).abs() < 1e-8)
        })
    }

    /// Compact simple roots for a generic chamber: positive compact roots that
    /// are not in the cone of the other positive compact roots.
    pub fn compact_simple_roots(&self) -> Vec<usize> {
        let w = generic_weights(self.rank());
        let positive: Vec<usize> = self
            .compact_roots()
            .into_iter()
            .filter(|&i| self.lambda_at(i, &w) > 0.0)
            .collect();
        positive
            .iter()
            .copied()
            .filter(|&i| {
                let others: Vec<Vector<f64>> = positive
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| Vector(self.roots[j].lambda.clone()))
                    .collect();
                !lp::in_cone(&others, &Vector(self.roots[i].lambda.clone()))
            })
            .collect()
    }

    /// Weyl group of the compact roots as a linear Coxeter system on Cartan coordinates.
    pub fn weyl_system(&self) -> Result<LinearCoxeterSystem<f64>, RootSysError> {
        let simple = self.compact_simple_roots();
        if simple.is_empty() {
            return Err(RootSysError::Decomposition("no compact roots".into()));
        }
        let data = ReflectionData::new(
            self.rank(),
            simple.iter().map(|&i| Vector(self.roots[i].lambda.clone())).collect(),
            simple
                .iter()
                .map(|&i| Vector(self.roots[i].coroot.clone().expect("compact roots have coroots")))
                .collect(),
            None,
        )
        .map_err(|e| RootSysError::Decomposition(e.to_string()))?;
        LinearCoxeterSystem::declared("weyl", data).map_err(|e| RootSysError::Decomposition(e.to_string()))
    }

    /// Root vector rescaled so that `α([x, x*]) = ±2`.
    pub fn normalized_vector(&self, root: usize) -> ComplexElement {
        let r = &self.roots[root];
        let w = r.kind.witness.abs();
        if w < TYPE_TOL {
            r.vector.clone()
        } else {
            r.vector.scale((2.0 / w).sqrt())
        }
    }
}

impl ComplexElement {
    fn norm_squared_f(&self) -> f64 {
        self.re.norm_squared() + self.im.norm_squared()
    }
}
