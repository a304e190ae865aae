//! Matrix Lie algebras `u(n)` and `u(p,q)` in a real basis.

use nalgebra::Complex;

use crate::numeric::{CMat, Vect};
use crate::rootsys::{decompose, FiniteLieAlgebra, RootDecomposition, RootSysError};

/// A real basis of a Lie algebra of complex `n × n` matrices.
///
/// Order: `iE_jj` for every `j`, then for each pair `j < k` the real and the
/// imaginary generator of the `(j, k)` entry. Coordinates of `M` are
/// `Im M_jj`, `Re M_jk` and `Im M_jk`.
#[derive(Clone, Debug)]
pub struct MatrixRealForm {
    pub n: usize,
    /// `+1` on the first `p` indices, `-1` on the rest.
    pub signs: Vec<i8>,
    pub basis: Vec<CMat>,
}

impl MatrixRealForm {
    pub fn new(p: usize, q: usize) -> Self {
        let n = p + q;
        let signs: Vec<i8> = (0..n).map(|j| if j < p { 1 } else { -1 }).collect();
        let i = Complex::new(0.0, 1.0);
        let one = Complex::new(1.0, 0.0);
        let mut basis = Vec::new();
        for j in 0..n {
            let mut m = CMat::zeros(n, n);
            m[(j, j)] = i;
            basis.push(m);
        }
        for j in 0..n {
            for k in j + 1..n {
                // M_kj = -s_j s_k conj(M_jk) keeps M in u(p,q)
                let same = signs[j] == signs[k];
                let mut re = CMat::zeros(n, n);
                re[(j, k)] = one;
                re[(k, j)] = if same { -one } else { one };
                let mut im = CMat::zeros(n, n);
                im[(j, k)] = i;
                im[(k, j)] = if same { i } else { -i };
                basis.push(re);
                basis.push(im);
            }
        }
        Self { n, signs, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_matrix(&self, x: &[f64]) -> CMat {
        let mut m = CMat::zeros(self.n, self.n);
        for (c, b) in x.iter().zip(&self.basis) {
            if *c != 0.0 {
                m += b * Complex::new(*c, 0.0);
            }
        }
        m
    }

    pub fn coords(&self, m: &CMat) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.dim());
        for j in 0..n {
            out.push(m[(j, j)].im);
        }
        for j in 0..n {
            for k in j + 1..n {
                out.push(m[(j, k)].re);
                out.push(m[(j, k)].im);
            }
        }
        out
    }

    /// Structure constants from matrix commutators; κ(x, y) = -Re tr(xy).
    pub fn algebra(&self) -> FiniteLieAlgebra<f64> {
        let d = self.dim();
        let mut alg = FiniteLieAlgebra::zero(d);
        for a in 0..d {
            for b in 0..d {
                let comm = &self.basis[a] * &self.basis[b] - &self.basis[b] * &self.basis[a];
                for (k, v) in self.coords(&comm).into_iter().enumerate() {
                    alg.set_constant(a, b, k, v);
                }
            }
        }
        let kappa: Vec<Vec<f64>> = (0..d)
            .map(|a| (0..d).map(|b| -(&self.basis[a] * &self.basis[b]).trace().re).collect())
            .collect();
        let mut labels = Vec::with_capacity(d);
        for j in 0..self.n {
            labels.push(format!("iE{j}{j}"));
        }
        for j in 0..self.n {
            for k in j + 1..self.n {
                labels.push(format!("R{j}{k}"));
                labels.push(format!("I{j}{k}"));
            }
        }
        alg.with_kappa(kappa).with_labels(labels)
    }

    /// The diagonal Cartan subalgebra as algebra elements.
    pub fn cartan_basis(&self) -> Vec<Vect> {
        (0..self.n).map(|j| Vect::from_fn(self.dim(), |i, _| if i == j { 1.0 } else { 0.0 })).collect()
    }
}

/// `u(n)` with its diagonal root decomposition.
pub fn build_un(n: usize) -> Result<(FiniteLieAlgebra<f64>, RootDecomposition), RootSysError> {
    if n < 2 {
        return Err(RootSysError::Schema("u(n) needs n >= 2".into()));
    }
    build_upq(n, 0)
}

/// `u(p,q)`; `q = 0` gives the compact `u(p)`.
pub fn build_upq(p: usize, q: usize) -> Result<(FiniteLieAlgebra<f64>, RootDecomposition), RootSysError> {
    if p == 0 || p + q < 2 {
        return Err(RootSysError::Schema("u(p,q) needs p >= 1 and p + q >= 2".into()));
    }
    let form = MatrixRealForm::new(p, q);
    let alg = form.algebra();
    let decomp = decompose(&alg, form.cartan_basis())?;
    Ok((alg, decomp))
}
