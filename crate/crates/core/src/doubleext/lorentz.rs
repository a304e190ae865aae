use rand::Rng;

use crate::doubleext::{
    build_double_extension, Cocycle2, DoubleExtError, DoubleExtensionAlgebra, DoubleExtensionSpec,
    STRUCTURE_TOL,
};
use crate::numeric::{expm, random_in_ball, Mat, Vect};
use crate::rootsys::FiniteLieAlgebra;

/// `κ` on `g` and `β((z,x,t),(z',x',t')) = zt' + tz' - κ(x,x')` on `ĝ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzianData {
    pub kappa: Mat,
    pub beta: Mat,
}

fn rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn to_mat(m: &[Vec<f64>]) -> Mat {
    Mat::from_fn(m.len(), m.len(), |i, j| m[i][j])
}

impl LorentzianData {
    /// Checks that `dext` is the Lorentzian extension of `(g, κ, D)` with
    /// `ω(x, y) = κ(x, Dy)` and `δ = 0`.
    pub fn new(dext: &DoubleExtensionAlgebra<f64>, kappa: Mat) -> Result<Self, DoubleExtError> {
        let n = dext.base_dim();
        if kappa.nrows() != n || kappa.ncols() != n {
            return Err(DoubleExtError::DimensionMismatch(format!("κ must be {n} × {n}")));
        }
        let scale = 1.0 + kappa.amax();
        let tol = STRUCTURE_TOL * scale;
        if (&kappa - kappa.transpose()).amax() > tol {
            return Err(DoubleExtError::NotLorentzian("κ is not symmetric".into()));
        }
        if kappa.clone().symmetric_eigenvalues().min() <= tol {
            return Err(DoubleExtError::NotLorentzian("κ is not positive definite".into()));
        }
        let base = dext.spec.base.clone().with_kappa(rows(&kappa));
        if base.kappa_invariance_residual().unwrap_or(0.0) > tol {
            return Err(DoubleExtError::NotLorentzian("κ is not invariant".into()));
        }
        let d = to_mat(&dext.spec.d);
        let dscale = tol * (1.0 + d.amax());
        if (d.transpose() * &kappa + &kappa * &d).amax() > dscale {
            return Err(DoubleExtError::NotLorentzian("D is not κ-skew".into()));
        }
        if (&kappa * &d - to_mat(&dext.spec.omega.w)).amax() > dscale {
            return Err(DoubleExtError::NotLorentzian("ω differs from κ(x, Dy)".into()));
        }
        if dext.spec.delta.iter().any(|v| v.abs() > STRUCTURE_TOL) {
            return Err(DoubleExtError::NotLorentzian("δ must vanish".into()));
        }
        let mut beta = Mat::zeros(n + 2, n + 2);
        beta[(0, n + 1)] = 1.0;
        beta[(n + 1, 0)] = 1.0;
        beta.view_mut((1, 1), (n, n)).copy_from(&(-&kappa));
        let positive = beta.clone().symmetric_eigenvalues().iter().filter(|&&e| e > 0.0).count();
        assert_eq!(positive, 1, "β has exactly one positive direction");
        Ok(Self { kappa, beta })
    }

    pub fn beta(&self, u: &[f64], v: &[f64]) -> f64 {
        let (u, v) = (Vect::from_column_slice(u), Vect::from_column_slice(v));
        u.dot(&(&self.beta * v))
    }

    pub fn kappa_form(&self, x: &[f64], y: &[f64]) -> f64 {
        let (x, y) = (Vect::from_column_slice(x), Vect::from_column_slice(y));
        x.dot(&(&self.kappa * y))
    }
}

/// Double extension of `(g, κ)` by a κ-skew derivation `D` with `ω(x, y) = κ(x, Dy)`.
pub fn lorentzian_extension(
    base: FiniteLieAlgebra<f64>,
    kappa: Mat,
    d: Mat,
) -> Result<(DoubleExtensionAlgebra<f64>, LorentzianData), DoubleExtError> {
    let n = base.dim();
    if d.nrows() != n || d.ncols() != n {
        return Err(DoubleExtError::DimensionMismatch(format!("D must be {n} × {n}")));
    }
    let w = &kappa * &d;
    let omega = Cocycle2::new(rows(&((&w - w.transpose()) * 0.5)))?;
    let spec = DoubleExtensionSpec { base, omega, d: rows(&d), delta: vec![0.0; n] };
    let dext = build_double_extension(spec)?;
    let data = LorentzianData::new(&dext, kappa)?;
    Ok((dext, data))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeMembership {
    InsideW,
    Outside,
}

const CONE_TOL: f64 = 1e-12;

/// `W = {t > 0, β(v, v) > 0}`.
pub fn lorentz_cone_membership(l: &LorentzianData, v: &[f64]) -> ConeMembership {
    let t = v[v.len() - 1];
    if t > CONE_TOL && l.beta(v, v) > CONE_TOL {
        ConeMembership::InsideW
    } else {
        ConeMembership::Outside
    }
}

/// `χ(v) = 1/β(v, v)` on `W`.
pub fn chi_value(l: &LorentzianData, v: &[f64]) -> Result<f64, DoubleExtError> {
    if lorentz_cone_membership(l, v) != ConeMembership::InsideW {
        return Err(DoubleExtError::NotInW);
    }
    Ok(1.0 / l.beta(v, v))
}

/// `χ(v)` and `∂²_x χ(v) = (2/β(v,v)³)(4β(v,x)² - β(v,v)β(x,x))`.
pub fn chi_and_hessian(l: &LorentzianData, v: &[f64], x: &[f64]) -> Result<(f64, f64), DoubleExtError> {
    let chi = chi_value(l, v)?;
    let (bvv, bvx, bxx) = (l.beta(v, v), l.beta(v, x), l.beta(x, x));
    // inverse Cauchy-Schwarz: β(v,v)β(x,x) <= β(v,x)²
    let defect = bvv * bxx - bvx * bvx;
    if defect > 1e-10 * (1.0 + bvv.abs() * bxx.abs() + bvx * bvx) {
        return Err(DoubleExtError::InverseCsViolated(defect));
    }
    let hess = 2.0 / bvv.powi(3) * (4.0 * bvx * bvx - bvv * bxx);
    Ok((chi, hess))
}

/// `(2/β(v,v)³)(2β(v,x)² - β(v,v)β(x,x))`, which differs from `∂²_x χ(v)`
/// by `4β(v,x)²/β(v,v)³`. Kept for comparison only.
pub fn chi_hessian_variant(l: &LorentzianData, v: &[f64], x: &[f64]) -> f64 {
    let (bvv, bvx, bxx) = (l.beta(v, v), l.beta(v, x), l.beta(x, x));
    2.0 / bvv.powi(3) * (2.0 * bvx * bvx - bvv * bxx)
}

fn checked_expm(m: &Mat) -> Result<Mat, DoubleExtError> {
    let e = expm(m);
    if e.iter().all(|v| v.is_finite()) {
        Ok(e)
    } else {
        Err(DoubleExtError::NumericOverflow)
    }
}

/// `Ad(exp ξ_1 ··· exp ξ_k)` on `ĝ` for base elements `ξ_i`.
pub fn adjoint_matrix(dext: &DoubleExtensionAlgebra<f64>, xis: &[Vec<f64>]) -> Result<Mat, DoubleExtError> {
    let dim = dext.algebra.dim();
    let mut g = Mat::identity(dim, dim);
    for xi in xis {
        if xi.len() != dext.base_dim() {
            return Err(DoubleExtError::DimensionMismatch("ξ must lie in the base".into()));
        }
        g *= checked_expm(&dext.algebra.ad_matrix(&dext.embed(xi)))?;
    }
    Ok(g)
}

pub fn adjoint_action(
    dext: &DoubleExtensionAlgebra<f64>,
    xis: &[Vec<f64>],
    v: &[f64],
) -> Result<Vec<f64>, DoubleExtError> {
    let g = adjoint_matrix(dext, xis)?;
    Ok((g * Vect::from_column_slice(v)).iter().copied().collect())
}

/// Product of one to three `exp(ξ)` factors (`‖ξ‖ <= 2`), interleaved with
/// flows `exp(s d)`, `|s| <= π`, when `with_flow`.
pub fn random_group_element(
    dext: &DoubleExtensionAlgebra<f64>,
    rng: &mut impl Rng,
    with_flow: bool,
) -> Result<Mat, DoubleExtError> {
    let dim = dext.algebra.dim();
    let ad_d = dext.algebra.ad_matrix(&crate::rootsys::unit::<f64>(dim, dext.d_index));
    let k = rng.random_range(1..=3);
    let mut g = Mat::identity(dim, dim);
    for _ in 0..k {
        let xi: Vec<f64> = random_in_ball(dext.base_dim(), 2.0, rng).iter().copied().collect();
        g *= adjoint_matrix(dext, &[xi])?;
        if with_flow {
            let s = rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI);
            g *= checked_expm(&(&ad_d * s))?;
        }
    }
    Ok(g)
}

pub fn beta_invariance_residual(l: &LorentzianData, g: &Mat, u: &[f64], v: &[f64]) -> f64 {
    let gu: Vec<f64> = (g * Vect::from_column_slice(u)).iter().copied().collect();
    let gv: Vec<f64> = (g * Vect::from_column_slice(v)).iter().copied().collect();
    (l.beta(&gu, &gv) - l.beta(u, v)).abs()
}

/// Distance of `Ad(g) d` from the shape `(½κ(γ,γ), γ, 1)`.
pub fn orbit_shape_residual(l: &LorentzianData, g: &Mat) -> f64 {
    let dim = g.nrows();
    let r = g.column(dim - 1);
    let gamma: Vec<f64> = r.rows(1, dim - 2).iter().copied().collect();
    let z = 0.5 * l.kappa_form(&gamma, &gamma);
    (r[0] - z).abs().max((r[dim - 1] - 1.0).abs())
}

/// Deviation of `Ad(g)(z, x, t)` from
/// `(z - κ(γ(g⁻¹), x) + (t/2)κ(γ(g), γ(g)), Ad(g)x + tγ(g), t)`, where
/// `γ(g) = Ad(g)d - d` and `Ad(g)x` is the base part of `Ad(g)(0, x, 0)`.
pub fn act_form_residual(l: &LorentzianData, g: &Mat, v: &[f64]) -> f64 {
    let dim = g.nrows();
    let n = dim - 2;
    let ginv = g.clone().try_inverse().expect("group elements are invertible");
    let gamma = |m: &Mat| -> Vec<f64> { m.column(dim - 1).rows(1, n).iter().copied().collect() };
    let (z, x, t) = (v[0], &v[1..=n], v[dim - 1]);
    let mut xe = vec![0.0; dim];
    xe[1..=n].copy_from_slice(x);
    let gx = g * Vect::from_vec(xe);
    let (gam, gam_inv) = (gamma(g), gamma(&ginv));
    let mut want = vec![z - l.kappa_form(&gam_inv, x) + 0.5 * t * l.kappa_form(&gam, &gam)];
    want.extend((0..n).map(|i| gx[i + 1] + t * gam[i]));
    want.push(t);
    let got = g * Vect::from_column_slice(v);
    got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// `inf λ` over the boundary orbit graph at level `t`:
/// `t t* - t ‖α‖²_κ / (2 z*)`, where `‖α‖_κ` uses the inverse Gram matrix.
pub fn coadjoint_lower_bound(
    l: &LorentzianData,
    z_star: f64,
    alpha: &[f64],
    t_star: f64,
    t: f64,
) -> Result<f64, DoubleExtError> {
    if z_star <= 0.0 {
        return Err(DoubleExtError::NonpositiveZstar);
    }
    if t <= 0.0 {
        return Err(DoubleExtError::NonpositiveLevel);
    }
    let a = Vect::from_column_slice(alpha);
    let inv = l.kappa.clone().try_inverse().expect("κ is positive definite");
    let norm2 = a.dot(&(inv * &a));
    Ok(t * t_star - t * norm2 / (2.0 * z_star))
}

/// `λ(Ad(g) x_0)` over sampled `g`, where `x_0 = (κ(x,x)/2t, x, t)` lies on `∂W`.
#[allow(clippy::too_many_arguments)]
pub fn coadjoint_orbit_values(
    dext: &DoubleExtensionAlgebra<f64>,
    l: &LorentzianData,
    lambda: &[f64],
    x: &[f64],
    t: f64,
    trials: usize,
    seed: u64,
    stream: u64,
) -> Result<Vec<f64>, DoubleExtError> {
    let mut x0 = vec![l.kappa_form(x, x) / (2.0 * t)];
    x0.extend_from_slice(x);
    x0.push(t);
    let x0 = Vect::from_vec(x0);
    let lam = Vect::from_column_slice(lambda);
    let mut rng = crate::numeric::rng_for(seed, stream);
    (0..trials)
        .map(|_| random_group_element(dext, &mut rng, true).map(|g| lam.dot(&(g * &x0))))
        .collect()
}

/// Coadjoint curve `s ↦ λ ∘ exp(s ad ξ)`; returns its initial direction
/// `λ ∘ ad ξ` and the largest deviation from the affine line through `λ`.
pub fn coadjoint_line(alg: &FiniteLieAlgebra<f64>, lambda: &[f64], xi: &[f64], grid: &[f64]) -> (Vec<f64>, f64) {
    let ad = alg.ad_matrix(xi);
    let lam = Vect::from_column_slice(lambda);
    let dir = ad.transpose() * &lam;
    let dev = grid
        .iter()
        .map(|&s| {
            let mu = expm(&(&ad * s)).transpose() * &lam;
            (mu - &lam - &dir * s).amax()
        })
        .fold(0.0, f64::max);
    (dir.iter().copied().collect(), dev)
}
