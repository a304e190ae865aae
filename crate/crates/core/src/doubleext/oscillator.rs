use serde::Serialize;

use crate::doubleext::{
    build_double_extension, Cocycle2, DoubleExtError, DoubleExtensionAlgebra, DoubleExtensionSpec, PSD_TOL,
    STRUCTURE_TOL,
};
use crate::numeric::{min_sym_eigen, Mat};
use crate::rootsys::FiniteLieAlgebra;

fn to_mat(m: &[Vec<f64>]) -> Mat {
    Mat::from_fn(m.len(), m.len(), |i, j| m[i][j])
}

fn sym(m: &Mat) -> Mat {
    (m + m.transpose()) * 0.5
}

/// The oscillator algebra `(R ⊕_ω V) ⋊_D R` over an abelian `V`.
pub fn oscillator(
    v_dim: usize,
    omega: Vec<Vec<f64>>,
    d: Vec<Vec<f64>>,
) -> Result<DoubleExtensionAlgebra<f64>, DoubleExtError> {
    let omega = Cocycle2::new(omega)?;
    if omega.w.len() != v_dim || d.len() != v_dim || d.iter().any(|r| r.len() != v_dim) {
        return Err(DoubleExtError::DimensionMismatch(format!("V has dimension {v_dim}")));
    }
    let w = to_mat(&omega.w);
    if w.clone().lu().determinant().abs() < STRUCTURE_TOL {
        return Err(DoubleExtError::NotSymplectic);
    }
    let dm = to_mat(&d);
    // ω(Dx,y) + ω(x,Dy) = xᵀ(DᵀW + WD)y
    let res = (dm.transpose() * &w + &w * &dm).amax();
    if res > STRUCTURE_TOL * (1.0 + dm.amax() * w.amax()) {
        return Err(DoubleExtError::NotInSp(res));
    }
    let spec = DoubleExtensionSpec { base: FiniteLieAlgebra::zero(v_dim), omega, d, delta: vec![0.0; v_dim] };
    build_double_extension(spec)
}

#[derive(Clone, Debug, PartialEq)]
pub enum OsciOutcome {
    /// `q` is positive definite for `D̃ = ±D`; `ω(v,w) = κ(v, D̃w)`.
    Satisfied {
        /// `+1` when `ω(Dx,y)` is positive definite, `-1` when `ω(x,Dy)` is.
        orientation: i8,
        q: Mat,
        kappa: Mat,
        d_tilde: Mat,
        identity_residual: f64,
    },
    Failed {
        reason: String,
        /// Smallest eigenvalue of `ω(Dx,y)` and of `ω(x,Dy)`.
        min_eigenvalues: (f64, f64),
        witness: Vec<f64>,
    },
}

/// Positive definiteness of `ω(Dx,y)` or `ω(x,Dy)`, with the Lorentzian
/// presentation `κ = W D̃⁻¹` when one of them holds.
pub fn osci_criterion(osc: &DoubleExtensionAlgebra<f64>) -> OsciOutcome {
    let w = to_mat(&osc.spec.omega.w);
    let d = to_mat(&osc.spec.d);
    let q1 = sym(&(d.transpose() * &w));
    let q2 = sym(&(&w * &d));
    let (l1, v1) = min_sym_eigen(&q1);
    let (l2, v2) = min_sym_eigen(&q2);
    let pick = if l1 > PSD_TOL {
        Some((1i8, q1, d.clone()))
    } else if l2 > PSD_TOL {
        Some((-1i8, q2, -d.clone()))
    } else {
        None
    };
    match pick {
        Some((orientation, q, d_tilde)) => {
            let inv = d_tilde.clone().try_inverse().expect("definite q forces invertible D");
            let kappa = sym(&(&w * inv));
            let identity_residual = (&kappa * &d_tilde - &w).amax();
            OsciOutcome::Satisfied { orientation, q, kappa, d_tilde, identity_residual }
        }
        None => {
            let witness = if l1 <= l2 { v1 } else { v2 };
            OsciOutcome::Failed {
                reason: "neither ω(Dx,y) nor ω(x,Dy) is positive definite".into(),
                min_eigenvalues: (l1, l2),
                witness: witness.iter().copied().collect(),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PecReport {
    pub delta_zero: bool,
    pub min_eigenvalue: f64,
    pub pass: bool,
    pub reason: Option<String>,
    /// Direction with `ω(Dx,x) < 0` when the form is not semidefinite.
    pub witness: Option<Vec<f64>>,
}

/// `δ = 0` and `ω(Dx,x) >= 0`.
pub fn pec_check(spec: &DoubleExtensionSpec<f64>) -> PecReport {
    let delta_zero = spec.delta.iter().all(|v| v.abs() <= STRUCTURE_TOL);
    let w = to_mat(&spec.omega.w);
    let d = to_mat(&spec.d);
    let (min_eigenvalue, v) = min_sym_eigen(&sym(&(d.transpose() * w)));
    let psd = min_eigenvalue >= -PSD_TOL;
    let reason = match (delta_zero, psd) {
        (true, true) => None,
        (false, _) => Some("delta".to_string()),
        (true, false) => Some("ω(Dx,x) takes negative values".to_string()),
    };
    PecReport {
        delta_zero,
        min_eigenvalue,
        pass: delta_zero && psd,
        reason,
        witness: (!psd).then(|| v.iter().copied().collect()),
    }
}
