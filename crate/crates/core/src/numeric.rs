//! Floating-point plumbing: seeded RNG streams, matrix exponentials, Haar unitaries.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Mat = DMatrix<f64>;
pub type Vect = DVector<f64>;
pub type CMat = DMatrix<Complex<f64>>;

/// Independent generator for `stream` derived from `seed`; trial `i` uses stream `i`
/// so serial and parallel runs draw identical numbers.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Matrix exponential (Padé scaling-and-squaring).
pub fn expm(m: &Mat) -> Mat {
    m.exp()
}

pub fn gaussian_vector(n: usize, rng: &mut impl Rng) -> Vect {
    DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal))
}

/// Uniform direction scaled by a radius uniform in `[0, max_norm]`.
pub fn random_in_ball(n: usize, max_norm: f64, rng: &mut impl Rng) -> Vect {
    let g = gaussian_vector(n, rng);
    let norm = g.norm();
    let r: f64 = rng.random_range(0.0..=max_norm);
    if norm == 0.0 {
        g
    } else {
        g * (r / norm)
    }
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> CMat {
    let z = CMat::from_fn(n, n, |_, _| {
        Complex::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { Complex::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Smallest eigenvalue of the symmetric part of `m`, with an eigenvector.
pub fn min_sym_eigen(m: &Mat) -> (f64, Vect) {
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let (i, &val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    (val, eig.eigenvectors.column(i).into_owned())
}

/// Largest absolute entry.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Rank-revealing basis of `{x : m x = 0}` via SVD; singular values below
/// `tol * max(1, σ_max)` count as zero.
pub fn null_basis(m: &Mat, tol: f64) -> Vec<Vect> {
    let n = m.ncols();
    // pad to a square matrix so the SVD exposes all right singular vectors
    let rows = m.nrows().max(n);
    let mut sq = Mat::zeros(rows, n);
    sq.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = sq.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let cut = tol * smax.max(1.0);
    (0..n)
        .filter(|&i| svd.singular_values[i] <= cut)
        .map(|i| vt.row(i).transpose().into_owned())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = rng_for(7, 3).random();
        let b: f64 = rng_for(7, 3).random();
        let c: f64 = rng_for(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = rng_for(1, 0);
        for n in 1..6 {
            let u = haar_unitary(n, &mut rng);
            let err = (&u * u.adjoint() - CMat::identity(n, n)).iter().fold(0.0f64, |m, z| m.max(z.norm()));
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn rotation_exponential() {
        let t = 0.7;
        let m = Mat::from_row_slice(2, 2, &[0.0, -t, t, 0.0]);
        let e = expm(&m);
        assert!((e[(0, 0)] - t.cos()).abs() < 1e-14);
        assert!((e[(1, 0)] - t.sin()).abs() < 1e-14);
    }

    #[test]
    fn null_basis_of_projection() {
        let m = Mat::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let ns = null_basis(&m, 1e-10);
        assert_eq!(ns.len(), 1);
        assert!((ns[0][2].abs() - 1.0).abs() < 1e-12);
    }
}
