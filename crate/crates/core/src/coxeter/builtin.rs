use crate::coxeter::{CoxeterError, Lcs3Status, LinearCoxeterSystem, ReflectionData};
use crate::linalg::Vector;
use crate::scalar::Scalar;

pub const BUILTIN_NAMES: [&str; 7] = ["A1", "A2", "A3", "B2", "G2", "affine_A1", "affine_A2"];

fn vq<T: Scalar>(c: &[(i64, i64)]) -> Vector<T> {
    Vector(c.iter().map(|&(n, d)| T::from_ratio(n, d)).collect())
}

fn vi<T: Scalar>(c: &[i64]) -> Vector<T> {
    Vector::from_i64(c)
}

/// Type `A_n` on `R^{n+1}`: `α_j(x) = x_{j+1} - x_j`, `α_j^∨ = e_{j+1} - e_j`.
/// The chamber is the set of nondecreasing vectors.
fn type_a<T: Scalar>(n: usize) -> ReflectionData<T> {
    let dim = n + 1;
    let alphas: Vec<Vector<T>> = (0..n)
        .map(|j| {
            let mut v = Vector::zeros(dim);
            v[j] = -T::one();
            v[j + 1] = T::one();
            v
        })
        .collect();
    ReflectionData::new(dim, alphas.clone(), alphas, None).expect("type A data is valid")
}

/// Affine `Ã_n` from finite `A_n` data in coroot coordinates plus a level coordinate:
/// `v = Σ p_i α_i^∨ + y e_level`, `α_0 = δ - θ`, `α_0^∨ = -θ^∨`.
fn affine_a<T: Scalar>(n: usize) -> (ReflectionData<T>, Vector<T>) {
    let dim = n + 1;
    // finite Cartan matrix of A_n: a_ij = α_i(α_j^∨)
    let cartan = |i: usize, j: usize| -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    };
    let mut alphas: Vec<Vector<T>> = Vec::new();
    let mut coroots: Vec<Vector<T>> = Vec::new();
    // α_0 first so labels read s0, s1, ...
    let mut theta = vec![0i64; dim];
    for i in 0..n {
        for (j, slot) in theta.iter_mut().enumerate().take(n) {
            *slot += cartan(i, j);
        }
    }
    let mut a0: Vec<i64> = theta.iter().map(|t| -t).collect();
    a0[n] = 1;
    alphas.push(vi(&a0));
    let mut c0 = vec![-1i64; dim];
    c0[n] = 0;
    coroots.push(vi(&c0));
    for i in 0..n {
        let mut a = vec![0i64; dim];
        for (j, slot) in a.iter_mut().enumerate().take(n) {
            *slot = cartan(i, j);
        }
        alphas.push(vi(&a));
        coroots.push(Vector::unit(dim, i));
    }
    let labels = (0..=n).map(|i| format!("s{i}")).collect();
    let data = ReflectionData::new(dim, alphas, coroots, Some(labels)).expect("affine data is valid");
    (data, Vector::unit(dim, n))
}

/// Built-in systems, all with `lcs3 = Builtin`.
pub fn builtin<T: Scalar>(name: &str) -> Result<LinearCoxeterSystem<T>, CoxeterError> {
    let (data, level) = match name {
        "A1" => (type_a(1), None),
        "A2" => (type_a(2), None),
        "A3" => (type_a(3), None),
        "B2" => {
            // α_2 = e_1 is the short root, so its coroot is 2e_1
            let data = ReflectionData::new(
                2,
                vec![vi(&[-1, 1]), vi(&[1, 0])],
                vec![vi(&[-1, 1]), vi(&[2, 0])],
                None,
            )
            .expect("B2 data is valid");
            (data, None)
        }
        "G2" => {
            let data = ReflectionData::new(
                3,
                vec![vi(&[1, -1, 0]), vi(&[-2, 1, 1])],
                vec![vi(&[1, -1, 0]), vq(&[(-2, 3), (1, 3), (1, 3)])],
                None,
            )
            .expect("G2 data is valid");
            (data, None)
        }
        "affine_A1" => {
            let (d, l) = affine_a(1);
            (d, Some(l))
        }
        "affine_A2" => {
            let (d, l) = affine_a(2);
            (d, Some(l))
        }
        other => return Err(CoxeterError::UnknownName(other.to_string())),
    };
    Ok(LinearCoxeterSystem { name: name.to_string(), data, lcs3: Lcs3Status::Builtin, level })
}
