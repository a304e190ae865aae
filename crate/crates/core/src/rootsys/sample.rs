use rand::Rng;

use crate::coxeter::LinearCoxeterSystem;
use crate::linalg::Vector;
use crate::numeric::{expm, random_in_ball, rng_for, Mat, Vect};
use crate::rootsys::{RootDecomposition, RootSysError, RootVectorTag};

/// Tolerance of the orbit-hull test on sampled projections.
pub const HULL_TOL: f64 = 1e-9;
const CURVE_TOL: f64 = 1e-8;

/// `p_t(exp(s ad(x_α - x_α*)) x)` for each `s`, checked against the closed form:
/// the segment from `x` to `r_α(x)` for compact roots, the ray
/// `x + R₊ (-λ_α(x)) i[x_α, x_α*]` for noncompact ones.
pub fn orbit_projection_curve(
    decomp: &RootDecomposition,
    x: &[f64],
    root: usize,
    grid: &[f64],
) -> Result<Vec<Vec<f64>>, RootSysError> {
    let data = &decomp.roots[root];
    let y = &data.vector.re * 2.0;
    let ad = decomp.algebra.ad_matrix(y.as_slice());
    let x_el = decomp.t_element(x);
    let lx = decomp.lambda_at(root, x);
    let dir: Vec<f64> = match data.kind.tag {
        RootVectorTag::CompactSimple => {
            let c = data.coroot.as_ref().expect("compact roots have coroots");
            c.iter().map(|v| -lx * v).collect()
        }
        RootVectorTag::NoncompactSimple => data.bracket_t.iter().map(|v| -lx * v).collect(),
        _ => return Err(RootSysError::NotAPositiveSystem("curve needs a simple-type root".into())),
    };
    let dnorm2: f64 = dir.iter().map(|d| d * d).sum();
    let mut out = Vec::with_capacity(grid.len());
    for &s in grid {
        let g = expm(&(&ad * s));
        if g.iter().any(|v| !v.is_finite()) {
            return Err(RootSysError::NumericOverflow(s));
        }
        let p = decomp.t_coords(&(&decomp.projection_pt * (g * &x_el)));
        let diff: Vec<f64> = p.iter().zip(x).map(|(a, b)| a - b).collect();
        let scale = 1.0 + p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let (tau, perp) = if dnorm2 == 0.0 {
            (0.0, diff.iter().fold(0.0f64, |m, v| m.max(v.abs())))
        } else {
            let tau = diff.iter().zip(&dir).map(|(a, b)| a * b).sum::<f64>() / dnorm2;
            let perp = diff
                .iter()
                .zip(&dir)
                .fold(0.0f64, |m, (a, b)| m.max((a - tau * b).abs()));
            (tau, perp)
        };
        let tol = CURVE_TOL * scale;
        let bad_tau = match data.kind.tag {
            RootVectorTag::CompactSimple => tau < -tol || tau > 1.0 + tol,
            _ => tau < -tol,
        };
        if perp > tol || bad_tau {
            return Err(RootSysError::OffCurve { s, defect: perp.max(if bad_tau { tau.abs() } else { 0.0 }) });
        }
        out.push(p);
    }
    Ok(out)
}

/// Matrix of `Ad(exp y_1) ··· Ad(exp y_k)` on `g`.
pub fn ad_product(decomp: &RootDecomposition, ys: &[Vect]) -> Mat {
    let n = decomp.dim();
    ys.iter().fold(Mat::identity(n, n), |acc, y| {
        acc * expm(&decomp.algebra.ad_matrix(y.as_slice()))
    })
}

/// One Monte-Carlo trial: projection of `Ad(g) x` and its hull violation.
pub fn kostant_trial(
    decomp: &RootDecomposition,
    weyl: &LinearCoxeterSystem<f64>,
    x: &[f64],
    seed: u64,
    trial: u64,
) -> (Vec<f64>, f64) {
    let mut rng = rng_for(seed, trial);
    let k = rng.random_range(1..=3);
    let ys: Vec<Vect> = (0..k).map(|_| random_in_ball(decomp.dim(), 2.0, &mut rng)).collect();
    let g = ad_product(decomp, &ys);
    let p = decomp.t_coords(&(&decomp.projection_pt * (g * decomp.t_element(x))));
    let v = weyl
        .hull_violation(&Vector(x.to_vec()), &Vector(p.clone()))
        .unwrap_or(f64::INFINITY);
    (p, v)
}

/// Projections of `Ad(n_w) x` for a Weyl representative `n_w` of every orbit
/// point, paired with the exact vertex `w x`.
pub fn weyl_vertex_samples(
    decomp: &RootDecomposition,
    weyl: &LinearCoxeterSystem<f64>,
    x: &[f64],
) -> Vec<(Vec<f64>, Vec<f64>)> {
    let simple = decomp.compact_simple_roots();
    let reps: Vec<Mat> = simple
        .iter()
        .map(|&i| {
            let y = &decomp.normalized_vector(i).re * std::f64::consts::PI;
            expm(&decomp.algebra.ad_matrix(y.as_slice()))
        })
        .collect();
    let x_el = decomp.t_element(x);
    weyl.orbit_with_words(&Vector(x.to_vec()), 10_000, usize::MAX)
        .into_iter()
        .map(|(vertex, word)| {
            let mut el = x_el.clone();
            for &s in &word.0 {
                el = &reps[s] * el;
            }
            let p = decomp.t_coords(&(&decomp.projection_pt * el));
            (p, vertex.0)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct KostantReport {
    pub trials: usize,
    pub inside: usize,
    pub max_violation: f64,
    /// Weyl vertices of `conv(W x)`.
    pub vertices: Vec<Vec<f64>>,
    /// Per vertex: closest random sample.
    pub random_coverage: Vec<f64>,
    /// Per vertex: distance from the targeted Weyl-representative sample.
    pub targeted_coverage: Vec<f64>,
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Samples `p_t(Ad(g) x)` and tests membership in `conv(W x)`.
pub fn kostant_sample(
    decomp: &RootDecomposition,
    x: &[f64],
    trials: usize,
    seed: u64,
) -> Result<KostantReport, RootSysError> {
    if !decomp.is_compact_type() {
        return Err(RootSysError::NonCompactType);
    }
    if decomp.algebra.kappa.is_none() {
        return Err(RootSysError::Schema("compact algebra needs κ".into()));
    }
    let weyl = decomp.weyl_system()?;
    let results: Vec<(Vec<f64>, f64)> =
        (0..trials as u64).map(|t| kostant_trial(decomp, &weyl, x, seed, t)).collect();
    Ok(summarize(decomp, &weyl, x, &results))
}

/// Aggregates trial results, adding the targeted vertex samples.
pub fn summarize(
    decomp: &RootDecomposition,
    weyl: &LinearCoxeterSystem<f64>,
    x: &[f64],
    results: &[(Vec<f64>, f64)],
) -> KostantReport {
    let targeted = weyl_vertex_samples(decomp, weyl, x);
    let vertices: Vec<Vec<f64>> = targeted.iter().map(|(_, v)| v.clone()).collect();
    let random_coverage = vertices
        .iter()
        .map(|v| results.iter().map(|(p, _)| dist(p, v)).fold(f64::INFINITY, f64::min))
        .collect();
    let targeted_coverage = targeted.iter().map(|(p, v)| dist(p, v)).collect();
    KostantReport {
        trials: results.len(),
        inside: results.iter().filter(|(_, v)| *v <= HULL_TOL).count(),
        max_violation: results.iter().map(|r| r.1).fold(0.0, f64::max),
        vertices,
        random_coverage,
        targeted_coverage,
    }
}

/// Operator-norm distance between `p_t` and the average of `Ad(exp h)` over
/// `samples` torus points `h ∈ [0, 2π)^r` (additive recurrence with a seeded start).
///
/// The torus is periodic with period `2π` in the Cartan coordinates of `u(n)`.
pub fn torus_average_error(decomp: &RootDecomposition, samples: usize, seed: u64) -> f64 {
    let r = decomp.rank();
    let n = decomp.dim();
    let mut rng = rng_for(seed, u64::MAX);
    let start: Vec<f64> = (0..r).map(|_| rng.random::<f64>()).collect();
    let steps: Vec<f64> = (0..r).map(|b| (PRIMES[b % PRIMES.len()] as f64).sqrt().fract()).collect();
    let mut acc = Mat::zeros(n, n);
    for k in 0..samples {
        let h: Vec<f64> = (0..r)
            .map(|b| std::f64::consts::TAU * (start[b] + k as f64 * steps[b]).fract())
            .collect();
        let el = decomp.t_element(&h);
        acc += expm(&decomp.algebra.ad_matrix(el.as_slice()));
    }
    acc /= samples as f64;
    (acc - &decomp.projection_pt).singular_values().max()
}

const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
