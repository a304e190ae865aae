use std::path::Path;

use orbitcone::doubleext::{
    act_form_residual, beta_invariance_residual, build_double_extension, chi_and_hessian, chi_hessian_variant,
    chi_value, coadjoint_lower_bound, coadjoint_orbit_values, lorentzian_extension, named_base, orbit_shape_residual,
    osci_criterion, oscillator, pec_check, random_compatible_spec, random_group_element, Cocycle2, DoubleExtError,
    DoubleExtensionAlgebra, DoubleExtensionSpec, LorentzianData, OsciOutcome, ACTION_TOL, NAMED_BASES, PSD_TOL,
    STRUCTURE_TOL,
};
use orbitcone::numeric::{Mat, Vect};
use orbitcone::rootsys::FiniteLieAlgebra;
use orbitcone::{q, Rational};
use rand::Rng;

use crate::config::Ctx;
use crate::corpus;
use crate::experiments::read_file;
use crate::{CliError, Report, Result};

fn rot() -> Vec<Vec<f64>> {
    vec![vec![0.0, 1.0], vec![-1.0, 0.0]]
}

fn to_mat(m: &[Vec<f64>]) -> Mat {
    Mat::from_fn(m.len(), m.len(), |i, j| m[i][j])
}

/// Jacobi residuals of the oscillator and of random compatible specs, and
/// rejection of incompatible perturbations.
pub fn structure(ctx: &Ctx) -> Result<Report> {
    let count = ctx.trials_or(50);
    let tol = ctx.tol("jacobi", STRUCTURE_TOL);
    let mut report = Report::new("dext-structure", &ctx.config);
    let osc = oscillator(2, rot(), rot()).map_err(CliError::schema)?;
    report.check_le("oscillator Jacobi residual", osc.algebra.jacobi_residual(), tol);

    let seed = ctx.seed();
    let results = ctx.par_map(count, |i| {
        let name = NAMED_BASES[i as usize % NAMED_BASES.len()];
        let base = named_base(name).expect("named base");
        let mut rng = corpus::stream(seed, 60, i);
        let spec = random_compatible_spec(&base, &mut rng);
        let exact = build_double_extension(spec.clone()).map(|d| d.algebra.jacobi_residual());
        let float = build_double_extension(spec.to_f64()).map(|d| d.algebra.jacobi_residual());
        let (rejected, consistent) = perturbations(&spec);
        (name, base.dim(), exact, float, rejected, consistent)
    });
    let mut rejected_total = 0;
    for (i, (name, dim, exact, float, rejected, consistent)) in results.into_iter().enumerate() {
        let tag = format!("spec {i} over {name} (dim {dim})");
        match (exact, float) {
            (Ok(e), Ok(f)) => {
                report.check(format!("{tag} exact Jacobi"), 0, e, e == 0.0);
                report.check_le(format!("{tag} f64 Jacobi"), f, tol);
            }
            (e, f) => report.check(tag.clone(), "valid", format!("{e:?} / {f:?}"), false),
        }
        report.check(
            format!("{tag} perturbations"),
            "rejected iff compatibility residual > 0",
            format!("{rejected} rejected"),
            consistent,
        );
        rejected_total += rejected;
    }
    report.check("compatibility enforced", "> 0 rejections", rejected_total, rejected_total > 0);
    Ok(report)
}

/// Perturbs `δ` by unit vectors and `ω` by elementary antisymmetric matrices.
/// Returns the number of rejected specs and whether rejection matched a
/// nonzero exact compatibility residual every time.
fn perturbations(spec: &DoubleExtensionSpec<Rational>) -> (usize, bool) {
    let n = spec.base.dim();
    let mut variants = Vec::new();
    for k in 0..n {
        let mut s = spec.clone();
        s.delta[k] = s.delta[k].clone() + q(1, 1);
        variants.push(s);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut w = spec.omega.w.clone();
            w[i][j] = w[i][j].clone() + q(1, 1);
            w[j][i] = w[j][i].clone() - q(1, 1);
            let mut s = spec.clone();
            s.omega = Cocycle2::new(w).expect("antisymmetric");
            variants.push(s);
        }
    }
    let mut rejected = 0;
    let mut consistent = true;
    for s in variants {
        let incompatible = s.compatibility_residual() > 0.0;
        let valid_otherwise = s.omega.cocycle_residual(&s.base) == 0.0;
        match build_double_extension(s) {
            Err(DoubleExtError::CompatibilityViolated(_)) => {
                rejected += 1;
                consistent &= incompatible;
            }
            Err(DoubleExtError::NotACocycle(_)) => consistent &= !valid_otherwise,
            Err(_) => consistent = false,
            Ok(_) => consistent &= !incompatible,
        }
    }
    (rejected, consistent)
}

fn setups() -> Vec<(&'static str, DoubleExtensionAlgebra<f64>, LorentzianData)> {
    let su2 = named_base("su2+r").expect("named base").to_f64();
    let d = su2.ad_matrix(&[1.0, 0.0, 0.0, 0.0]);
    let (a, la) = lorentzian_extension(su2, Mat::identity(4, 4), d).expect("Lorentzian data");
    let (b, lb) = lorentzian_extension(FiniteLieAlgebra::zero(2), Mat::identity(2, 2), to_mat(&rot()))
        .expect("Lorentzian data");
    vec![("su2+r, D = ad e0", a, la), ("oscillator", b, lb)]
}

/// Random `v ∈ W`: `β(v, v) = 2tu` with `t, u ∈ [1/2, 2]`.
fn point_in_w(l: &LorentzianData, rng: &mut impl Rng) -> Vec<f64> {
    let n = l.kappa.nrows();
    let t = rng.random_range(0.5..=2.0);
    let u = rng.random_range(0.5..=2.0);
    let x = corpus::random_f64_vector(rng, n, 1.0);
    let mut v = vec![l.kappa_form(&x, &x) / (2.0 * t) + u];
    v.extend(x);
    v.push(t);
    v
}

fn apply(g: &Mat, v: &[f64]) -> Vec<f64> {
    (g * Vect::from_column_slice(v)).iter().copied().collect()
}

/// Invariance of `β`, inverse Cauchy–Schwarz, the `χ` Hessian, and the shape of the orbit of `d`.
pub fn lorentz(ctx: &Ctx) -> Result<Report> {
    let samples = ctx.trials_or(1000);
    let action_tol = ctx.tol("action", ACTION_TOL);
    let fd_tol = ctx.tol("fd", 1e-6);
    let h = 1e-3;
    let seed = ctx.seed();
    let mut report = Report::new("lorentz", &ctx.config);
    for (tag, (name, dext, l)) in setups().into_iter().enumerate() {
        let dim = dext.algebra.dim();
        let mut d = vec![0.0; dim];
        d[dim - 1] = 1.0;
        let group = ctx.par_map(samples, |i| {
            let mut rng = corpus::stream(seed, 70 + tag as u64, i);
            let g = random_group_element(&dext, &mut rng, true).map_err(|e| e.to_string())?;
            let u = corpus::random_f64_vector(&mut rng, dim, 3.0);
            let w = corpus::random_f64_vector(&mut rng, dim, 3.0);
            let gd = apply(&g, &d);
            Ok::<_, String>([
                beta_invariance_residual(&l, &g, &u, &w),
                act_form_residual(&l, &g, &u),
                orbit_shape_residual(&l, &g),
                l.beta(&gd, &gd).abs().max((gd[dim - 1] - 1.0).abs()),
            ])
        });
        let group: Vec<[f64; 4]> = group.into_iter().collect::<std::result::Result<_, _>>().map_err(CliError::Schema)?;
        let max = |k: usize| group.iter().map(|r| r[k]).fold(0.0, f64::max);
        report.check_le(format!("{name}: β invariance, {samples} samples"), max(0), action_tol);
        report.check_le(format!("{name}: Ad(g)(z,x,t) formula, {samples} samples"), max(1), action_tol);
        report.check_le(format!("{name}: Ad(g)d = (½κ(γ,γ), γ, 1), {samples} samples"), max(2), action_tol);
        report.check_le(format!("{name}: d-orbit on the paraboloid β = 0, t = 1"), max(3), action_tol);

        let cs_samples = 10 * samples;
        let cs = ctx.par_map(cs_samples, |i| {
            let mut rng = corpus::stream(seed, 80 + tag as u64, i);
            let v = point_in_w(&l, &mut rng);
            let x = corpus::random_f64_vector(&mut rng, dim, 3.0);
            let (bvv, bvx, bxx) = (l.beta(&v, &v), l.beta(&v, &x), l.beta(&x, &x));
            (bvv * bxx - bvx * bvx) / (1.0 + (bvv * bxx).abs() + bvx * bvx)
        });
        let worst = cs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        report.check_le(format!("{name}: β(v,v)β(x,x) - β(v,x)², {cs_samples} samples (relative)"), worst, 1e-12);

        let fd = ctx.par_map(samples, |i| {
            let mut rng = corpus::stream(seed, 90 + tag as u64, i);
            let v = point_in_w(&l, &mut rng);
            let x = corpus::random_f64_vector(&mut rng, dim, 1.0);
            let at = |s: f64| {
                let p: Vec<f64> = v.iter().zip(&x).map(|(a, b)| a + s * b).collect();
                chi_value(&l, &p).expect("v ± hx stays in W")
            };
            let (chi, hess) = chi_and_hessian(&l, &v, &x).expect("v ∈ W");
            // fourth-order central stencil
            let numeric = (-at(2.0 * h) + 16.0 * at(h) - 30.0 * chi + 16.0 * at(-h) - at(-2.0 * h)) / (12.0 * h * h);
            ((numeric - hess).abs(), (numeric - chi_hessian_variant(&l, &v, &x)).abs(), hess)
        });
        let max_err = fd.iter().map(|r| r.0).fold(0.0, f64::max);
        let variant_err = fd.iter().map(|r| r.1).fold(0.0, f64::max);
        let min_hess = fd.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
        report.check_le(format!("{name}: ∂²χ vs central differences (h = 1e-3), {samples} samples"), max_err, fd_tol);
        report.check(format!("{name}: ∂²χ >= 0"), ">= 0", format!("{min_hess:e}"), min_hess >= 0.0);
        report.info(format!("{name}: 2β(v,x)² variant vs central differences"), variant_err);
    }
    Ok(report)
}

/// Sampled coadjoint values `λ(Ad(g) x_0)` against `t t* - t ‖α‖² / (2 z*)`.
pub fn coadjoint_bound(ctx: &Ctx, lambdas: usize) -> Result<Report> {
    let samples = ctx.trials_or(1000);
    let tol = ctx.tol("bound", ACTION_TOL);
    let seed = ctx.seed();
    let mut report = Report::new("coadjoint-bound", &ctx.config);
    for (tag, (name, dext, l)) in setups().into_iter().enumerate() {
        let n = dext.base_dim();
        for j in 0..lambdas {
            let mut rng = corpus::stream(seed, 100 + tag as u64, j as u64);
            let z_star = rng.random_range(0.1..=2.0);
            let alpha = corpus::random_f64_vector(&mut rng, n, 2.0);
            let t_star = rng.random_range(-1.0..=1.0);
            let t = rng.random_range(0.5..=2.0);
            let x = corpus::random_f64_vector(&mut rng, n, 1.0);
            let bound = coadjoint_lower_bound(&l, z_star, &alpha, t_star, t).map_err(CliError::schema)?;
            let mut lambda = vec![z_star];
            lambda.extend(&alpha);
            lambda.push(t_star);
            let stream = ((tag as u64) << 32) | j as u64;
            let values =
                coadjoint_orbit_values(&dext, &l, &lambda, &x, t, samples, seed, stream).map_err(CliError::schema)?;
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            report.check(
                format!("{name}: λ {j} (z* = {z_star:.3}, t = {t:.3}), {samples} samples"),
                format!(">= {bound:.9} - {tol:e}"),
                format!("min {min:.9}"),
                min >= bound - tol,
            );
        }
    }
    Ok(report)
}

/// Oscillator criterion: rotation-type `D` accepted with `κ`, hyperbolic `D` rejected.
pub fn osci(ctx: &Ctx) -> Result<Report> {
    let tol = ctx.tol("identity", STRUCTURE_TOL);
    let mut report = Report::new("osci", &ctx.config);
    let mut rng = corpus::stream(ctx.seed(), 110, 0);
    let w = to_mat(&rot());
    for (name, d) in [("rotation D = [[0,1],[-1,0]]", rot()), ("rotation D = [[0,-1],[1,0]]", vec![vec![0.0, -1.0], vec![1.0, 0.0]])] {
        let osc = oscillator(2, rot(), d).map_err(CliError::schema)?;
        match osci_criterion(&osc) {
            OsciOutcome::Satisfied { orientation, kappa, d_tilde, identity_residual, .. } => {
                report.check(format!("{name}: accepted"), "accepted", format!("orientation {orientation:+}"), true);
                let pd = orbitcone::numeric::min_sym_eigen(&kappa).0 > 0.0;
                report.check(format!("{name}: κ positive definite"), true, pd, pd);
                report.check_le(format!("{name}: |κD̃ - W|"), identity_residual, tol);
                let sampled = (0..100)
                    .map(|_| {
                        let v = Vect::from_vec(corpus::random_f64_vector(&mut rng, 2, 1.0));
                        let u = Vect::from_vec(corpus::random_f64_vector(&mut rng, 2, 1.0));
                        (v.dot(&(&kappa * (&d_tilde * &u))) - v.dot(&(&w * &u))).abs()
                    })
                    .fold(0.0, f64::max);
                report.check_le(format!("{name}: max |κ(v, D̃w) - ω(v, w)| over 100 pairs"), sampled, tol);
                report.info(format!("{name}: kappa"), kappa.as_slice());
            }
            OsciOutcome::Failed { reason, .. } => report.check(format!("{name}: accepted"), "accepted", reason, false),
        }
    }
    let hyp = vec![vec![1.0, 0.0], vec![0.0, -1.0]];
    let osc = oscillator(2, rot(), hyp.clone()).map_err(CliError::schema)?;
    match osci_criterion(&osc) {
        OsciOutcome::Failed { min_eigenvalues, witness, .. } => {
            let d = to_mat(&hyp);
            let x = Vect::from_vec(witness.clone());
            let value = (&d * &x).dot(&(&w * &x)).min(x.dot(&(&w * (&d * &x))));
            report.check("hyperbolic D = diag(1,-1): rejected", "rejected", "rejected", true);
            report.check(
                "hyperbolic: negative eigenvalue",
                "< 0",
                format!("{:e}, {:e}", min_eigenvalues.0, min_eigenvalues.1),
                min_eigenvalues.0 < 0.0 && min_eigenvalues.1 < 0.0,
            );
            report.check("hyperbolic: witness form value", "< 0", format!("{value:e}"), value < 0.0);
            report.info("hyperbolic witness", witness);
        }
        OsciOutcome::Satisfied { .. } => report.check("hyperbolic D = diag(1,-1): rejected", "rejected", "accepted", false),
    }
    Ok(report)
}

pub fn load_spec(path: &Path) -> Result<DoubleExtensionSpec<f64>> {
    DoubleExtensionSpec::from_json(&read_file(path)?).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

/// Builds the extension; invalid data is an input error.
pub fn build(ctx: &Ctx, path: &Path) -> Result<Report> {
    let spec = load_spec(path)?;
    let dext = build_double_extension(spec).map_err(CliError::schema)?;
    let mut report = Report::new("dext-build", &ctx.config);
    report.check_le("Jacobi residual", dext.algebra.jacobi_residual(), ctx.tol("jacobi", STRUCTURE_TOL));
    report.info("algebra", dext.algebra.to_json_value());
    Ok(report)
}

/// Cocycle, derivation, compatibility and Jacobi residuals as separate checks.
pub fn check(ctx: &Ctx, path: &Path) -> Result<Report> {
    let spec = load_spec(path)?;
    let tol = ctx.tol("jacobi", STRUCTURE_TOL);
    let mut report = Report::new("dext-check", &ctx.config);
    report.check_le("ω cocycle residual", spec.omega.cocycle_residual(&spec.base), tol);
    report.check_le("D derivation residual", spec.derivation_residual(), tol);
    report.check_le("compatibility residual", spec.compatibility_residual(), tol);
    match build_double_extension(spec) {
        Ok(d) => report.check_le("Jacobi residual", d.algebra.jacobi_residual(), tol),
        Err(e) => report.check("builds", "valid", e, false),
    }
    Ok(report)
}

/// Positive energy condition, compared with the oscillator criterion when the base is abelian.
pub fn pec(ctx: &Ctx, path: &Path) -> Result<Report> {
    let spec = load_spec(path)?;
    let mut report = Report::new("pec", &ctx.config);
    let p = pec_check(&spec);
    report.check(
        "δ = 0 and ω(Dx,x) >= 0",
        "pass",
        match &p.reason {
            None => "pass".to_string(),
            Some(r) => r.clone(),
        },
        p.pass,
    );
    report.info("pec", &p);
    let abelian = spec.base.triples().is_empty();
    if abelian {
        if let Ok(osc) = oscillator(spec.base.dim(), spec.omega.w.clone(), spec.d.clone()) {
            let outcome = osci_criterion(&osc);
            let positive = matches!(outcome, OsciOutcome::Satisfied { orientation: 1, .. });
            let edge = p.min_eigenvalue.abs() <= PSD_TOL;
            report.check("PEC verdict matches ω(Dx,y) > 0", positive, p.pass, p.pass == positive || edge);
            report.info(
                "osci",
                match outcome {
                    OsciOutcome::Satisfied { orientation, .. } => format!("satisfied, orientation {orientation:+}"),
                    OsciOutcome::Failed { reason, .. } => reason,
                },
            );
        }
    }
    Ok(report)
}

/// Boundary orbits at the given levels stay on `β = 0` at fixed `t`; needs `κ` on the base.
pub fn orbit(ctx: &Ctx, path: &Path, levels: &[f64]) -> Result<Report> {
    let spec = load_spec(path)?;
    let kappa = spec
        .base
        .kappa_matrix()
        .ok_or_else(|| CliError::Schema("the base algebra needs \"kappa\"".into()))?;
    let dext = build_double_extension(spec).map_err(CliError::schema)?;
    let l = LorentzianData::new(&dext, kappa).map_err(CliError::schema)?;
    let samples = ctx.trials_or(1000);
    let tol = ctx.tol("action", ACTION_TOL);
    let seed = ctx.seed();
    let n = dext.base_dim();
    let mut report = Report::new("dext-orbit", &ctx.config);
    for (k, &t) in levels.iter().enumerate() {
        if t <= 0.0 {
            return Err(CliError::schema(DoubleExtError::NonpositiveLevel));
        }
        let res = ctx.par_map(samples, |i| {
            let mut rng = corpus::stream(seed, 120 + k as u64, i);
            let x = corpus::random_f64_vector(&mut rng, n, 1.0);
            let mut x0 = vec![l.kappa_form(&x, &x) / (2.0 * t)];
            x0.extend(&x);
            x0.push(t);
            let g = random_group_element(&dext, &mut rng, true).map_err(|e| e.to_string())?;
            let y = apply(&g, &x0);
            Ok::<_, String>((l.beta(&y, &y).abs().max((y[n + 1] - t).abs()), orbit_shape_residual(&l, &g)))
        });
        let res: Vec<(f64, f64)> = res.into_iter().collect::<std::result::Result<_, _>>().map_err(CliError::Schema)?;
        report.check_le(format!("level {t}: boundary orbit on β = 0"), res.iter().map(|r| r.0).fold(0.0, f64::max), tol);
        report.check_le(format!("level {t}: Ad(g)d shape"), res.iter().map(|r| r.1).fold(0.0, f64::max), tol);
    }
    Ok(report)
}
