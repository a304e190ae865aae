use std::path::Path;

use orbitcone::rootsys::{
    build_un, build_upq, cmin_cmax, find_positive_systems, kostant_trial, summarize, FiniteLieAlgebra,
    RootDecomposition, HULL_TOL,
};

use crate::config::Ctx;
use crate::{CliError, Report, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealForm {
    Un(usize),
    Upq(usize, usize),
}

impl std::fmt::Display for RealForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RealForm::Un(n) => write!(f, "u({n})"),
            RealForm::Upq(p, q) => write!(f, "u({p},{q})"),
        }
    }
}

fn build(form: RealForm) -> Result<(FiniteLieAlgebra<f64>, RootDecomposition)> {
    match form {
        RealForm::Un(n) => build_un(n),
        RealForm::Upq(p, q) => build_upq(p, q),
    }
    .map_err(CliError::schema)
}

const DEFAULT_X: [f64; 5] = [3.0, 1.0, -2.0, 0.5, -4.5];

/// Kostant convexity for `u(n)`: sampled projections `p_t(Ad(g) x)` lie in `conv(W x)`.
pub fn kostant(ctx: &Ctx, ns: &[usize], x: Option<&[f64]>) -> Result<Report> {
    let trials = ctx.trials_or(1000);
    let hull_tol = ctx.tol("hull", HULL_TOL);
    let vertex_tol = ctx.tol("vertex", 1e-3);
    let mut report = Report::new("kostant", &ctx.config);
    for &n in ns {
        if !(1..=DEFAULT_X.len()).contains(&n) {
            return Err(CliError::Schema(format!("n = {n} is outside 1..={}", DEFAULT_X.len())));
        }
        let x: Vec<f64> = match x {
            Some(x) if x.len() == n => x.to_vec(),
            Some(x) => return Err(CliError::Schema(format!("x has {} entries, expected {n}", x.len()))),
            None => DEFAULT_X[..n].to_vec(),
        };
        let (_, decomp) = build_un(n).map_err(CliError::schema)?;
        let weyl = decomp.weyl_system().map_err(CliError::schema)?;
        let seed = ctx.seed().wrapping_add(n as u64);
        let results = ctx.par_map(trials, |t| kostant_trial(&decomp, &weyl, &x, seed, t));
        let rep = summarize(&decomp, &weyl, &x, &results);
        let inside = results.iter().filter(|r| r.1 <= hull_tol).count();
        report.check(
            format!("u({n}) samples inside conv(W x)"),
            trials,
            format!("{inside} (max violation {:e})", rep.max_violation),
            inside == trials,
        );
        for (v, (targeted, random)) in rep.vertices.iter().zip(rep.targeted_coverage.iter().zip(&rep.random_coverage)) {
            report.check_le(format!("u({n}) vertex {v:?} targeted distance"), *targeted, vertex_tol);
            report.info(format!("u({n}) vertex {v:?} nearest random sample"), random);
        }
    }
    Ok(report)
}

/// Structure checks for a matrix real form; optionally writes the algebra JSON.
pub fn build_report(ctx: &Ctx, form: RealForm, algebra_out: Option<&Path>) -> Result<Report> {
    let (alg, decomp) = build(form)?;
    let mut report = Report::new("roots-build", &ctx.config);
    let tol = ctx.tol("jacobi", 1e-12);
    report.check_le(format!("{form} Jacobi residual"), alg.jacobi_residual(), tol);
    report.check_le(format!("{form} antisymmetry residual"), alg.antisymmetry_residual(), tol);
    if let Some(r) = alg.kappa_invariance_residual() {
        report.check_le(format!("{form} κ invariance residual"), r, tol);
    }
    report.info("dim", alg.dim());
    report.info("rank", decomp.rank());
    report.info("compact_roots", decomp.compact_roots().len());
    report.info("noncompact_roots", decomp.noncompact_roots().len());
    if let Some(path) = algebra_out {
        std::fs::write(path, alg.to_json())
            .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })?;
    }
    Ok(report)
}

/// Root-vector types, cone potential and the `C_min ⊆ C_max` sandwich for every positive system.
pub fn classify(ctx: &Ctx, form: RealForm) -> Result<Report> {
    let (_, decomp) = build(form)?;
    let mut report = Report::new("roots-classify", &ctx.config);
    let types: Vec<String> = decomp
        .roots
        .iter()
        .map(|r| format!("{:?} λ={:?}", r.kind.tag, r.lambda.iter().map(|v| (v * 1e9).round() / 1e9).collect::<Vec<_>>()))
        .collect();
    report.info("roots", types);
    match decomp.cone_potential() {
        Ok(p) => report.info("cone_potential", p),
        Err(e) => report.info("cone_potential", e.to_string()),
    }
    let systems = find_positive_systems(&decomp);
    report.check(format!("{form} positive systems found"), ">= 1", systems.len(), !systems.is_empty());
    for (i, s) in systems.iter().enumerate() {
        match cmin_cmax(&decomp, s) {
            Ok(_) => report.check(format!("system {i} {s:?}"), "C_min ⊆ C_max", "holds", true),
            Err(e) => report.check(format!("system {i} {s:?}"), "C_min ⊆ C_max", e, false),
        }
    }
    Ok(report)
}
