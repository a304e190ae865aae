use std::path::Path;

use orbitcone::majorize::{
    equimeasurable, hull_membership_birkhoff, hull_membership_finite, hull_membership_twosided,
    maxnorm_vertices, permutation_cone_check, ryff_majorized, ryff_rearrangement, s_k,
    schur_horn_report, schur_horn_trial, MajorizeError, StepFunction, SCHUR_HORN_TOL,
};
use orbitcone::{format_rational, q, Rational, RationalVector, Vector};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::config::Ctx;
use crate::corpus;
use crate::experiments::{read_file, show};
use crate::{CliError, Report, Result, Table};

fn lambda_for(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = corpus::stream(seed, 30, n as u64);
    (0..n).map(|_| rng.random_range(-5.0..5.0)).collect()
}

/// Schur–Horn: Haar diagonals of `U diag(λ) U*` are majorized by `λ`.
pub fn schurhorn(ctx: &Ctx, ns: &[usize], lambda: Option<&[f64]>) -> Result<Report> {
    let trials = ctx.trials_or(1000);
    let tol = ctx.tol("slack", SCHUR_HORN_TOL);
    let mut report = Report::new("schurhorn", &ctx.config);
    let single = ns.len() == 1;
    let mut rows = Vec::new();
    for &n in ns {
        if n < 2 {
            return Err(CliError::schema(MajorizeError::UnsupportedSize(n)));
        }
        let lam = match lambda {
            Some(l) if l.len() == n => l.to_vec(),
            Some(l) => return Err(CliError::Schema(format!("λ has {} entries, expected {n}", l.len()))),
            None => lambda_for(ctx.seed(), n),
        };
        let seed = ctx.seed().wrapping_add(n as u64);
        let trial_rows = ctx.par_map(trials, |t| schur_horn_trial(&lam, seed, t).1);
        for r in &trial_rows {
            let inside = r.max_slack <= tol;
            report.check(format!("n={n} trial {}", r.trial), format!("slack <= {tol:e}"), format!("{:e}", r.max_slack), inside);
            let mut row = vec![r.trial.to_string(), format!("{:e}", r.max_slack), inside.to_string()];
            if !single {
                row.insert(0, n.to_string());
            }
            rows.push(row);
        }
        let agg = schur_horn_report(&lam, trial_rows);
        report.check(format!("n={n} permutation matrices"), "diagonal = permuted λ", agg.extreme_points_attained, agg.extreme_points_attained);
        report.info(format!("n={n} lambda"), &lam);
        report.info(format!("n={n} max_slack"), agg.max_slack);
    }
    let mut columns: Vec<String> = ["trial", "max_slack", "inside"].map(String::from).to_vec();
    if !single {
        columns.insert(0, "n".into());
    }
    report.table = Some(Table { columns, rows });
    Ok(report)
}

fn random_pair(seed: u64, i: u64, nmax: usize) -> (RationalVector, RationalVector) {
    let mut rng = corpus::stream(seed, 40, i);
    let n = 2 + (i as usize) % (nmax - 1);
    let x = corpus::rational_vector(&mut rng, n, 5, 2);
    let mut y = match i % 3 {
        // y = P x with P a convex combination of permutation matrices
        0 => {
            let k = rng.random_range(1..=3);
            let w = corpus::convex_weights(&mut rng, k);
            (0..k).fold(Vector::zeros(n), |acc, j| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                acc.axpy(&w[j], &Vector(p.iter().map(|&a| x[a].clone()).collect()))
            })
        }
        _ => {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            Vector(p.iter().map(|&a| x[a].clone()).collect())
        }
    };
    if !i.is_multiple_of(3) {
        // zero-sum perturbation keeps Σy = Σx, so the outcome is decided by the partial sums
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        let d = corpus::rational(&mut rng, 3, 2);
        y[a] = y[a].clone() + d.clone();
        y[b] = y[b].clone() - d;
    }
    (x, y)
}

/// HLP partial sums against the doubly-stochastic LP, and the two-sided form.
pub fn equivalences(ctx: &Ctx, nmax: usize) -> Result<Report> {
    if nmax < 2 {
        return Err(CliError::schema(MajorizeError::UnsupportedSize(nmax)));
    }
    let pairs = ctx.trials_or(1000);
    let seed = ctx.seed();
    let results = ctx.par_map(pairs, |i| {
        let (x, y) = random_pair(seed, i, nmax);
        let hlp = hull_membership_finite(&x.0, &y.0).expect("same dimension");
        let lp = hull_membership_birkhoff(&x.0, &y.0).expect("same dimension");
        let two = hull_membership_twosided(&x.0, &y.0).expect("same dimension");
        (x, y, hlp, lp, two)
    });
    let mut report = Report::new("maj", &ctx.config);
    let mut inside = 0;
    for (i, (x, y, hlp, lp, two)) in results.into_iter().enumerate() {
        inside += hlp as usize;
        let tag = format!("pair {i} x={} y={}", show(&x), show(&y));
        report.check(format!("{tag} HLP = LP"), format!("lp={lp}"), format!("hlp={hlp}"), hlp == lp);
        report.check(format!("{tag} twosided = finite"), format!("finite={hlp}"), format!("twosided={two}"), hlp == two);
    }
    report.info("inside", inside);
    report.info("outside", pairs - inside);
    Ok(report)
}

/// Vertices of `{Σx = 0, ‖x‖₁ <= 2}` against `{e_i - e_j}`.
pub fn maxnorm(ctx: &Ctx, nmax: usize) -> Result<Report> {
    let mut report = Report::new("maxnorm", &ctx.config);
    for n in 2..=nmax {
        let vertices = maxnorm_vertices::<Rational>(n).map_err(CliError::schema)?;
        let mut got: Vec<String> = vertices.iter().map(show).collect();
        let mut want: Vec<String> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| show(&(Vector::unit(n, i) - Vector::unit(n, j))))
            .collect();
        got.sort();
        want.sort();
        report.check(
            format!("n={n} vertex set"),
            format!("{} vectors e_i - e_j", want.len()),
            format!("{} vertices", got.len()),
            got == want,
        );
    }
    Ok(report)
}

/// Sign dichotomy of `χ = Σx_j` on random `S_n`-invariant cones.
pub fn perm_cone(ctx: &Ctx, n: usize) -> Result<Report> {
    let count = ctx.trials_or(50);
    let seed = ctx.seed();
    let draw = |tag: u64, i: u64, mixed: bool| -> Vec<RationalVector> {
        let mut rng = corpus::stream(seed, tag, i);
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        let k = rng.random_range(1..=3);
        let mut out = Vec::new();
        while out.len() < k + mixed as usize {
            let v = Vector((0..n).map(|_| q(rng.random_range(-3..=3), 1)).collect::<Vec<_>>());
            let s = v.sum();
            let want = if mixed && out.len() == k { -sign } else { sign };
            let constant = v.iter().all(|a| *a == v[0]);
            if !constant && s * q(want, 1) > q(0, 1) {
                out.push(v);
            }
        }
        out
    };
    let proper = ctx.par_map(count, |i| {
        let vs = draw(50, i, false);
        (permutation_cone_check(&vs, n), vs)
    });
    let mixed = ctx.par_map(count.div_ceil(5), |i| {
        let vs = draw(51, i, true);
        (permutation_cone_check(&vs, n), vs)
    });
    let mut report = Report::new("perm-cone", &ctx.config);
    let label = |vs: &[RationalVector]| vs.iter().map(show).collect::<Vec<_>>().join(" ");
    for (i, (res, vs)) in proper.into_iter().enumerate() {
        let expected_sign = if vs[0].sum() > q(0, 1) { 1 } else { -1 };
        let name = format!("cone {i} [{}]", label(&vs));
        match res {
            Ok(r) => report.check(
                name,
                format!("χ sign {expected_sign:+}"),
                format!("χ sign {:+} ({} generators, {}·1 interior)", r.chi_sign, r.generators, format_rational(&r.constant_interior)),
                r.chi_sign == expected_sign,
            ),
            Err(e) => report.check(name, format!("χ sign {expected_sign:+}"), e, false),
        }
    }
    for (i, (res, vs)) in mixed.into_iter().enumerate() {
        let name = format!("mixed {i} [{}]", label(&vs));
        let ok = matches!(res, Err(MajorizeError::NotProper));
        let observed = match res {
            Ok(r) => format!("proper, χ sign {:+}", r.chi_sign),
            Err(e) => e.to_string(),
        };
        report.check(name, "whole space", observed, ok);
    }
    Ok(report)
}

/// `s_k(x)` for one `k` or all of them.
pub fn sk(ctx: &Ctx, x: &RationalVector, k: Option<usize>) -> Result<Report> {
    let mut report = Report::new("maj-sk", &ctx.config);
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (1..=x.dim()).collect(),
    };
    for k in ks {
        let v = s_k(&x.0, k).map_err(CliError::schema)?;
        report.info(format!("s_{k}"), format_rational(&v));
    }
    Ok(report)
}

/// `y ∈ conv(S_n x)` by partial sums, cross-checked by the LP.
pub fn hull(ctx: &Ctx, x: &RationalVector, y: &RationalVector) -> Result<Report> {
    let mut report = Report::new("maj-hull", &ctx.config);
    let hlp = hull_membership_finite(&x.0, &y.0).map_err(CliError::schema)?;
    let lp = hull_membership_birkhoff(&x.0, &y.0).map_err(CliError::schema)?;
    report.info("member", hlp);
    report.check("HLP = LP", lp, hlp, hlp == lp);
    Ok(report)
}

/// Decreasing rearrangement of a step function given as JSON
/// `{"breakpoints": [...], "values": [...]}`.
pub fn ryff(ctx: &Ctx, path: &Path) -> Result<Report> {
    let f: StepFunction = serde_json::from_str(&read_file(path)?).map_err(CliError::schema)?;
    let r = ryff_rearrangement(&f);
    let mut report = Report::new("maj-ryff", &ctx.config);
    let decreasing = r.values().windows(2).all(|w| w[0] > w[1]);
    report.check("rearrangement is decreasing", true, decreasing, decreasing);
    let eq = equimeasurable(&f, &r);
    report.check("equimeasurable with f", true, eq, eq);
    let both = ryff_majorized(&f, &r) && ryff_majorized(&r, &f);
    report.check("f and f* majorize each other", true, both, both);
    report.info("rearrangement", serde_json::to_value(&r).map_err(CliError::schema)?);
    Ok(report)
}
