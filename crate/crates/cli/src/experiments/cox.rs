use std::path::Path;

use orbitcone::coxeter::{builtin, json, LinearCoxeterSystem, DEFAULT_LCS3_DEPTH};
use orbitcone::{lp, q, LinearCoxeterSystemQ, RationalVector};
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::config::Ctx;
use crate::corpus;
use crate::experiments::{read_file, show};
use crate::{CliError, Report, Result};

/// A built-in system by name, or user reflection data (LCS3 checked to the default depth).
pub fn system(name: &str, data: Option<&Path>) -> Result<LinearCoxeterSystemQ> {
    match data {
        Some(path) => {
            let d = json::from_json(&read_file(path)?).map_err(CliError::schema)?;
            LinearCoxeterSystem::from_data(name, d, DEFAULT_LCS3_DEPTH).map_err(CliError::schema)
        }
        None => builtin(name).map_err(CliError::schema),
    }
}

const ORBIT_LIMIT: usize = 10_000;

/// Dominance test against exact LP membership in `conv(W v)`.
pub fn oracle(ctx: &Ctx, systems: &[String]) -> Result<Report> {
    let pairs = ctx.trials_or(100);
    let seed = ctx.seed();
    let mut report = Report::new("cox-oracle", &ctx.config);
    for (tag, name) in systems.iter().enumerate() {
        let sys = system(name, None)?;
        let results = ctx.par_map(pairs, |i| {
            let mut rng = corpus::stream(seed, 10 + tag as u64, i);
            let v = corpus::rational_vector(&mut rng, sys.dim(), 4, 2);
            let orbit = sys.enumerate_orbit(&v, ORBIT_LIMIT);
            let k = rng.random_range(1..=4.min(orbit.len()));
            let picks: Vec<&RationalVector> = orbit.choose_multiple(&mut rng, k).collect();
            let mut u = corpus::convex_combination(&picks, &corpus::convex_weights(&mut rng, k));
            if rng.random_bool(0.5) {
                for c in &sys.data.coroots {
                    u = u.axpy(&corpus::rational(&mut rng, 2, 4), c);
                }
            }
            let dominance = sys.orbit_hull_membership(&v, &u).map_err(|e| e.to_string());
            let brute = lp::in_hull(&orbit, &[], &u).is_some();
            (v, u, dominance, brute)
        });
        let mut inside = 0;
        for (i, (v, u, dominance, brute)) in results.into_iter().enumerate() {
            let name = format!("{name} pair {i}: v={} u={}", show(&v), show(&u));
            inside += brute as usize;
            match dominance {
                Ok(d) => report.check(name, format!("lp={brute}"), format!("dominance={d}"), d == brute),
                Err(e) => report.check(name, format!("lp={brute}"), e, false),
            }
        }
        report.info(format!("{name}_inside"), inside);
    }
    Ok(report)
}

/// Affine `Ã1`: chamber descent at positive level and the one-sided hull check
/// `v⁺ - u⁺ ∈ C_S` for convex combinations of orbit points.
pub fn affine(ctx: &Ctx) -> Result<Report> {
    let count = ctx.trials_or(100);
    let seed = ctx.seed();
    let sys = system("affine_A1", None)?;
    let cap = sys.default_cap();
    let results = ctx.par_map(count, |i| {
        let mut rng = corpus::stream(seed, 20, i);
        let v = RationalVector::new(vec![
            corpus::rational(&mut rng, 4, 3),
            corpus::positive_rational(&mut rng, 4, 3),
        ]);
        let vp = match sys.to_dominant(&v, cap) {
            Ok(d) => d,
            Err(e) => return (v, Err(e.to_string())),
        };
        let orbit = sys.orbit_with_words(&v, 64, 12);
        let k = rng.random_range(1..=6.min(orbit.len()));
        let picks: Vec<&RationalVector> = orbit.choose_multiple(&mut rng, k).map(|(p, _)| p).collect();
        let u = corpus::convex_combination(&picks, &corpus::convex_weights(&mut rng, k));
        let outcome = sys
            .to_dominant(&u, cap)
            .map(|up| (vp.word.len(), lp::in_cone(&sys.data.coroots, &(&vp.rep - &up.rep))))
            .map_err(|e| e.to_string());
        (v, outcome)
    });
    let mut report = Report::new("affine", &ctx.config);
    for (i, (v, outcome)) in results.into_iter().enumerate() {
        let name = format!("v[{i}]={}", show(&v));
        match outcome {
            Ok((len, ok)) => {
                report.check(format!("{name} descends"), format!("<= {cap} reflections"), len, true);
                report.check(format!("{name} one-sided"), "v+ - u+ in C_S", ok, ok);
            }
            Err(e) => report.check(format!("{name} descends"), format!("<= {cap} reflections"), e, false),
        }
    }
    Ok(report)
}

/// `u ∈ conv(W v)` by dominance, cross-checked by LP over the orbit for finite groups.
pub fn hull(ctx: &Ctx, name: &str, data: Option<&Path>, v: &RationalVector, u: &RationalVector) -> Result<Report> {
    let sys = system(name, data)?;
    if v.dim() != sys.dim() || u.dim() != sys.dim() {
        return Err(CliError::Schema(format!("vectors must have dimension {}", sys.dim())));
    }
    let mut report = Report::new("cox-hull", &ctx.config);
    let member = sys.orbit_hull_membership(v, u).map_err(CliError::schema)?;
    report.info("member", member);
    let orbit = sys.enumerate_orbit(v, ORBIT_LIMIT + 1);
    if orbit.len() <= ORBIT_LIMIT {
        let brute = lp::in_hull(&orbit, &[], u).is_some();
        report.check("dominance = LP over orbit", brute, member, brute == member);
    } else {
        report.check("dominance test", "decided", member, true);
    }
    Ok(report)
}

/// Chamber descent of `v` with the reflection word used.
pub fn reduce(ctx: &Ctx, name: &str, data: Option<&Path>, v: &RationalVector, cap: Option<usize>) -> Result<Report> {
    let sys = system(name, data)?;
    if v.dim() != sys.dim() {
        return Err(CliError::Schema(format!("v must have dimension {}", sys.dim())));
    }
    let cap = cap.unwrap_or(sys.default_cap());
    let mut report = Report::new("cox-reduce", &ctx.config);
    match sys.to_dominant(v, cap) {
        Ok(d) => {
            report.check("reaches the chamber", "in K", show(&d.rep), sys.in_chamber(&d.rep));
            let back = sys.apply(&d.word.inverse(), &d.rep);
            report.check("word maps back to v", show(v), show(&back), &back == v);
            report.info("dominant", d.rep.iter().map(orbitcone::format_rational).collect::<Vec<_>>());
            report.info("word", d.word.0.iter().map(|&s| sys.data.labels[s].clone()).collect::<Vec<_>>());
            report.info(
                "stabilizer",
                d.stabilizer_generators.iter().map(|&s| sys.data.labels[s].clone()).collect::<Vec<_>>(),
            );
        }
        Err(e) => report.check("reaches the chamber", format!("<= {cap} reflections"), e, false),
    }
    Ok(report)
}

/// Roots reached by words of length `<= length`, one table row each.
pub fn roots(ctx: &Ctx, name: &str, data: Option<&Path>, length: usize) -> Result<Report> {
    let sys = system(name, data)?;
    let set = sys.enumerate_roots(length);
    let mut report = Report::new("cox-roots", &ctx.config);
    let pos = set.positive().count();
    let pairing_ok = set.roots.iter().all(|r| r.alpha.dot(&r.coroot) == q(2, 1));
    report.check("α(α^∨) = 2", true, pairing_ok, pairing_ok);
    report.info("count", set.len());
    report.info("positive", pos);
    report.table = Some(crate::Table {
        columns: ["alpha", "coroot", "positive", "depth"].map(String::from).to_vec(),
        rows: set
            .roots
            .iter()
            .map(|r| vec![show(&r.alpha), show(&r.coroot), r.positive.to_string(), r.depth.to_string()])
            .collect(),
    });
    Ok(report)
}
