use orbitcone::convexcore::{dual_cone, duality_roundtrip, finiteness_cone, recession_cone};

use crate::config::Ctx;
use crate::corpus;
use crate::{Report, Result};

/// Duality round trip `C ↦ s_C ↦ C_f` on the random corpus.
pub fn duality(ctx: &Ctx) -> Result<Report> {
    let count = ctx.trials_or(200);
    let seed = ctx.seed();
    let results = ctx.par_map(count, |i| {
        let c = corpus::semi_equicontinuous(seed, i);
        let shape = (c.vrep().points.len(), c.vrep().rays.len());
        let outcome = match duality_roundtrip(&c) {
            Ok(rt) if rt.reconstructed.set_eq(&c) => Ok(rt.certifying.len()),
            Ok(_) => Err("reconstruction differs".to_string()),
            Err(e) => Err(e.to_string()),
        };
        (shape, outcome)
    });
    let mut report = Report::new("duality", &ctx.config);
    let mut rays = 0;
    for (i, ((p, r), outcome)) in results.into_iter().enumerate() {
        rays += r;
        let name = format!("C[{i}] ({p} points, {r} rays)");
        match outcome {
            Ok(k) => report.check(name, "C_f = C", format!("equal ({k} certifying directions)"), true),
            Err(e) => report.check(name, "C_f = C", e, false),
        }
    }
    report.info("total_rays", rays);
    Ok(report)
}

/// `lim(C) = B(C)⋆` on the duality corpus.
pub fn recession(ctx: &Ctx) -> Result<Report> {
    let count = ctx.trials_or(200);
    let seed = ctx.seed();
    let results = ctx.par_map(count, |i| {
        let c = corpus::semi_equicontinuous(seed, i);
        let rec = recession_cone(&c).expect("nonempty");
        let dual = dual_cone(&finiteness_cone(&c).expect("nonempty")).expect("cone");
        rec.set_eq(&dual)
    });
    let mut report = Report::new("recession", &ctx.config);
    for (i, ok) in results.into_iter().enumerate() {
        report.check(format!("C[{i}]"), "lim(C) = B(C)*", if ok { "equal" } else { "differs" }, ok);
    }
    Ok(report)
}
