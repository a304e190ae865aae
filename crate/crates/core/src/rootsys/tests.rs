use super::*;
use crate::coxeter::builtin;
use crate::linalg::Vector;
use crate::numeric::{expm, Vect};

fn keyed(points: Vec<Vector<f64>>) -> Vec<String> {
    let mut k: Vec<String> = points
        .iter()
        .map(|p| p.0.iter().map(|x| format!("{:.8}", x + 0.0)).collect::<Vec<_>>().join(","))
        .collect();
    k.sort();
    k
}

/// `c, p, q, d` with `[p, q] = c`, `[d, p] = q`, `[d, q] = -p`.
fn oscillator() -> FiniteLieAlgebra<f64> {
    FiniteLieAlgebra::from_triples(4, [(1, 2, 0, 1.0), (3, 1, 2, 1.0), (3, 2, 1, -1.0)]).unwrap()
}

#[test]
fn u2_roots_are_compact() {
    let (alg, d) = build_un(2).unwrap();
    assert_eq!(alg.dim(), 4);
    assert_eq!(d.roots.len(), 2);
    assert!(d.roots.iter().all(|r| r.kind.tag == RootVectorTag::CompactSimple));
    for r in &d.roots {
        let c = r.coroot.as_ref().unwrap();
        let l: f64 = r.lambda.iter().zip(c).map(|(a, b)| a * b).sum();
        assert!((l - 2.0).abs() < 1e-10);
        assert!((r.kind.witness).abs() > 1e-6);
    }
    assert!(d.cone_potential().unwrap());
}

#[test]
fn decomposition_invariants() {
    for (p, q) in [(2, 0), (3, 0), (1, 1), (2, 1), (2, 2)] {
        let (alg, d) = build_upq(p, q).unwrap();
        assert!(alg.jacobi_residual() < 1e-12);
        assert_eq!(alg.kappa_invariance_residual(), Some(0.0));
        let pt = &d.projection_pt;
        assert!((pt * pt - pt).amax() < 1e-10);
        for b in &d.cartan_basis {
            assert!((pt * b - b).amax() < 1e-12);
        }
        for i in 0..d.roots.len() {
            assert!(d.root_vector_residual(i, &d.roots[i].vector) < 1e-12);
        }
    }
}

#[test]
fn u3_has_six_compact_roots() {
    let (_, d) = build_un(3).unwrap();
    assert_eq!(d.roots.len(), 6);
    assert!(d.is_compact_type());
    assert_eq!(d.compact_simple_roots().len(), 2);
}

#[test]
fn u11_is_noncompact() {
    let (_, d) = build_upq(1, 1).unwrap();
    assert_eq!(d.roots.len(), 2);
    assert!(d.roots.iter().all(|r| r.kind.tag == RootVectorTag::NoncompactSimple));
    assert!(d.cone_potential().unwrap());
    let systems = find_positive_systems(&d);
    assert_eq!(systems.len(), 2);
    let cones = cmin_cmax(&d, &systems[0]).unwrap();
    assert_eq!(cones.c_min.vrep().rays.len(), 1);
    assert_eq!(cones.c_max.hrep().len(), 1);
    let interior: Vec<_> = cones
        .c_max
        .hrep()
        .iter()
        .map(|h| (h.normal.clone(), h.offset.clone(), true))
        .collect();
    assert!(crate::lp::strictly_feasible(&interior, 2).is_some());
}

#[test]
fn u21_counts_and_sandwich() {
    let (_, d) = build_upq(2, 1).unwrap();
    assert_eq!(d.compact_roots().len(), 2);
    assert_eq!(d.noncompact_roots().len(), 4);
    let systems = find_positive_systems(&d);
    assert!(!systems.is_empty());
    for s in &systems {
        cmin_cmax(&d, s).unwrap();
    }
}

#[test]
fn sandwich_holds_for_every_invariant_system() {
    for (p, q) in [(2, 2), (3, 1)] {
        let (_, d) = build_upq(p, q).unwrap();
        let systems = find_positive_systems(&d);
        assert!(!systems.is_empty());
        for s in &systems {
            cmin_cmax(&d, s).unwrap();
        }
    }
}

#[test]
fn un_has_trivial_cones() {
    let (_, d) = build_un(2).unwrap();
    let systems = find_positive_systems(&d);
    assert_eq!(systems, vec![Vec::<usize>::new()]);
    let cones = cmin_cmax(&d, &[]).unwrap();
    assert!(cones.c_min.vrep().rays.is_empty());
    assert!(cones.c_max.hrep().is_empty());
}

#[test]
fn bad_positive_system_rejected() {
    let (_, d) = build_upq(1, 1).unwrap();
    assert!(matches!(cmin_cmax(&d, &[0, 1]), Err(RootSysError::NotAPositiveSystem(_))));
    assert!(matches!(cmin_cmax(&d, &[]), Err(RootSysError::NotAPositiveSystem(_))));
}

#[test]
fn oscillator_root_is_nilpotent() {
    let alg = oscillator();
    assert!(alg.jacobi_residual() < 1e-15);
    let t = vec![Vect::from_vec(vec![1.0, 0.0, 0.0, 0.0]), Vect::from_vec(vec![0.0, 0.0, 0.0, 1.0])];
    let d = decompose(&alg, t).unwrap();
    assert_eq!(d.roots.len(), 2);
    assert!(d.roots.iter().all(|r| r.kind.tag == RootVectorTag::Nilpotent));
    assert!(d.cone_potential().unwrap());
}

#[test]
fn abelian_toy_has_no_cone_potential() {
    // t = span(h), C² = span(a, b) with [h, a] = b, [h, b] = -a, [a, b] = 0
    let alg = FiniteLieAlgebra::from_triples(3, [(0, 1, 2, 1.0), (0, 2, 1, -1.0)]).unwrap();
    let d = decompose(&alg, vec![Vect::from_vec(vec![1.0, 0.0, 0.0])]).unwrap();
    assert!(d.roots.iter().all(|r| r.kind.tag == RootVectorTag::Abelian));
    assert!(!d.cone_potential().unwrap());
    assert!(matches!(
        d.classify_root_vector(0, &d.roots[1].vector),
        Err(RootSysError::NotARootVector(_))
    ));
}

#[test]
fn classification_is_torus_invariant() {
    let (_, d) = build_upq(2, 1).unwrap();
    for h in [[0.3, -1.1, 2.0], [1.7, 0.2, -0.4]] {
        let g = expm(&d.algebra.ad_matrix(d.t_element(&h).as_slice()));
        for (i, r) in d.roots.iter().enumerate() {
            let moved = r.vector.map(&g);
            let k = d.classify_root_vector(i, &moved).unwrap();
            assert_eq!(k.tag, r.kind.tag);
            assert!((k.witness - r.kind.witness).abs() < 1e-9);
        }
    }
}

#[test]
fn weyl_group_of_u3_matches_a2() {
    let (_, d) = build_un(3).unwrap();
    let weyl = d.weyl_system().unwrap();
    let a2 = builtin::<f64>("A2").unwrap();
    let x = Vector(vec![0.31, -1.7, 2.9]);
    let ours = keyed(weyl.enumerate_orbit(&x, 100));
    assert_eq!(ours.len(), 6);
    assert_eq!(ours, keyed(a2.enumerate_orbit(&x, 100)));
}

#[test]
fn curve_compact_segment() {
    let (_, d) = build_un(2).unwrap();
    let x = [1.0, 0.0];
    let root = d.compact_roots()[0];
    let grid: Vec<f64> = (0..=20).map(|k| k as f64 * 0.1).collect();
    let pts = orbit_projection_curve(&d, &x, root, &grid).unwrap();
    assert!((pts[0][0] - 1.0).abs() < 1e-12 && pts[0][1].abs() < 1e-12);
    let reflected = d.reflect(root, &x);
    let hit = pts.iter().any(|p| (p[0] - reflected[0]).abs() + (p[1] - reflected[1]).abs() < 1e-2);
    assert!(hit, "the sweep reaches r_α(x)");
}

#[test]
fn curve_noncompact_ray_escapes() {
    let (_, d) = build_upq(1, 1).unwrap();
    let x = [1.0, 0.0];
    let root = d.noncompact_roots()[0];
    let grid: Vec<f64> = (0..=8).map(|k| k as f64 * 0.5).collect();
    let pts = orbit_projection_curve(&d, &x, root, &grid).unwrap();
    let dists: Vec<f64> = pts.iter().map(|p| ((p[0] - 1.0).powi(2) + p[1].powi(2)).sqrt()).collect();
    assert!(dists.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    assert!(dists[8] > 10.0);
    assert!(matches!(
        orbit_projection_curve(&d, &x, root, &[1e6]),
        Err(RootSysError::NumericOverflow(_))
    ));
}

#[test]
fn kostant_u2_segment() {
    let (_, d) = build_un(2).unwrap();
    let rep = kostant_sample(&d, &[3.0, 1.0], 200, 7).unwrap();
    assert_eq!(rep.inside, rep.trials);
    assert!(rep.max_violation <= HULL_TOL);
    assert_eq!(rep.vertices.len(), 2);
    assert!(rep.targeted_coverage.iter().all(|&e| e < 1e-9));
}

#[test]
fn kostant_u3_hexagon() {
    let (_, d) = build_un(3).unwrap();
    let rep = kostant_sample(&d, &[2.0, 1.0, 0.0], 100, 11).unwrap();
    assert_eq!(rep.inside, rep.trials);
    assert_eq!(rep.vertices.len(), 6);
    assert!(rep.targeted_coverage.iter().all(|&e| e < 1e-9));
}

#[test]
fn kostant_rejects_noncompact() {
    let (_, d) = build_upq(1, 1).unwrap();
    assert_eq!(kostant_sample(&d, &[1.0, 0.0], 1, 0).unwrap_err(), RootSysError::NonCompactType);
}

#[test]
fn torus_average_converges() {
    let (_, d) = build_un(3).unwrap();
    let e1 = torus_average_error(&d, 100, 3);
    let e2 = torus_average_error(&d, 1000, 3);
    assert!(e2 < 1e-2, "{e2}");
    assert!(e2 < e1);
}

#[test]
fn algebra_json_roundtrip() {
    let alg = oscillator();
    let back = FiniteLieAlgebra::from_json(&alg.to_json()).unwrap();
    assert_eq!(back.triples(), alg.triples());
    let bad = r#"{"dim": 2, "c": [[0, 1, 0, 1.0], [1, 0, 0, 1.0]], "kappa": null}"#;
    assert_eq!(FiniteLieAlgebra::from_json(bad).unwrap_err(), RootSysError::NotAntisymmetric);
}
