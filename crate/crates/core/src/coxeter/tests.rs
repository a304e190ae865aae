use super::*;
use crate::{q, Rational};

type Sys = LinearCoxeterSystem<Rational>;

fn v(c: &[i64]) -> Vector<Rational> {
    Vector::from_i64(c)
}

fn sys(name: &str) -> Sys {
    builtin(name).unwrap()
}

#[test]
fn a1_reflection_swaps_coordinates() {
    let a1 = sys("A1");
    assert_eq!(a1.reflect(0, &v(&[3, 1])), v(&[1, 3]));
    assert_eq!(a1.reflect(0, &v(&[2, 2])), v(&[2, 2]));
}

#[test]
fn a2_descends_to_sorted_vector() {
    let a2 = sys("A2");
    let d = a2.to_dominant(&v(&[2, 1, 0]), a2.default_cap()).unwrap();
    assert_eq!(d.rep, v(&[0, 1, 2]));
    assert_eq!(a2.apply(&d.word, &v(&[2, 1, 0])), d.rep);
    let d = a2.to_dominant(&v(&[0, 1, 2]), 10).unwrap();
    assert!(d.word.is_empty());
    let d = a2.to_dominant(&v(&[1, 1, 2]), 10).unwrap();
    assert_eq!(d.stabilizer_generators, vec![0]);
}

#[test]
fn negative_level_never_descends() {
    let aff = sys("affine_A1");
    let p = v(&[1, -1]);
    assert_eq!(aff.level_of(&p), Some(q(-1, 1)));
    for cap in [1, 10, 100, 1000] {
        assert_eq!(aff.to_dominant(&p, cap).unwrap_err(), CoxeterError::CapExceeded(cap));
    }
}

#[test]
fn tits_cone_classification() {
    let a2 = sys("A2");
    for p in [v(&[0, 0, 0]), v(&[5, -1, 2]), v(&[1, 1, 0])] {
        assert_eq!(a2.tits_cone_classify(&p), TitsClass::Interior);
    }
    let aff = sys("affine_A1");
    assert_eq!(aff.tits_cone_classify(&v(&[1, 3])), TitsClass::Interior);
    assert_eq!(aff.tits_cone_classify(&v(&[0, 0])), TitsClass::BoundaryOrOutside);
    assert_eq!(aff.tits_cone_classify(&v(&[1, 0])), TitsClass::BoundaryOrOutside);
    let aff2 = sys("affine_A2");
    assert_eq!(aff2.tits_cone_classify(&v(&[0, 0, 0])), TitsClass::BoundaryOrOutside);
    assert_eq!(aff2.tits_cone_classify(&v(&[0, 0, 1])), TitsClass::Interior);
    let a3 = sys("A3");
    assert_eq!(a3.tits_cone_classify(&v(&[0, 0, 0, 0])), TitsClass::Interior);
}

#[test]
fn dominance_examples() {
    let a2 = sys("A2");
    assert!(a2.orbit_hull_membership(&v(&[0, 1, 2]), &v(&[1, 1, 1])).unwrap());
    assert!(!a2.orbit_hull_membership(&v(&[0, 1, 2]), &v(&[0, 0, 3])).unwrap());
    assert!(a2.orbit_hull_membership(&v(&[0, 1, 2]), &v(&[2, 0, 1])).unwrap());
}

#[test]
fn lemma22_examples() {
    let a1 = sys("A1");
    let roots = a1.enumerate_roots(0);
    let eps = a1.lemma22_step(&v(&[0, 2]), &[(q(1, 1), roots.roots[0].clone())]).unwrap();
    assert_eq!(eps, q(2, 1));
    assert_eq!(a1.reflect(0, &v(&[0, 2])), v(&[2, 0]));

    let a2 = sys("A2");
    let r = a2.enumerate_roots(0).roots;
    let p = v(&[0, 1, 3]);
    let eps = a2
        .lemma22_step(&p, &[(q(1, 1), r[0].clone()), (q(1, 1), r[1].clone())])
        .unwrap();
    assert_eq!(eps, q(2, 3));
    let scaled = a2
        .lemma22_step(&p, &[(q(3, 1), r[0].clone()), (q(3, 1), r[1].clone())])
        .unwrap();
    assert_eq!(scaled, q(2, 9));
    assert!(matches!(
        a2.lemma22_step(&v(&[1, 1, 3]), &[(q(1, 1), r[0].clone())]),
        Err(CoxeterError::InvalidExpansion(_))
    ));
}

#[test]
fn root_counts() {
    let a2 = sys("A2");
    assert_eq!(a2.enumerate_roots(0).len(), 2);
    let r = a2.enumerate_roots(3);
    assert_eq!(r.len(), 6);
    assert_eq!(r.positive().count(), 3);
    let g2 = sys("G2");
    assert_eq!(g2.enumerate_roots(6).len(), 12);
    let b2 = sys("B2");
    assert_eq!(b2.enumerate_roots(4).len(), 8);
    let aff = sys("affine_A1");
    for l in 0..6 {
        let r = aff.enumerate_roots(l);
        assert_eq!(r.len(), 4 * l + 2);
        assert_eq!(r.positive().count(), 2 * l + 2);
    }
}

#[test]
fn cone_cv_on_chamber_and_wall() {
    let a2 = sys("A2");
    let interior = a2.cone_cv(&v(&[0, 1, 3]), 3);
    assert!(interior.set_eq(&a2.cone_cs()));
    let wall = v(&[1, 1, 3]);
    let cv = a2.cone_cv(&wall, 3);
    let roots = a2.enumerate_roots(3);
    assert!(!cv.vrep().rays.iter().any(|r| r.approx_eq(&a2.data.coroots[0])));
    // C_v = C_S ∩ r_1 C_S for the stabilizer {1, r_1}
    let cs = a2.cone_cs();
    let moved = cs.map_generators(|g| a2.reflect(0, g)).unwrap();
    assert!(cv.set_eq(&cs.intersect(&moved).unwrap()));
    assert_eq!(roots.len(), 6);
}

#[test]
fn orders_by_generic_orbit() {
    let generic = |n: &str, p: Vector<Rational>| sys(n).enumerate_orbit(&p, 1000).len();
    assert_eq!(generic("A2", v(&[0, 1, 3])), 6);
    assert_eq!(generic("A3", v(&[0, 1, 3, 7])), 24);
    assert_eq!(generic("B2", v(&[1, 3])), 8);
    assert_eq!(generic("G2", v(&[0, 1, 5])), 12);
}

#[test]
fn generator_determinants_are_minus_one() {
    for name in BUILTIN_NAMES {
        for d in sys(name).reflection_determinants() {
            assert_eq!(d, q(-1, 1), "{name}");
        }
    }
}

#[test]
fn builtins_satisfy_lcs_axioms() {
    for name in BUILTIN_NAMES {
        let s = sys(name);
        s.check_lcs1().unwrap();
        s.check_lcs2().unwrap();
        s.check_lcs3(6).unwrap();
    }
    assert_eq!(builtin::<Rational>("E8").unwrap_err(), CoxeterError::UnknownName("E8".into()));
    assert_eq!(sys("A2").dim(), 3);
    assert_eq!(sys("A2").rank(), 2);
    assert!(sys("affine_A1").level.is_some());
}

#[test]
fn user_data_is_labelled_by_check_depth() {
    let data = sys("B2").data;
    let checked = LinearCoxeterSystem::from_data("mine", data, DEFAULT_LCS3_DEPTH).unwrap();
    assert_eq!(checked.lcs3, Lcs3Status::EmpiricallyChecked(DEFAULT_LCS3_DEPTH));
    // positive Cartan entries: an order-3 rotation with a chamber twice too wide
    let bad = ReflectionData::new(2, vec![v(&[1, 0]), v(&[0, 1])], vec![v(&[2, 1]), v(&[1, 2])], None)
        .unwrap();
    assert!(LinearCoxeterSystem::from_data("bad", bad, 4).is_err());
}

#[test]
fn coxeter_matrix_entries() {
    let m = coxeter_matrix(&sys("G2").data);
    assert_eq!(m[0][1], CoxeterEntry::Order(6));
    let m = coxeter_matrix(&sys("B2").data);
    assert_eq!(m[0][1], CoxeterEntry::Order(4));
    let m = coxeter_matrix(&sys("affine_A1").data);
    assert_eq!(m[0][1], CoxeterEntry::Infinite);
    let aff2 = sys("affine_A2");
    assert_eq!(is_finite_type(&aff2.data, &[0, 1, 2]), FiniteType::Infinite);
    assert_eq!(is_finite_type(&aff2.data, &[0, 2]), FiniteType::Finite);
}

#[test]
fn float_hull_violation_matches_exact_verdict() {
    let a2: LinearCoxeterSystem<f64> = builtin("A2").unwrap();
    let x = Vector(vec![0.0, 1.0, 2.0]);
    assert!(a2.hull_violation(&x, &Vector(vec![1.0, 1.0, 1.0])).unwrap() < 1e-12);
    assert!(a2.hull_violation(&x, &Vector(vec![0.0, 0.0, 3.0])).unwrap() > 0.5);
}
