use orbitcone::convexcore::{
    dd, dual_cone, duality_roundtrip, finiteness_cone, fm, is_semi_equicontinuous, recession_cone,
    support, Extended, PolyhedralSet,
};
use orbitcone::{q, PolyhedralSetQ, Rational, RationalVector, Vector};
use proptest::prelude::*;

fn vec3() -> impl Strategy<Value = RationalVector> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 3)
        .prop_map(|c| Vector(c.into_iter().map(|(n, d)| q(n, d)).collect()))
}

fn nonzero3() -> impl Strategy<Value = RationalVector> {
    vec3().prop_filter("nonzero", |v| !v.is_zero())
}

fn polyhedron() -> impl Strategy<Value = PolyhedralSetQ> {
    (prop::collection::vec(vec3(), 1..=6), prop::collection::vec(nonzero3(), 0..=3))
        .prop_map(|(p, r)| PolyhedralSet::from_vrep(3, p, r).unwrap())
}

fn fin(e: Extended<Rational>) -> Option<Rational> {
    e.finite().cloned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn double_dual_is_the_closed_cone(rays in prop::collection::vec(nonzero3(), 1..=5)) {
        let cone = PolyhedralSet::cone(3, rays).unwrap();
        let back = dual_cone(&dual_cone(&cone).unwrap()).unwrap();
        prop_assert!(back.set_eq(&cone));
    }

    #[test]
    fn recession_is_dual_of_finiteness(c in polyhedron()) {
        let rec = recession_cone(&c).unwrap();
        let dual = dual_cone(&finiteness_cone(&c).unwrap()).unwrap();
        prop_assert!(rec.set_eq(&dual));
    }

    #[test]
    fn semi_equicontinuous_sets_round_trip(c in polyhedron()) {
        let pointed = recession_cone(&c).unwrap().lineality().is_empty();
        prop_assert_eq!(is_semi_equicontinuous(&c).unwrap(), pointed);
        if pointed {
            let rt = duality_roundtrip(&c).unwrap();
            prop_assert!(rt.reconstructed.set_eq(&c));
        }
    }

    #[test]
    fn fourier_motzkin_agrees_with_double_description(rays in prop::collection::vec(nonzero3(), 1..=5)) {
        let by_fm = PolyhedralSet::hcone(3, fm::cone_hrep(3, &rays)).unwrap();
        let gens = dd::cone_generators(3, &fm::cone_hrep(3, &rays), &[]);
        let by_dd = PolyhedralSet::cone(3, gens.all_rays()).unwrap();
        let direct = PolyhedralSet::cone(3, rays).unwrap();
        prop_assert!(by_fm.set_eq(&direct));
        prop_assert!(by_dd.set_eq(&direct));
    }

    #[test]
    fn support_functional_is_sublinear(c in polyhedron(), v in vec3(), w in vec3(), t in 0i64..=5) {
        let (sv, sw) = (fin(support(&c, &v)), fin(support(&c, &w)));
        if let (Some(sv), Some(sw)) = (sv.clone(), sw) {
            let svw = fin(support(&c, &(&v + &w))).expect("B(C) is a convex cone");
            prop_assert!(svw <= sv.clone() + sw);
        }
        if let Some(sv) = sv {
            let tv = v.scale(&q(t, 1));
            prop_assert_eq!(fin(support(&c, &tv)).unwrap(), sv * q(t, 1));
        }
    }
}
