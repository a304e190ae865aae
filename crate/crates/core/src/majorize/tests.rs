use proptest::prelude::*;

use itertools::Itertools;
use super::*;
use crate::{q, Rational};

fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x, 1)).collect()
}

fn blocks(b: &[(i64, i64, i64)]) -> StepFunction {
    StepFunction::from_blocks(&b.iter().map(|&(n, d, v)| (q(n, d), q(v, 1))).collect::<Vec<_>>())
        .unwrap()
}

#[test]
fn s_k_examples() {
    assert_eq!(s_k(&qv(&[3, 1, 2]), 2).unwrap(), q(5, 1));
    assert_eq!(s_k(&qv(&[3, 1, 2]), 3).unwrap(), q(6, 1));
    assert_eq!(s_k(&qv(&[3, 1, 2]), 0), Err(MajorizeError::KOutOfRange { k: 0, n: 3 }));
    assert!(s_k(&qv(&[3, 1, 2]), 4).is_err());
}

#[test]
fn s_k_is_a_supremum_over_subsets() {
    let x = qv(&[4, -2, 7, 0, 7, -5, 1, 3]);
    for k in 1..=x.len() {
        let best = (0..x.len())
            .combinations(k)
            .map(|f| f.iter().map(|&i| x[i].clone()).sum::<Rational>())
            .max()
            .unwrap();
        assert_eq!(s_k(&x, k).unwrap(), best);
    }
}

#[test]
fn hull_examples() {
    let x = qv(&[2, 1, 0]);
    for y in [qv(&[1, 1, 1]), qv(&[0, 2, 1])] {
        assert!(hull_membership_finite(&x, &y).unwrap());
        assert!(hull_membership_lp(&x, &y).unwrap());
        assert!(hull_membership_birkhoff(&x, &y).unwrap());
    }
    let y = qv(&[2, 2, -1]);
    assert!(!hull_membership_finite(&x, &y).unwrap());
    assert!(!hull_membership_lp(&x, &y).unwrap());
    assert!(!hull_membership_birkhoff(&x, &y).unwrap());
    assert!(hull_membership_twosided(&x, &x).unwrap());
    assert!(!hull_membership_twosided(&x, &qv(&[3, 2, 1])).unwrap());
    assert_eq!(hull_membership_finite(&x, &qv(&[1])), Err(MajorizeError::DimensionMismatch(3, 1)));
}

#[test]
fn schur_horn_small_cases() {
    let (d, row) = schur_horn_trial(&[1.0, 0.0], 5, 0);
    assert!(row.inside);
    assert!((d[0] + d[1] - 1.0).abs() < 1e-12 && d[0] >= -1e-12 && d[0] <= 1.0 + 1e-12);
    let rep = schur_horn_sample(&[3.0, -1.0, 0.5, 2.0, 0.0], 200, 9).unwrap();
    assert_eq!(rep.violations, 0);
    assert!(rep.extreme_points_attained);
    assert_eq!(schur_horn_sample(&[1.0], 1, 0).unwrap_err(), MajorizeError::UnsupportedSize(1));
}

#[test]
fn ryff_examples() {
    let f = blocks(&[(1, 2, 1), (1, 2, 3)]);
    assert_eq!(ryff_rearrangement(&f), blocks(&[(1, 2, 3), (1, 2, 1)]));
    let dec = blocks(&[(1, 3, 5), (1, 3, 2), (1, 3, -1)]);
    assert_eq!(ryff_rearrangement(&dec), dec);
    assert!(ryff_majorized(&StepFunction::constant(f.integral()), &f));
    assert!(ryff_majorized(&f, &blocks(&[(1, 2, 3), (1, 2, 1)])));
    assert!(equimeasurable(&f, &blocks(&[(1, 2, 3), (1, 2, 1)])));
    let g = blocks(&[(1, 2, 4), (1, 2, 0)]);
    assert!(!ryff_majorized(&g, &f));
    assert!(ryff_majorized(&f, &g));
    assert!(!equimeasurable(&f, &StepFunction::constant(q(1, 1))));
    assert!(StepFunction::new(vec![q(0, 1), q(1, 2)], vec![q(1, 1)]).is_err());
    let json = serde_json::to_string(&f).unwrap();
    assert_eq!(serde_json::from_str::<StepFunction>(&json).unwrap(), f);
    assert!(serde_json::from_str::<StepFunction>(r#"{"breakpoints":["0","1/2"],"values":["1"]}"#).is_err());
}

#[test]
fn maxnorm_vertices_are_root_differences() {
    assert_eq!(
        maxnorm_vertices::<Rational>(2).unwrap().len(),
        2,
    );
    for n in 2..=5 {
        assert!(maxnorm_identity_check::<Rational>(n).unwrap(), "n = {n}");
        assert_eq!(maxnorm_vertices::<Rational>(n).unwrap().len(), n * (n - 1));
    }
    assert!(maxnorm_identity_check::<Rational>(1).is_err());
}

#[test]
fn permutation_cone_examples() {
    let n = 4;
    let v = |a: &[i64]| crate::Vector::from_i64(a);
    let nonneg = permutation_cone_check::<Rational>(&[v(&[1, 1, 0, 0])], n).unwrap();
    assert_eq!(nonneg.chi_sign, 1);
    let tilted = permutation_cone_check::<Rational>(&[v(&[3, -1, -1, 0])], n).unwrap();
    assert_eq!(tilted.chi_sign, 1);
    let negative = permutation_cone_check::<Rational>(&[v(&[-3, 1, 1, 0])], n).unwrap();
    assert_eq!(negative.chi_sign, -1);
    assert_eq!(
        permutation_cone_check::<Rational>(&[v(&[1, 1, 1, 1]), v(&[-1, -1, -1, -1]), v(&[1, 0, 0, 0])], n)
            .unwrap_err(),
        MajorizeError::NotProper
    );
    assert_eq!(
        permutation_cone_check::<Rational>(&[v(&[1, -1, 0, 0])], n).unwrap_err(),
        MajorizeError::EmptyInterior
    );
    let w = permutation_cone_witness::<Rational>(&[v(&[3, -1, -1, 0])], n).unwrap().unwrap();
    assert!(!w.0.is_empty() && !w.1.is_empty());
    assert_eq!(permutation_cone_witness::<Rational>(&[v(&[1, 0, 0, 0])], n).unwrap(), None);
}

fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-6i64..=6, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_k_invariant_and_convex(x in small_vec(5), y in small_vec(5), rot in 0usize..5) {
        let (xq, yq) = (qv(&x), qv(&y));
        let mut perm = xq.clone();
        perm.rotate_left(rot);
        perm.swap(0, 4);
        let mid: Vec<Rational> = xq.iter().zip(&yq).map(|(a, b)| (a + b) / q(2, 1)).collect();
        for k in 1..=5 {
            prop_assert_eq!(s_k(&perm, k).unwrap(), s_k(&xq, k).unwrap());
            let bound = (s_k(&xq, k).unwrap() + s_k(&yq, k).unwrap()) / q(2, 1);
            prop_assert!(s_k(&mid, k).unwrap() <= bound);
        }
    }

    #[test]
    fn hlp_matches_lp(x in small_vec(4), y in small_vec(4), pick in 0u8..3) {
        let xq = qv(&x);
        // bias a third of the cases towards the hull
        let yq: Vec<Rational> = match pick {
            0 => qv(&y),
            1 => {
                let s: i64 = x.iter().sum::<i64>() - y[..3].iter().sum::<i64>();
                qv(&[y[0], y[1], y[2], s])
            }
            _ => {
                let mut p = xq.clone();
                p.reverse();
                p.iter().zip(&xq).map(|(a, b)| (a * q(1, 3)) + (b * q(2, 3))).collect()
            }
        };
        let hlp = hull_membership_finite(&xq, &yq).unwrap();
        prop_assert_eq!(hlp, hull_membership_lp(&xq, &yq).unwrap());
        prop_assert_eq!(hlp, hull_membership_birkhoff(&xq, &yq).unwrap());
        prop_assert_eq!(hlp, hull_membership_twosided(&xq, &yq).unwrap());
    }

    #[test]
    fn rearrangement_laws(vals in proptest::collection::vec(-5i64..=5, 1..6), lens in proptest::collection::vec(1i64..=4, 6)) {
        let total: i64 = lens[..vals.len()].iter().sum();
        let f = StepFunction::from_blocks(
            &vals.iter().zip(&lens).map(|(&v, &l)| (q(l, total), q(v, 1))).collect::<Vec<_>>(),
        ).unwrap();
        let fs = ryff_rearrangement(&f);
        prop_assert_eq!(ryff_rearrangement(&fs), fs.clone());
        prop_assert_eq!(fs.integral(), f.integral());
        prop_assert!(ryff_majorized(&f, &f));
        prop_assert!(ryff_majorized(&StepFunction::constant(f.integral()), &f));
        let mut rev = f.blocks();
        rev.reverse();
        prop_assert!(equimeasurable(&f, &StepFunction::from_blocks(&rev).unwrap()));
    }
}
