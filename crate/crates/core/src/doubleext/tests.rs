use super::*;
use crate::numeric::{random_in_ball, rng_for, Mat};

fn rot() -> Vec<Vec<f64>> {
    vec![vec![0.0, 1.0], vec![-1.0, 0.0]]
}

fn rat(v: i64) -> Rational {
    Rational::from_int(v)
}

fn su2_lorentz() -> (DoubleExtensionAlgebra<f64>, LorentzianData) {
    let base = named_base("su2+r").unwrap().to_f64();
    let d = base.ad_matrix(&[1.0, 0.0, 0.0, 0.0]);
    lorentzian_extension(base, Mat::identity(4, 4), d).unwrap()
}

fn oscillator_lorentz() -> (DoubleExtensionAlgebra<f64>, LorentzianData) {
    lorentzian_extension(FiniteLieAlgebra::zero(2), Mat::identity(2, 2), Mat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]))
        .unwrap()
}

#[test]
fn oscillator_brackets_and_jacobi() {
    let osc = oscillator(2, rot(), rot()).unwrap();
    assert!(osc.algebra.jacobi_residual() < STRUCTURE_TOL);
    assert_eq!(osc.central_residual(), 0.0);
    let alg = &osc.algebra;
    // [e1, e2] = ω(e1, e2) c and [d, e1] = D e1
    assert_eq!(alg.bracket(&[0., 1., 0., 0.], &[0., 0., 1., 0.]), vec![1., 0., 0., 0.]);
    assert_eq!(alg.bracket(&[0., 0., 0., 1.], &[0., 1., 0., 0.]), vec![0., 0., -1., 0.]);

    let exact = build_double_extension(DoubleExtensionSpec {
        base: FiniteLieAlgebra::zero(2),
        omega: Cocycle2::new(vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]]).unwrap(),
        d: vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]],
        delta: vec![rat(0), rat(0)],
    })
    .unwrap();
    assert_eq!(exact.algebra.jacobi_residual(), 0.0);
}

#[test]
fn zero_derivation_gives_heisenberg_times_line() {
    let osc = oscillator(2, rot(), vec![vec![0.0; 2]; 2]).unwrap();
    let d = [0., 0., 0., 1.];
    for k in 0..4 {
        assert!(osc.algebra.bracket(&d, &crate::rootsys::unit(4, k)).iter().all(|v| *v == 0.0));
    }
}

#[test]
fn oscillator_rejects_bad_input() {
    assert_eq!(
        oscillator(2, vec![vec![0.0; 2]; 2], rot()).unwrap_err(),
        DoubleExtError::NotSymplectic
    );
    assert!(matches!(
        oscillator(2, rot(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
        Err(DoubleExtError::NotInSp(_))
    ));
    assert_eq!(Cocycle2::new(vec![vec![1.0]]).unwrap_err(), DoubleExtError::NotAntisymmetric);
}

#[test]
fn compatibility_is_enforced() {
    let base = named_base("aff1").unwrap().to_f64();
    let ok = DoubleExtensionSpec {
        base: base.clone(),
        omega: Cocycle2::zero(2),
        d: vec![vec![0.0; 2]; 2],
        delta: vec![1.0, 0.0],
    };
    assert!(build_double_extension(ok.clone()).is_ok());
    let bad = DoubleExtensionSpec { delta: vec![0.0, 1.0], ..ok };
    assert!(matches!(build_double_extension(bad), Err(DoubleExtError::CompatibilityViolated(_))));
}

#[test]
fn random_specs_satisfy_jacobi() {
    for (s, name) in NAMED_BASES.iter().enumerate() {
        let base = named_base(name).unwrap();
        let mut rng = rng_for(11, s as u64);
        for _ in 0..5 {
            let spec = random_compatible_spec(&base, &mut rng);
            assert_eq!(spec.derivation_residual(), 0.0);
            assert_eq!(spec.compatibility_residual(), 0.0);
            let exact = build_double_extension(spec.clone()).unwrap();
            assert_eq!(exact.algebra.jacobi_residual(), 0.0, "{name}");
            let float = build_double_extension(spec.to_f64()).unwrap();
            assert!(float.algebra.jacobi_residual() < STRUCTURE_TOL);
        }
    }
}

#[test]
fn osci_orientations() {
    let plus = oscillator(2, rot(), rot()).unwrap();
    match osci_criterion(&plus) {
        OsciOutcome::Satisfied { orientation, kappa, identity_residual, .. } => {
            assert_eq!(orientation, 1);
            assert!((kappa - Mat::identity(2, 2)).amax() < 1e-12);
            assert!(identity_residual < 1e-12);
        }
        other => panic!("{other:?}"),
    }
    let minus = oscillator(2, rot(), vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
    assert!(matches!(osci_criterion(&minus), OsciOutcome::Satisfied { orientation: -1, .. }));

    let hyp = oscillator(2, rot(), vec![vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
    match osci_criterion(&hyp) {
        OsciOutcome::Failed { min_eigenvalues, witness, .. } => {
            assert!(min_eigenvalues.0 < 0.0 && min_eigenvalues.1 < 0.0);
            let w = Mat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
            let d = Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
            let x = crate::numeric::Vect::from_vec(witness);
            // ω(Dx, x) < 0
            assert!((&d * &x).dot(&(&w * &x)) < 0.0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn pec_outcomes() {
    let pass = pec_check(&oscillator(2, rot(), rot()).unwrap().spec);
    assert!(pass.pass && pass.reason.is_none());
    let fail = pec_check(&oscillator(2, rot(), vec![vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap().spec);
    assert!(!fail.pass && fail.witness.is_some());
    let spec = DoubleExtensionSpec {
        base: named_base("aff1").unwrap().to_f64(),
        omega: Cocycle2::zero(2),
        d: vec![vec![0.0; 2]; 2],
        delta: vec![1.0, 0.0],
    };
    assert_eq!(pec_check(&spec).reason.as_deref(), Some("delta"));
}

#[test]
fn lorentzian_data_is_validated() {
    let base = named_base("su2+r").unwrap().to_f64();
    let not_invariant = Mat::from_diagonal(&crate::numeric::Vect::from_vec(vec![1.0, 2.0, 1.0, 1.0]));
    assert!(matches!(
        lorentzian_extension(base.clone(), not_invariant, Mat::zeros(4, 4)),
        Err(DoubleExtError::NotLorentzian(_))
    ));
    let (_, l) = su2_lorentz();
    assert_eq!(l.beta.nrows(), 6);
}

#[test]
fn cone_membership_and_chi() {
    let (_, l) = su2_lorentz();
    let v = [1., 0., 0., 0., 0., 1.];
    assert_eq!(lorentz_cone_membership(&l, &v), ConeMembership::InsideW);
    assert_eq!(chi_value(&l, &v).unwrap(), 0.5);
    // χ((1+s)v) = χ(v)/(1+s)², so ∂²_v χ(v) = 6χ(v)
    assert_eq!(chi_and_hessian(&l, &v, &v).unwrap(), (0.5, 3.0));
    assert_eq!(chi_hessian_variant(&l, &v, &v), 1.0);
    assert_eq!(lorentz_cone_membership(&l, &[1., 0., 0., 0., 0., -1.]), ConeMembership::Outside);
    assert_eq!(lorentz_cone_membership(&l, &[0., 1., 0., 0., 0., 1.]), ConeMembership::Outside);
    assert_eq!(chi_value(&l, &[0., 1., 0., 0., 0., 1.]).unwrap_err(), DoubleExtError::NotInW);
}

#[test]
fn hessian_matches_finite_differences() {
    let (_, l) = su2_lorentz();
    let mut rng = rng_for(5, 0);
    let h = 1e-4;
    let mut checked = 0;
    while checked < 50 {
        let v: Vec<f64> = random_in_ball(6, 2.0, &mut rng).iter().copied().collect();
        if lorentz_cone_membership(&l, &v) != ConeMembership::InsideW || l.beta(&v, &v) < 0.5 {
            continue;
        }
        let x: Vec<f64> = random_in_ball(6, 1.0, &mut rng).iter().copied().collect();
        let (chi, hess) = chi_and_hessian(&l, &v, &x).unwrap();
        let at = |s: f64| {
            let p: Vec<f64> = v.iter().zip(&x).map(|(a, b)| a + s * b).collect();
            chi_value(&l, &p).unwrap()
        };
        let fd = (at(h) - 2.0 * chi + at(-h)) / (h * h);
        assert!((fd - hess).abs() < 1e-6 * (1.0 + hess.abs()), "{fd} vs {hess}");
        assert!(hess >= -1e-12);
        checked += 1;
    }
}

#[test]
fn group_action_preserves_beta_and_orbit_shape() {
    for (dext, l) in [su2_lorentz(), oscillator_lorentz()] {
        let dim = dext.algebra.dim();
        let mut rng = rng_for(9, dim as u64);
        for _ in 0..50 {
            let g = random_group_element(&dext, &mut rng, true).unwrap();
            let u: Vec<f64> = random_in_ball(dim, 3.0, &mut rng).iter().copied().collect();
            let w: Vec<f64> = random_in_ball(dim, 3.0, &mut rng).iter().copied().collect();
            assert!(beta_invariance_residual(&l, &g, &u, &w) < ACTION_TOL);
            assert!(orbit_shape_residual(&l, &g) < ACTION_TOL);
            assert!(act_form_residual(&l, &g, &u) < ACTION_TOL);
        }
    }
}

#[test]
fn adjoint_action_on_oscillator() {
    let (dext, _) = oscillator_lorentz();
    // Ad(exp ξ) d = d - Dξ + ½ κ(ξ, ξ) c
    let out = adjoint_action(&dext, &[vec![1.0, 0.0]], &[0., 0., 0., 1.]).unwrap();
    let want = [0.5, 0.0, 1.0, 1.0];
    assert!(out.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12), "{out:?}");
}

#[test]
fn coadjoint_bound_examples() {
    let (dext, l) = oscillator_lorentz();
    assert_eq!(coadjoint_lower_bound(&l, 1.0, &[1.0, 0.0], 0.0, 1.0).unwrap(), -0.5);
    assert_eq!(coadjoint_lower_bound(&l, 0.0, &[1.0, 0.0], 0.0, 1.0).unwrap_err(), DoubleExtError::NonpositiveZstar);
    assert_eq!(coadjoint_lower_bound(&l, 1.0, &[1.0, 0.0], 0.0, 0.0).unwrap_err(), DoubleExtError::NonpositiveLevel);
    let lambda = [1.0, 1.0, 0.0, 0.0];
    let values = coadjoint_orbit_values(&dext, &l, &lambda, &[0.3, -0.2], 1.0, 200, 3, 0).unwrap();
    let bound = coadjoint_lower_bound(&l, 1.0, &[1.0, 0.0], 0.0, 1.0).unwrap();
    assert!(values.iter().all(|&v| v >= bound - ACTION_TOL));
}

#[test]
fn heisenberg_coadjoint_lines() {
    let heis = FiniteLieAlgebra::from_triples(3, vec![(0, 1, 2, 1.0)]).unwrap();
    let (dir, dev) = coadjoint_line(&heis, &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], &[-2.0, -0.5, 1.0, 3.0]);
    assert_eq!(dir, vec![0.0, 1.0, 0.0]);
    assert!(dev < 1e-12);
}

#[test]
fn spec_json_round_trip() {
    let spec = oscillator(2, rot(), rot()).unwrap().spec;
    let back = DoubleExtensionSpec::<f64>::from_json(&spec.to_json()).unwrap();
    assert_eq!(back, spec);
    let parsed = DoubleExtensionSpec::<f64>::from_json(
        r#"{"base": {"dim": 2, "c": []}, "omega": [[0, "1/2"], ["-1/2", 0]], "D": [[0, 1], [-1, 0]]}"#,
    );
    assert_eq!(parsed.unwrap().omega.w[0][1], 0.5);
}
