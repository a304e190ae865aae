use std::fmt;

use crate::convexcore::polyhedron::{HalfSpace, PolyhedralSet, Representation};
use crate::convexcore::ConvexError;
use crate::linalg::Vector;
use crate::lp;
use crate::scalar::Scalar;

/// A value in `R ∪ {+∞}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    PosInfinity,
}

impl<T: Scalar> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(t) => Some(t),
            Extended::PosInfinity => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }
}

impl<T: Scalar> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(t) => write!(f, "{t}"),
            Extended::PosInfinity => write!(f, "+inf"),
        }
    }
}

/// `s_C(v) = sup ⟨C, v⟩` evaluated from the V-representation of `C`.
#[derive(Clone, Debug)]
pub struct SupportFunctional<T: Scalar> {
    carrier: PolyhedralSet<T>,
}

impl<T: Scalar> SupportFunctional<T> {
    pub fn new(carrier: PolyhedralSet<T>) -> Self {
        Self { carrier }
    }

    pub fn carrier(&self) -> &PolyhedralSet<T> {
        &self.carrier
    }

    pub fn eval(&self, v: &Vector<T>) -> Extended<T> {
        support(&self.carrier, v)
    }
}

/// `s_C(v)`: `+∞` as soon as some ray pairs positively with `v`.
pub fn support<T: Scalar>(c: &PolyhedralSet<T>, v: &Vector<T>) -> Extended<T> {
    let vr = c.vrep();
    if vr.rays.iter().any(|r| r.dot(v).is_pos()) {
        return Extended::PosInfinity;
    }
    let best = vr
        .points
        .iter()
        .map(|p| p.dot(v))
        .reduce(|a, b| if b > a { b } else { a });
    // the empty set has support -∞; callers reject empty inputs before this point
    Extended::Finite(best.expect("support of a nonempty set"))
}

fn require_cone<T: Scalar>(c: &PolyhedralSet<T>) -> Result<(), ConvexError> {
    match c.origin() {
        Representation::V if c.vrep().points.iter().any(|p| !p.is_zero()) => {
            Err(ConvexError::NotACone("V-representation has a nonzero point"))
        }
        Representation::H if c.hrep().iter().any(|h| !h.is_homogeneous()) => {
            Err(ConvexError::NotACone("H-representation has a nonzero offset"))
        }
        _ => Ok(()),
    }
}

fn require_nonempty<T: Scalar>(c: &PolyhedralSet<T>) -> Result<(), ConvexError> {
    if c.is_empty() {
        Err(ConvexError::Empty)
    } else {
        Ok(())
    }
}

/// `C⋆ = {α : ⟨α, v⟩ >= 0 for all v ∈ C}`, returned in the representation
/// opposite to the one `C` was built from.
pub fn dual_cone<T: Scalar>(c: &PolyhedralSet<T>) -> Result<PolyhedralSet<T>, ConvexError> {
    require_cone(c)?;
    match c.origin() {
        Representation::V => PolyhedralSet::hcone(c.dim(), c.vrep().rays.clone()),
        Representation::H => PolyhedralSet::cone(
            c.dim(),
            c.hrep().iter().map(|h| h.normal.clone()).collect(),
        ),
    }
}

/// `lim(C)`: homogenized H-representation, or the rays of the V-representation.
pub fn recession_cone<T: Scalar>(c: &PolyhedralSet<T>) -> Result<PolyhedralSet<T>, ConvexError> {
    require_nonempty(c)?;
    match c.origin() {
        Representation::H => PolyhedralSet::hcone(
            c.dim(),
            c.hrep().iter().map(|h| h.normal.clone()).collect(),
        ),
        Representation::V => PolyhedralSet::cone(c.dim(), c.vrep().rays.clone()),
    }
}

/// `B(C) = {v : inf ⟨C, v⟩ > -∞} = {v : ⟨r, v⟩ >= 0 for every ray r}`.
pub fn finiteness_cone<T: Scalar>(c: &PolyhedralSet<T>) -> Result<PolyhedralSet<T>, ConvexError> {
    require_nonempty(c)?;
    PolyhedralSet::hcone(c.dim(), c.vrep().rays.clone())
}

/// Does `B(C)` have interior points? Decided by a strict LP and cross-checked
/// against pointedness of `lim(C)`.
pub fn is_semi_equicontinuous<T: Scalar>(c: &PolyhedralSet<T>) -> Result<bool, ConvexError> {
    require_nonempty(c)?;
    let rows: Vec<(Vector<T>, T, bool)> =
        c.vrep().rays.iter().map(|r| (r.clone(), T::zero(), true)).collect();
    let interior = lp::strictly_feasible(&rows, c.dim()).is_some();
    let pointed = recession_cone(c)?.lineality().is_empty();
    assert_eq!(interior, pointed, "interior of B(C) must match pointedness of lim(C)");
    Ok(interior)
}

/// Outcome of [`duality_roundtrip`].
#[derive(Clone, Debug)]
pub struct RoundTrip<T: Scalar> {
    /// Closure of `Ω = B(-C)⁰`.
    pub omega: PolyhedralSet<T>,
    /// Directions `v` where `f = s_C` was evaluated.
    pub certifying: Vec<Vector<T>>,
    pub values: Vec<T>,
    /// `C_f = {α : α(v) <= f(v) for v in the certifying set}`.
    pub reconstructed: PolyhedralSet<T>,
}

/// Recovers `C` from `f = s_C` restricted to `Ω = B(-C)⁰`.
///
/// The certifying directions are the generators of the closure of `Ω` plus the
/// outer facet normals of `C`, all of which lie in the closure of `Ω`.
pub fn duality_roundtrip<T: Scalar>(c: &PolyhedralSet<T>) -> Result<RoundTrip<T>, ConvexError> {
    require_nonempty(c)?;
    if !is_semi_equicontinuous(c)? {
        return Err(ConvexError::NotSemiEquicontinuous);
    }
    let rays = &c.vrep().rays;
    let omega_normals: Vec<Vector<T>> = rays.iter().map(|r| -r).collect();
    let omega_closed = PolyhedralSet::hcone(c.dim(), omega_normals.clone())?;
    let omega = PolyhedralSet::from_hrep(
        c.dim(),
        omega_normals.into_iter().map(|n| HalfSpace::strict(n, T::zero())).collect(),
    )?;

    let mut certifying: Vec<Vector<T>> = omega_closed.vrep().rays.clone();
    for h in c.hrep() {
        certifying.push(-&h.normal);
    }
    certifying = crate::linalg::dedup_vectors(
        certifying.into_iter().map(|v| v.normalized_direction()).collect(),
    );

    let f = SupportFunctional::new(c.clone());
    let mut values = Vec::with_capacity(certifying.len());
    let mut halfspaces = Vec::new();
    for v in &certifying {
        let Extended::Finite(fv) = f.eval(v) else {
            return Err(ConvexError::PreconditionViolated(
                "support functional infinite on a certifying direction".into(),
            ));
        };
        // α(v) <= f(v)  <=>  ⟨-v, α⟩ >= -f(v)
        halfspaces.push(HalfSpace::new(-v, -fv.clone()));
        values.push(fv);
    }
    let reconstructed = PolyhedralSet::from_hrep(c.dim(), halfspaces)?;
    if !reconstructed.set_eq(c) {
        return Err(ConvexError::RoundTripMismatch);
    }
    Ok(RoundTrip { omega, certifying, values, reconstructed })
}

/// `C - Ω⋆` for an open cone `Ω ⊆ B(-C)` given by a strict homogeneous H-representation.
pub fn enlarge_by_cone<T: Scalar>(
    c: &PolyhedralSet<T>,
    omega: &PolyhedralSet<T>,
) -> Result<PolyhedralSet<T>, ConvexError> {
    require_nonempty(c)?;
    if omega.dim() != c.dim() {
        return Err(ConvexError::DimensionMismatch { expected: c.dim(), found: omega.dim() });
    }
    if omega.origin() != Representation::H || !omega.hrep().iter().all(|h| h.is_homogeneous()) {
        return Err(ConvexError::NotACone("Ω must be a homogeneous H-representation"));
    }
    let omega_closed = PolyhedralSet::hcone(
        c.dim(),
        omega.hrep().iter().map(|h| h.normal.clone()).collect(),
    )?;
    let f = SupportFunctional::new(c.clone());
    let generators = omega_closed.vrep().rays.clone();
    if let Some(bad) = generators.iter().find(|g| !f.eval(g).is_finite()) {
        return Err(ConvexError::PreconditionViolated(format!(
            "s_C = +inf on the Ω direction {:?}",
            bad.to_f64()
        )));
    }
    let vr = c.vrep();
    let mut rays = vr.rays.clone();
    rays.extend(omega.hrep().iter().map(|h| -&h.normal));
    let out = PolyhedralSet::from_vrep(c.dim(), vr.points.clone(), rays)?;
    let g = SupportFunctional::new(out.clone());
    for v in &generators {
        assert_eq!(g.eval(v), f.eval(v), "support functionals must agree on Ω");
    }
    Ok(out)
}

/// `R₊^× Ω` for a bounded polytope `Ω` whose closure misses the origin.
pub fn pointed_cone_from_bounded<T: Scalar>(
    omega: &PolyhedralSet<T>,
) -> Result<PolyhedralSet<T>, ConvexError> {
    require_nonempty(omega)?;
    let vr = omega.vrep();
    if !vr.rays.is_empty() {
        return Err(ConvexError::Unbounded);
    }
    if lp::in_hull(&vr.points, &[], &Vector::zeros(omega.dim())).is_some() {
        return Err(ConvexError::ZeroInClosure);
    }
    let cone = PolyhedralSet::cone(omega.dim(), vr.points.clone())?;
    assert!(cone.lineality().is_empty(), "cone over a polytope avoiding 0 is pointed");
    Ok(cone)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

impl std::str::FromStr for Norm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" => Ok(Norm::LInf),
            other => Err(format!("unknown norm `{other}`")),
        }
    }
}

/// Facet distances below this are treated as zero.
pub const DISTANCE_TOLERANCE: f64 = 1e-12;

fn dual_norm(a: &[f64], norm: Norm) -> f64 {
    match norm {
        Norm::L1 => a.iter().fold(0.0, |m, x| m.max(x.abs())),
        Norm::L2 => a.iter().map(|x| x * x).sum::<f64>().sqrt(),
        Norm::LInf => a.iter().map(|x| x.abs()).sum(),
    }
}

/// `1 / dist(x, ∂U)` for an open polyhedron `U` in the given norm.
///
/// The distance to the boundary of a convex set from an interior point is the
/// minimum distance to its bounding hyperplanes, `slack / ‖a‖_*`.
pub fn inverse_boundary_distance<T: Scalar>(
    u: &PolyhedralSet<T>,
    x: &Vector<T>,
    norm: Norm,
) -> Result<f64, ConvexError> {
    if x.dim() != u.dim() {
        return Err(ConvexError::DimensionMismatch { expected: u.dim(), found: x.dim() });
    }
    let hs = u.hrep();
    if hs.is_empty() {
        return Err(ConvexError::PreconditionViolated("U is the whole space".into()));
    }
    let xf = x.to_f64();
    let mut best = f64::INFINITY;
    for h in hs {
        let a = h.normal.to_f64();
        let slack: f64 =
            a.iter().zip(&xf).map(|(p, q)| p * q).sum::<f64>() - h.offset.to_f64_lossy();
        let d = slack / dual_norm(&a, norm);
        if d <= DISTANCE_TOLERANCE {
            return Err(ConvexError::PointOutside);
        }
        best = best.min(d);
    }
    Ok(1.0 / best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexcore::Membership;
    use num::rational::BigRational;

    type Q = BigRational;

    fn v(c: &[i64]) -> Vector<Q> {
        Vector::from_i64(c)
    }

    fn z() -> Q {
        Q::from_integer(0.into())
    }

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn quadrant_is_self_dual() {
        let c = PolyhedralSet::cone(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        let d = dual_cone(&c).unwrap();
        assert_eq!(d.origin(), Representation::H);
        assert!(d.set_eq(&c));
        let dd = dual_cone(&d).unwrap();
        assert_eq!(dd.origin(), Representation::V);
        assert!(dd.set_eq(&c));
    }

    #[test]
    fn dual_of_two_dimensional_cone() {
        let c = PolyhedralSet::cone(2, vec![v(&[1, 0]), v(&[1, 2])]).unwrap();
        let d = dual_cone(&c).unwrap();
        let expected = PolyhedralSet::cone(2, vec![v(&[0, 1]), v(&[2, -1])]).unwrap();
        assert!(d.set_eq(&expected));
    }

    #[test]
    fn dual_of_single_ray_is_halfplane() {
        let c = PolyhedralSet::cone(2, vec![v(&[1, 0])]).unwrap();
        let d = dual_cone(&c).unwrap();
        assert_eq!(d.lineality().len(), 1);
        assert!(dual_cone(&d).unwrap().set_eq(&c));
    }

    #[test]
    fn dual_rejects_non_cones() {
        let p = PolyhedralSet::point(v(&[1, 0]));
        assert!(matches!(dual_cone(&p), Err(ConvexError::NotACone(_))));
        let h = PolyhedralSet::from_hrep(1, vec![HalfSpace::new(v(&[1]), qi(1))]).unwrap();
        assert!(matches!(dual_cone(&h), Err(ConvexError::NotACone(_))));
    }

    #[test]
    fn recession_cones() {
        let epi = PolyhedralSet::hcone(2, vec![v(&[-1, 1]), v(&[1, 1])]).unwrap();
        assert!(recession_cone(&epi).unwrap().set_eq(&epi));
        let tri = PolyhedralSet::from_vrep(2, vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])], vec![])
            .unwrap();
        let r = recession_cone(&tri).unwrap();
        assert!(r.set_eq(&PolyhedralSet::cone(2, vec![]).unwrap()));
        let strip = PolyhedralSet::from_hrep(
            2,
            vec![HalfSpace::new(v(&[1, 0]), z()), HalfSpace::new(v(&[-1, 0]), qi(-1))],
        )
        .unwrap();
        let lin = recession_cone(&strip).unwrap().lineality();
        assert_eq!(lin.len(), 1);
        assert_eq!(lin[0].normalized_direction().0, v(&[0, 1]).0);
    }

    #[test]
    fn finiteness_cones() {
        let p = PolyhedralSet::point(v(&[3, 4]));
        assert!(finiteness_cone(&p).unwrap().set_eq(&PolyhedralSet::whole_space(2)));
        let half = PolyhedralSet::from_vrep(2, vec![v(&[1, 1])], vec![v(&[1, 0])]).unwrap();
        let b = finiteness_cone(&half).unwrap();
        assert!(b.set_eq(&PolyhedralSet::hcone(2, vec![v(&[1, 0])]).unwrap()));
        let quad = PolyhedralSet::cone(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(finiteness_cone(&quad).unwrap().set_eq(&quad));
    }

    #[test]
    fn semi_equicontinuity() {
        assert!(is_semi_equicontinuous(&PolyhedralSet::point(v(&[0, 0]))).unwrap());
        let line = PolyhedralSet::cone(2, vec![v(&[1, 0]), v(&[-1, 0])]).unwrap();
        assert!(!is_semi_equicontinuous(&line).unwrap());
        let shifted =
            PolyhedralSet::from_vrep(2, vec![v(&[1, 1])], vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(is_semi_equicontinuous(&shifted).unwrap());
        let b = finiteness_cone(&shifted).unwrap();
        assert_eq!(b.classify(&v(&[1, 1])).unwrap(), Membership::Inside);
    }

    #[test]
    fn roundtrip_examples() {
        let origin = PolyhedralSet::point(v(&[0, 0]));
        let rt = duality_roundtrip(&origin).unwrap();
        assert!(rt.values.iter().all(|x| *x == z()));
        assert!(rt.reconstructed.set_eq(&origin));

        let seg = PolyhedralSet::from_vrep(2, vec![v(&[0, 0]), v(&[1, 0])], vec![]).unwrap();
        assert!(duality_roundtrip(&seg).unwrap().reconstructed.set_eq(&seg));

        let negq = PolyhedralSet::cone(2, vec![v(&[-1, 0]), v(&[0, -1])]).unwrap();
        let rt = duality_roundtrip(&negq).unwrap();
        assert!(rt.values.iter().all(|x| *x == z()));
        assert!(rt.omega.contains(&v(&[1, 1])));
        assert!(!rt.omega.contains(&v(&[1, 0])));

        let line = PolyhedralSet::cone(2, vec![v(&[1, 0]), v(&[-1, 0])]).unwrap();
        assert_eq!(duality_roundtrip(&line).unwrap_err(), ConvexError::NotSemiEquicontinuous);
    }

    #[test]
    fn enlarge_examples() {
        let quad_open =
            PolyhedralSet::from_hrep(2, vec![HalfSpace::strict(v(&[1, 0]), z()),
                                             HalfSpace::strict(v(&[0, 1]), z())])
                .unwrap();
        let e = enlarge_by_cone(&PolyhedralSet::point(v(&[0, 0])), &quad_open).unwrap();
        let negq = PolyhedralSet::cone(2, vec![v(&[-1, 0]), v(&[0, -1])]).unwrap();
        assert!(e.set_eq(&negq));

        let half = PolyhedralSet::from_hrep(2, vec![HalfSpace::strict(v(&[1, 0]), z())]).unwrap();
        let p = v(&[2, 3]);
        let e = enlarge_by_cone(&PolyhedralSet::point(p.clone()), &half).unwrap();
        let expected = PolyhedralSet::from_vrep(2, vec![p], vec![v(&[-1, 0])]).unwrap();
        assert!(e.set_eq(&expected));

        let ray = PolyhedralSet::from_vrep(2, vec![v(&[0, 0])], vec![v(&[1, 0])]).unwrap();
        assert!(matches!(
            enlarge_by_cone(&ray, &half),
            Err(ConvexError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn pointed_cones() {
        let seg = PolyhedralSet::from_vrep(2, vec![v(&[1, 0]), v(&[1, 1])], vec![]).unwrap();
        let c = pointed_cone_from_bounded(&seg).unwrap();
        assert!(c.set_eq(&PolyhedralSet::cone(2, vec![v(&[1, 0]), v(&[1, 1])]).unwrap()));
        let ball = PolyhedralSet::from_vrep(
            2,
            vec![v(&[1, 0]), v(&[3, 0]), v(&[2, 1]), v(&[2, -1])],
            vec![],
        )
        .unwrap();
        assert!(pointed_cone_from_bounded(&ball).unwrap().lineality().is_empty());
        let bad = PolyhedralSet::from_vrep(1, vec![v(&[-1]), v(&[1])], vec![]).unwrap();
        assert_eq!(pointed_cone_from_bounded(&bad).unwrap_err(), ConvexError::ZeroInClosure);
    }

    #[test]
    fn boundary_distances() {
        let u = PolyhedralSet::from_hrep(1, vec![HalfSpace::strict(v(&[1]), z())]).unwrap();
        assert_eq!(inverse_boundary_distance(&u, &v(&[2]), Norm::L2).unwrap(), 0.5);
        let sq = PolyhedralSet::from_hrep(
            2,
            vec![
                HalfSpace::strict(v(&[1, 0]), z()),
                HalfSpace::strict(v(&[0, 1]), z()),
                HalfSpace::strict(v(&[-1, 0]), qi(-1)),
                HalfSpace::strict(v(&[0, -1]), qi(-1)),
            ],
        )
        .unwrap();
        let center = Vector(vec![Q::new(1.into(), 2.into()), Q::new(1.into(), 2.into())]);
        for n in [Norm::L1, Norm::L2, Norm::LInf] {
            assert!((inverse_boundary_distance(&sq, &center, n).unwrap() - 2.0).abs() < 1e-12);
        }
        assert_eq!(
            inverse_boundary_distance(&sq, &v(&[2, 0]), Norm::L2).unwrap_err(),
            ConvexError::PointOutside
        );
    }
}
