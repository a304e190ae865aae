use std::fmt;
use std::sync::OnceLock;

use crate::convexcore::dd::{cone_generators, ConeGenerators};
use crate::convexcore::ConvexError;
use crate::linalg::{nullspace, Vector};
use crate::lp;
use crate::scalar::Scalar;

/// `{v : ⟨normal, v⟩ >= offset}`, or `>` when `strict`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace<T> {
    pub normal: Vector<T>,
    pub offset: T,
    pub strict: bool,
}

impl<T: Scalar> HalfSpace<T> {
    pub fn new(normal: Vector<T>, offset: T) -> Self {
        Self { normal, offset, strict: false }
    }

    pub fn strict(normal: Vector<T>, offset: T) -> Self {
        Self { normal, offset, strict: true }
    }

    /// `⟨normal, v⟩ - offset`
    pub fn slack(&self, v: &Vector<T>) -> T {
        self.normal.dot(v) - self.offset.clone()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.offset.approx_zero()
    }
}

/// `conv(points) + cone(rays)`
#[derive(Clone, Debug, PartialEq)]
pub struct VRep<T> {
    pub points: Vec<Vector<T>>,
    pub rays: Vec<Vector<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    H,
    V,
}

/// A polyhedral convex set held in H- and/or V-representation.
///
/// Whichever representation is missing is computed on first use and cached.
/// Strict half spaces describe open sets; the V-representation always
/// describes the closure.
#[derive(Clone)]
pub struct PolyhedralSet<T> {
    dim: usize,
    origin: Representation,
    hrep: OnceLock<Vec<HalfSpace<T>>>,
    vrep: OnceLock<VRep<T>>,
}

impl<T: Scalar> fmt::Debug for PolyhedralSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolyhedralSet")
            .field("dim", &self.dim)
            .field("origin", &self.origin)
            .field("hrep", &self.hrep.get())
            .field("vrep", &self.vrep.get())
            .finish()
    }
}

fn check_dim<T: Scalar>(dim: usize, v: &Vector<T>) -> Result<(), ConvexError> {
    if v.dim() != dim {
        return Err(ConvexError::DimensionMismatch { expected: dim, found: v.dim() });
    }
    Ok(())
}

impl<T: Scalar> PolyhedralSet<T> {
    pub fn from_hrep(dim: usize, halfspaces: Vec<HalfSpace<T>>) -> Result<Self, ConvexError> {
        if dim == 0 {
            return Err(ConvexError::ZeroDimension);
        }
        for h in &halfspaces {
            check_dim(dim, &h.normal)?;
            if h.normal.is_zero() {
                return Err(ConvexError::ZeroNormal);
            }
        }
        let hrep = OnceLock::new();
        let _ = hrep.set(halfspaces);
        Ok(Self { dim, origin: Representation::H, hrep, vrep: OnceLock::new() })
    }

    pub fn from_vrep(
        dim: usize,
        points: Vec<Vector<T>>,
        rays: Vec<Vector<T>>,
    ) -> Result<Self, ConvexError> {
        if dim == 0 {
            return Err(ConvexError::ZeroDimension);
        }
        if points.is_empty() {
            return Err(ConvexError::EmptyVRep);
        }
        for v in points.iter().chain(&rays) {
            check_dim(dim, v)?;
        }
        let rays = rays.into_iter().filter(|r| !r.is_zero()).collect();
        let vrep = OnceLock::new();
        let _ = vrep.set(VRep { points, rays });
        Ok(Self { dim, origin: Representation::V, hrep: OnceLock::new(), vrep })
    }

    /// `cone(rays)` with apex at the origin.
    pub fn cone(dim: usize, rays: Vec<Vector<T>>) -> Result<Self, ConvexError> {
        Self::from_vrep(dim, vec![Vector::zeros(dim)], rays)
    }

    /// Homogeneous H-representation `{v : ⟨n_i, v⟩ >= 0}`.
    pub fn hcone(dim: usize, normals: Vec<Vector<T>>) -> Result<Self, ConvexError> {
        Self::from_hrep(dim, normals.into_iter().map(|n| HalfSpace::new(n, T::zero())).collect())
    }

    pub fn whole_space(dim: usize) -> Self {
        Self::from_hrep(dim, Vec::new()).expect("valid dimension")
    }

    pub fn point(p: Vector<T>) -> Self {
        let dim = p.dim();
        Self::from_vrep(dim, vec![p], Vec::new()).expect("valid point")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Representation the set was constructed from.
    pub fn origin(&self) -> Representation {
        self.origin
    }

    pub fn hrep(&self) -> &[HalfSpace<T>] {
        self.hrep.get_or_init(|| {
            let v = self.vrep.get().expect("one representation is always present");
            vrep_to_hrep(self.dim, v)
        })
    }

    pub fn vrep(&self) -> &VRep<T> {
        self.vrep.get_or_init(|| {
            let h = self.hrep.get().expect("one representation is always present");
            hrep_to_vrep(self.dim, h)
        })
    }

    pub fn is_empty(&self) -> bool {
        self.vrep().points.is_empty()
    }

    /// True when the set is a cone with apex at the origin.
    pub fn is_cone(&self) -> bool {
        match self.origin {
            Representation::H => self.hrep().iter().all(HalfSpace::is_homogeneous),
            Representation::V => self.vrep().points.iter().all(Vector::is_zero),
        }
    }

    pub fn has_strict(&self) -> bool {
        self.hrep.get().is_some_and(|h| h.iter().any(|x| x.strict))
    }

    /// Classification against the closure; `Boundary` means some half space is tight.
    pub fn classify(&self, v: &Vector<T>) -> Result<Membership, ConvexError> {
        check_dim(self.dim, v)?;
        if self.is_empty() {
            return Ok(Membership::Outside);
        }
        let mut tight = false;
        for h in self.hrep() {
            let s = h.slack(v);
            if s.is_neg() {
                return Ok(Membership::Outside);
            }
            if s.approx_zero() {
                tight = true;
            }
        }
        Ok(if tight { Membership::Boundary } else { Membership::Inside })
    }

    pub fn contains_closure(&self, v: &Vector<T>) -> bool {
        matches!(self.classify(v), Ok(Membership::Inside | Membership::Boundary))
    }

    /// Is `v` in the set itself, honouring strict half spaces?
    pub fn contains(&self, v: &Vector<T>) -> bool {
        v.dim() == self.dim
            && !self.is_empty()
            && self.hrep().iter().all(|h| {
                let s = h.slack(v);
                if h.strict {
                    s.is_pos()
                } else {
                    !s.is_neg()
                }
            })
    }

    /// Exact LP membership in `conv(points) + cone(rays)` using only the V-representation.
    pub fn contains_lp(&self, v: &Vector<T>) -> bool {
        let vr = self.vrep();
        lp::in_hull(&vr.points, &vr.rays, v).is_some()
    }

    /// Is the direction `r` in the recession cone of the closure?
    pub fn recedes_along(&self, r: &Vector<T>) -> bool {
        self.hrep().iter().all(|h| !h.normal.dot(r).is_neg())
    }

    /// Basis of the lineality space `lim(C) ∩ -lim(C)`.
    pub fn lineality(&self) -> Vec<Vector<T>> {
        if self.is_empty() {
            return Vec::new();
        }
        let normals: Vec<Vector<T>> = self.hrep().iter().map(|h| h.normal.clone()).collect();
        nullspace(&normals, self.dim)
    }

    /// Closure of `self` contained in closure of `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let v = self.vrep();
        v.points.iter().all(|p| other.contains_closure(p))
            && v.rays.iter().all(|r| other.recedes_along(r))
    }

    /// Equality of closures by mutual containment of generators.
    pub fn set_eq(&self, other: &Self) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Intersection via concatenated H-representations.
    pub fn intersect(&self, other: &Self) -> Result<Self, ConvexError> {
        if self.dim != other.dim {
            return Err(ConvexError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut hs = self.hrep().to_vec();
        hs.extend(other.hrep().iter().cloned());
        Self::from_hrep(self.dim, hs)
    }

    /// Image under an invertible linear map `x -> M x`, given `M^{-1}` transposed
    /// action on normals and `M` on generators.
    pub fn map_generators(&self, f: impl Fn(&Vector<T>) -> Vector<T>) -> Result<Self, ConvexError> {
        let v = self.vrep();
        Self::from_vrep(
            self.dim,
            v.points.iter().map(&f).collect(),
            v.rays.iter().map(&f).collect(),
        )
    }

    /// Drops half spaces implied by the others (exact LP per row).
    pub fn minimized_hrep(&self) -> Vec<HalfSpace<T>> {
        let mut rows: Vec<HalfSpace<T>> = self.hrep().to_vec();
        let mut i = 0;
        while i < rows.len() {
            let others: Vec<&HalfSpace<T>> =
                rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h).collect();
            let mut prog = lp::LinearProgram::new_free(self.dim);
            for h in &others {
                prog.add(h.normal.0.clone(), lp::Relation::Ge, h.offset.clone());
            }
            let redundant = match prog.minimize(&rows[i].normal.0) {
                lp::LpOutcome::Optimal { value, .. } => value >= rows[i].offset,
                lp::LpOutcome::Infeasible => true,
                lp::LpOutcome::Unbounded => false,
            };
            if redundant && !rows[i].strict {
                rows.remove(i);
            } else {
                i += 1;
            }
        }
        rows
    }
}

/// H -> V by homogenizing `{x : a·x >= b}` to `{(x, s) : a·x - b s >= 0, s >= 0}`.
pub(crate) fn hrep_to_vrep<T: Scalar>(dim: usize, hs: &[HalfSpace<T>]) -> VRep<T> {
    let mut ineqs: Vec<Vector<T>> = hs
        .iter()
        .map(|h| {
            let mut row = h.normal.0.clone();
            row.push(-h.offset.clone());
            Vector(row)
        })
        .collect();
    let mut s = vec![T::zero(); dim + 1];
    s[dim] = T::one();
    ineqs.push(Vector(s));
    let gens = cone_generators(dim + 1, &ineqs, &[]);
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for g in &gens.rays {
        let last = g[dim].clone();
        let head = Vector(g.0[..dim].to_vec());
        if last.is_pos() {
            points.push(head.scale(&(T::one() / last)));
        } else {
            rays.push(head);
        }
    }
    for l in &gens.lineality {
        let head = Vector(l.0[..dim].to_vec());
        rays.push(-&head);
        rays.push(head);
    }
    if points.is_empty() {
        rays.clear();
    }
    VRep { points, rays }
}

/// V -> H through the generators of the dual of the homogenized cone.
pub(crate) fn vrep_to_hrep<T: Scalar>(dim: usize, v: &VRep<T>) -> Vec<HalfSpace<T>> {
    let lift = |x: &Vector<T>, last: T| {
        let mut row = x.0.clone();
        row.push(last);
        Vector(row)
    };
    let ineqs: Vec<Vector<T>> = v
        .points
        .iter()
        .map(|p| lift(p, T::one()))
        .chain(v.rays.iter().map(|r| lift(r, T::zero())))
        .collect();
    let dual: ConeGenerators<T> = cone_generators(dim + 1, &ineqs, &[]);
    let mut out = Vec::new();
    let mut push = |g: &Vector<T>| {
        let normal = Vector(g.0[..dim].to_vec());
        if normal.is_zero() {
            return;
        }
        out.push(HalfSpace::new(normal, -g[dim].clone()));
    };
    for g in &dual.rays {
        push(g);
    }
    for l in &dual.lineality {
        push(l);
        push(&-l);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    type Q = BigRational;

    fn v(c: &[i64]) -> Vector<Q> {
        Vector::from_i64(c)
    }

    fn quadrant() -> PolyhedralSet<Q> {
        PolyhedralSet::cone(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap()
    }

    #[test]
    fn quadrant_membership() {
        let c = quadrant();
        assert_eq!(c.classify(&v(&[1, 1])).unwrap(), Membership::Inside);
        assert_eq!(c.classify(&v(&[0, 1])).unwrap(), Membership::Boundary);
        assert_eq!(c.classify(&v(&[-1, 1])).unwrap(), Membership::Outside);
        assert!(matches!(
            c.classify(&v(&[1, 1, 1])),
            Err(ConvexError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn triangle_round_trips_between_representations() {
        let t = PolyhedralSet::from_vrep(2, vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])], vec![])
            .unwrap();
        assert_eq!(t.hrep().len(), 3);
        let h = PolyhedralSet::from_hrep(2, t.hrep().to_vec()).unwrap();
        assert_eq!(h.vrep().points.len(), 3);
        assert!(h.vrep().rays.is_empty());
        assert!(h.set_eq(&t));
    }

    #[test]
    fn strip_has_lineality() {
        let strip = PolyhedralSet::from_hrep(
            2,
            vec![HalfSpace::new(v(&[1, 0]), Q::from_integer(0.into())),
                 HalfSpace::new(v(&[-1, 0]), Q::from_integer((-1).into()))],
        )
        .unwrap();
        let lin = strip.lineality();
        assert_eq!(lin.len(), 1);
        assert!(lin[0][0] == Q::from_integer(0.into()));
        // points found on the two boundary lines, e2 as a two-sided ray
        assert!(strip.contains_lp(&v(&[1, 17])));
        assert!(!strip.contains_lp(&v(&[2, 0])));
    }

    #[test]
    fn infeasible_hrep_is_empty() {
        let e = PolyhedralSet::from_hrep(
            1,
            vec![HalfSpace::new(v(&[1]), Q::from_integer(1.into())),
                 HalfSpace::new(v(&[-1]), Q::from_integer(0.into()))],
        )
        .unwrap();
        assert!(e.is_empty());
        assert_eq!(e.classify(&v(&[0])).unwrap(), Membership::Outside);
    }

    #[test]
    fn redundant_rows_are_removed() {
        let s = PolyhedralSet::from_hrep(
            1,
            vec![HalfSpace::new(v(&[1]), Q::from_integer(0.into())),
                 HalfSpace::new(v(&[1]), Q::from_integer((-3).into()))],
        )
        .unwrap();
        assert_eq!(s.minimized_hrep().len(), 1);
    }

    #[test]
    fn float_polytope_conversion() {
        let t = PolyhedralSet::<f64>::from_vrep(
            2,
            vec![Vector(vec![0.0, 0.0]), Vector(vec![2.0, 0.0]), Vector(vec![0.0, 2.0])],
            vec![],
        )
        .unwrap();
        assert_eq!(t.hrep().len(), 3);
        assert!(t.contains(&Vector(vec![0.5, 0.5])));
        assert!(!t.contains(&Vector(vec![1.5, 1.5])));
    }
}
