//! Seeded random inputs. Item `i` of a corpus is drawn from stream `i`, so a
//! corpus is the same whatever the worker count.

use orbitcone::convexcore::{is_semi_equicontinuous, PolyhedralSet};
use orbitcone::numeric::rng_for;
use orbitcone::{q, PolyhedralSetQ, Rational, RationalVector, Vector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `n/d` with `|n| <= num` and `1 <= d <= den`.
pub fn rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    q(rng.random_range(-num..=num), rng.random_range(1..=den))
}

pub fn positive_rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    q(rng.random_range(1..=num), rng.random_range(1..=den))
}

pub fn rational_vector(rng: &mut impl Rng, dim: usize, num: i64, den: i64) -> RationalVector {
    Vector((0..dim).map(|_| rational(rng, num, den)).collect())
}

/// Stream `i` of a corpus tagged `tag`.
pub fn stream(seed: u64, tag: u64, i: u64) -> ChaCha8Rng {
    rng_for(seed, (tag << 40) | i)
}

/// Random semi-equicontinuous polyhedron in `Q³` with at most 6 points and 3 rays.
pub fn semi_equicontinuous(seed: u64, i: u64) -> PolyhedralSetQ {
    let mut rng = stream(seed, 1, i);
    loop {
        let points = (0..rng.random_range(1..=6)).map(|_| rational_vector(&mut rng, 3, 4, 3)).collect();
        let rays: Vec<RationalVector> = (0..rng.random_range(0..=3))
            .map(|_| rational_vector(&mut rng, 3, 3, 2))
            .filter(|r| !r.is_zero())
            .collect();
        let c = PolyhedralSet::from_vrep(3, points, rays).expect("dimension 3");
        if is_semi_equicontinuous(&c).expect("nonempty") {
            return c;
        }
    }
}

/// Random point of the simplex with positive rational weights.
pub fn convex_weights(rng: &mut impl Rng, k: usize) -> Vec<Rational> {
    let w: Vec<Rational> = (0..k).map(|_| positive_rational(rng, 5, 1)).collect();
    let total = w.iter().fold(q(0, 1), |a, b| a + b);
    w.into_iter().map(|x| x / &total).collect()
}

pub fn convex_combination(points: &[&RationalVector], weights: &[Rational]) -> RationalVector {
    let dim = points[0].dim();
    points.iter().zip(weights).fold(Vector::zeros(dim), |acc, (p, w)| acc.axpy(w, p))
}

pub fn random_f64_vector(rng: &mut impl Rng, dim: usize, radius: f64) -> Vec<f64> {
    orbitcone::numeric::random_in_ball(dim, radius, rng).iter().copied().collect()
}
