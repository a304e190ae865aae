use crate::coxeter::LinearCoxeterSystem;
use crate::linalg::Vector;
use crate::lp;
use crate::scalar::Scalar;

/// A root `α = w α_s` together with its coroot `w α_s^∨`.
#[derive(Clone, Debug, PartialEq)]
pub struct Root<T> {
    pub alpha: Vector<T>,
    pub coroot: Vector<T>,
    pub positive: bool,
    /// Length of the word that first produced the root.
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct RootSet<T> {
    pub roots: Vec<Root<T>>,
}

impl<T: Scalar> RootSet<T> {
    pub fn positive(&self) -> impl Iterator<Item = &Root<T>> {
        self.roots.iter().filter(|r| r.positive)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

impl<T: Scalar> LinearCoxeterSystem<T> {
    /// `r_s` acting on functionals: `α ∘ r_s = α - α(α_s^∨) α_s`.
    pub fn reflect_functional(&self, s: usize, alpha: &Vector<T>) -> Vector<T> {
        let c = alpha.dot(&self.data.coroots[s]);
        alpha.axpy(&(-c), &self.data.alphas[s])
    }

    /// Breadth-first images of the simple roots under words of length `<= length_bound`.
    ///
    /// A root is positive iff it is nonnegative on the chamber, i.e. lies in
    /// `cone{α_s}`; every root found must be positive or negative.
    pub fn enumerate_roots(&self, length_bound: usize) -> RootSet<T> {
        let simple = &self.data.alphas;
        let mut roots: Vec<Root<T>> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();
        for s in 0..self.rank() {
            roots.push(Root {
                alpha: simple[s].clone(),
                coroot: self.data.coroots[s].clone(),
                positive: true,
                depth: 0,
            });
            frontier.push(s);
        }
        for depth in 1..=length_bound {
            let mut next = Vec::new();
            for &i in &frontier {
                for s in 0..self.rank() {
                    let alpha = self.reflect_functional(s, &roots[i].alpha);
                    if roots.iter().any(|r| r.alpha.approx_eq(&alpha)) {
                        continue;
                    }
                    let coroot = self.reflect(s, &roots[i].coroot);
                    let positive = lp::in_cone(simple, &alpha);
                    assert!(
                        positive || lp::in_cone(simple, &-&alpha),
                        "every root is positive or negative"
                    );
                    roots.push(Root { alpha, coroot, positive, depth });
                    next.push(roots.len() - 1);
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        RootSet { roots }
    }
}
