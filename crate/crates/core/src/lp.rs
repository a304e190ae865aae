//! Two-phase dense simplex with Bland's anti-cycling rule.
//!
//! Generic over [`Scalar`]; with `BigRational` every pivot is exact, so
//! feasibility and optimality verdicts are decisions rather than estimates.

use crate::linalg::Vector;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
struct Constraint<T> {
    coeffs: Vec<T>,
    relation: Relation,
    rhs: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

impl<T> LpOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// `maximize c·x` subject to linear constraints; variables are nonnegative
/// unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    num_vars: usize,
    free: Vec<bool>,
    constraints: Vec<Constraint<T>>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, free: vec![false; num_vars], constraints: Vec::new() }
    }

    /// All variables unrestricted in sign.
    pub fn new_free(num_vars: usize) -> Self {
        Self { num_vars, free: vec![true; num_vars], constraints: Vec::new() }
    }

    pub fn set_free(&mut self, var: usize, free: bool) -> &mut Self {
        self.free[var] = free;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn add(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width mismatch");
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn feasible(&self) -> Option<Vec<T>> {
        match self.maximize(&vec![T::zero(); self.num_vars]) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn minimize(&self, objective: &[T]) -> LpOutcome<T> {
        let neg: Vec<T> = objective.iter().map(|c| -c.clone()).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
            other => other,
        }
    }

    pub fn maximize(&self, objective: &[T]) -> LpOutcome<T> {
        assert_eq!(objective.len(), self.num_vars);
        // column layout: one column per nonnegative var, two per free var, then slacks
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.num_vars);
        let mut ncols = 0;
        for &f in &self.free {
            if f {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;
        let nslack = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        ncols += nslack;

        let mut rows: Vec<Vec<T>> = Vec::with_capacity(self.constraints.len());
        let mut rhs: Vec<T> = Vec::with_capacity(self.constraints.len());
        let mut slack = structural;
        for c in &self.constraints {
            let mut row = vec![T::zero(); ncols];
            for (j, a) in c.coeffs.iter().enumerate() {
                let (p, n) = col_of[j];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a.clone();
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = T::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -T::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut b = c.rhs.clone();
            if b.is_neg() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                b = -b;
            }
            rows.push(row);
            rhs.push(b);
        }

        let mut cost = vec![T::zero(); ncols];
        for (j, c) in objective.iter().enumerate() {
            let (p, n) = col_of[j];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c.clone();
            }
        }

        let solved = match Tableau::solve(rows, rhs, &cost) {
            TableauResult::Optimal(x, value) => (x, value),
            TableauResult::Infeasible => return LpOutcome::Infeasible,
            TableauResult::Unbounded => return LpOutcome::Unbounded,
        };
        let (xs, value) = solved;
        let x = col_of
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => xs[p].clone() - xs[n].clone(),
                None => xs[p].clone(),
            })
            .collect();
        LpOutcome::Optimal { x, value }
    }
}

enum TableauResult<T> {
    Optimal(Vec<T>, T),
    Infeasible,
    Unbounded,
}

/// Standard-form tableau: `A x = b`, `x >= 0`, `b >= 0`.
struct Tableau<T> {
    a: Vec<Vec<T>>,
    b: Vec<T>,
    /// reduced costs (negative entries improve the maximization)
    obj: Vec<T>,
    obj_value: T,
    basis: Vec<usize>,
}

impl<T: Scalar> Tableau<T> {
    fn solve(rows: Vec<Vec<T>>, rhs: Vec<T>, cost: &[T]) -> TableauResult<T> {
        let m = rows.len();
        let n = cost.len();
        if m == 0 {
            // no constraints: bounded only if no positive cost
            if cost.iter().any(Scalar::is_pos) {
                return TableauResult::Unbounded;
            }
            return TableauResult::Optimal(vec![T::zero(); n], T::zero());
        }
        // phase 1: artificials n..n+m
        let mut a: Vec<Vec<T>> = rows;
        for (i, row) in a.iter_mut().enumerate() {
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
        }
        let mut obj = vec![T::zero(); n + m];
        let mut obj_value = T::zero();
        for (i, row) in a.iter().enumerate() {
            for j in 0..n {
                obj[j] = obj[j].clone() - row[j].clone();
            }
            obj_value = obj_value - rhs[i].clone();
        }
        let mut t = Tableau { a, b: rhs, obj, obj_value, basis: (n..n + m).collect() };
        if !t.run(n + m) {
            unreachable!("phase one objective is bounded");
        }
        if t.obj_value.is_neg() {
            return TableauResult::Infeasible;
        }
        // drive artificials out of the basis; drop redundant rows
        let mut i = 0;
        while i < t.basis.len() {
            if t.basis[i] >= n {
                match (0..n).find(|&j| !t.a[i][j].approx_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.a.remove(i);
                        t.b.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for row in t.a.iter_mut() {
            row.truncate(n);
        }
        // phase 2
        t.obj = cost.iter().map(|c| -c.clone()).collect();
        t.obj_value = T::zero();
        for i in 0..t.basis.len() {
            let j = t.basis[i];
            let f = t.obj[j].clone();
            if !f.is_zero() {
                for k in 0..n {
                    t.obj[k] = t.obj[k].clone() - f.clone() * t.a[i][k].clone();
                }
                t.obj_value = t.obj_value.clone() - f * t.b[i].clone();
            }
        }
        if !t.run(n) {
            return TableauResult::Unbounded;
        }
        let mut x = vec![T::zero(); n];
        for (i, &j) in t.basis.iter().enumerate() {
            x[j] = t.b[i].clone();
        }
        TableauResult::Optimal(x, t.obj_value.clone())
    }

    /// Runs simplex iterations over the first `ncols` columns; false on unboundedness.
    fn run(&mut self, ncols: usize) -> bool {
        loop {
            // Bland: lowest-index improving column
            let Some(enter) = (0..ncols).find(|&j| self.obj[j].is_neg()) else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.a.len() {
                let aij = &self.a[i][enter];
                if aij.is_pos() {
                    let ratio = self.b[i].clone() / aij.clone();
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr
                                || (ratio.approx_eq(&lr) && self.basis[i] < self.basis[li])
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.a[row].len();
        let inv = T::one() / self.a[row][col].clone();
        for x in self.a[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.b[row] = self.b[row].clone() * inv;
        for i in 0..self.a.len() {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for k in 0..width {
                let delta = f.clone() * self.a[row][k].clone();
                self.a[i][k] = self.a[i][k].clone() - delta;
            }
            self.b[i] = self.b[i].clone() - f * self.b[row].clone();
            if !T::is_exact() {
                self.a[i][col] = T::zero();
            }
        }
        let f = self.obj[col].clone();
        if !f.is_zero() {
            for k in 0..self.obj.len().min(width) {
                self.obj[k] = self.obj[k].clone() - f.clone() * self.a[row][k].clone();
            }
            self.obj_value = self.obj_value.clone() - f * self.b[row].clone();
        }
        self.basis[row] = col;
    }
}

/// Is there `x` with `a_i·x >= b_i` for all rows and `a_i·x > b_i` on rows flagged strict?
///
/// Strict rows are handled by maximizing a shared slack `s <= 1`.
pub fn strictly_feasible<T: Scalar>(rows: &[(Vector<T>, T, bool)], dim: usize) -> Option<Vector<T>> {
    let mut lp = LinearProgram::new_free(dim + 1);
    for (a, b, strict) in rows {
        let mut coeffs = a.0.clone();
        coeffs.push(if *strict { -T::one() } else { T::zero() });
        lp.add(coeffs, Relation::Ge, b.clone());
    }
    let mut cap = vec![T::zero(); dim + 1];
    cap[dim] = T::one();
    lp.add(cap.clone(), Relation::Le, T::one());
    match lp.maximize(&cap) {
        LpOutcome::Optimal { x, value } => {
            let any_strict = rows.iter().any(|r| r.2);
            if !any_strict || value.is_pos() {
                Some(Vector(x[..dim].to_vec()))
            } else {
                None
            }
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("slack is capped"),
    }
}

/// Is `target` in `conv(points) + cone(rays)`? Returns the certificate weights.
pub fn in_hull<T: Scalar>(
    points: &[Vector<T>],
    rays: &[Vector<T>],
    target: &Vector<T>,
) -> Option<(Vec<T>, Vec<T>)> {
    let n = target.dim();
    let np = points.len();
    let nr = rays.len();
    if np == 0 {
        return None;
    }
    let mut lp = LinearProgram::new(np + nr);
    for i in 0..n {
        let coeffs: Vec<T> = points
            .iter()
            .chain(rays.iter())
            .map(|g| g[i].clone())
            .collect();
        lp.add(coeffs, Relation::Eq, target[i].clone());
    }
    let mut ones = vec![T::one(); np];
    ones.extend(std::iter::repeat_n(T::zero(), nr));
    lp.add(ones, Relation::Eq, T::one());
    lp.feasible().map(|x| {
        let (p, r) = x.split_at(np);
        (p.to_vec(), r.to_vec())
    })
}

/// Is `target` in `cone(rays)`?
pub fn in_cone<T: Scalar>(rays: &[Vector<T>], target: &Vector<T>) -> bool {
    if rays.is_empty() {
        return target.is_zero();
    }
    let n = target.dim();
    let mut lp = LinearProgram::new(rays.len());
    for i in 0..n {
        lp.add(rays.iter().map(|g| g[i].clone()).collect(), Relation::Eq, target[i].clone());
    }
    lp.feasible().is_some()
}

/// Is `target = Σ λ_i g_i` with every `λ_i > 0`? This is membership in the
/// relative interior of `cone(gens)`.
pub fn in_cone_relative_interior<T: Scalar>(gens: &[Vector<T>], target: &Vector<T>) -> bool {
    if gens.is_empty() {
        return target.is_zero();
    }
    let n = target.dim();
    let k = gens.len();
    // variables: λ_1..λ_k (>= 0), t (>= 0); λ_i - t >= 0, t <= 1, maximize t
    let mut lp = LinearProgram::new(k + 1);
    for i in 0..n {
        let mut coeffs: Vec<T> = gens.iter().map(|g| g[i].clone()).collect();
        coeffs.push(T::zero());
        lp.add(coeffs, Relation::Eq, target[i].clone());
    }
    for j in 0..k {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[j] = T::one();
        coeffs[k] = -T::one();
        lp.add(coeffs, Relation::Ge, T::zero());
    }
    let mut t = vec![T::zero(); k + 1];
    t[k] = T::one();
    lp.add(t.clone(), Relation::Le, T::one());
    matches!(lp.maximize(&t), LpOutcome::Optimal { value, .. } if value.is_pos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
        let mut lp = LinearProgram::new(2);
        lp.add(vec![q(1), q(0)], Relation::Le, q(4));
        lp.add(vec![q(0), q(2)], Relation::Le, q(12));
        lp.add(vec![q(3), q(2)], Relation::Le, q(18));
        match lp.maximize(&[q(3), q(5)]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(36));
                assert_eq!(x, vec![q(2), q(6)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![q(1)], Relation::Ge, q(2));
        lp.add(vec![q(1)], Relation::Le, q(1));
        assert_eq!(lp.maximize(&[q(1)]), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new_free(2);
        lp.add(vec![q(1), q(-1)], Relation::Le, q(0));
        assert_eq!(lp.maximize(&[q(1), q(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_reach_negative_optimum() {
        let mut lp = LinearProgram::new_free(1);
        lp.add(vec![q(1)], Relation::Ge, qr(-7, 3));
        match lp.minimize(&[q(1)]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, qr(-7, 3));
                assert_eq!(x[0], qr(-7, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates_under_bland() {
        // Beale's classic cycling example (cycles under the largest-coefficient rule)
        let mut lp = LinearProgram::new(4);
        lp.add(vec![qr(1, 4), q(-60), qr(-1, 25), q(9)], Relation::Le, q(0));
        lp.add(vec![qr(1, 2), q(-90), qr(-1, 50), q(3)], Relation::Le, q(0));
        lp.add(vec![q(0), q(0), q(1), q(0)], Relation::Le, q(1));
        match lp.maximize(&[qr(3, 4), q(-150), qr(1, 50), q(-6)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, qr(1, 20)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.add(vec![q(1), q(1)], Relation::Eq, q(1));
        lp.add(vec![q(2), q(2)], Relation::Eq, q(2));
        match lp.maximize(&[q(1), q(0)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_feasibility() {
        let rows = vec![(Vector(vec![q(1)]), q(0), true), (Vector(vec![q(-1)]), q(0), false)];
        assert!(strictly_feasible(&rows, 1).is_none());
        let rows = vec![(Vector(vec![q(1)]), q(0), true)];
        assert!(strictly_feasible(&rows, 1).is_some());
    }

    #[test]
    fn hull_and_relative_interior() {
        let pts = vec![Vector(vec![q(0), q(0)]), Vector(vec![q(2), q(0)])];
        assert!(in_hull(&pts, &[], &Vector(vec![q(1), q(0)])).is_some());
        assert!(in_hull(&pts, &[], &Vector(vec![q(1), q(1)])).is_none());
        let gens = vec![Vector(vec![q(1), q(0)]), Vector(vec![q(0), q(1)])];
        assert!(in_cone_relative_interior(&gens, &Vector(vec![q(1), q(1)])));
        assert!(!in_cone_relative_interior(&gens, &Vector(vec![q(1), q(0)])));
        assert!(in_cone(&gens, &Vector(vec![q(1), q(0)])));
    }

    #[test]
    fn float_lp_agrees_on_simple_problem() {
        let mut lp = LinearProgram::<f64>::new(2);
        lp.add(vec![1.0, 1.0], Relation::Le, 1.0);
        match lp.maximize(&[1.0, 2.0]) {
            LpOutcome::Optimal { value, .. } => assert!((value - 2.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }
}
