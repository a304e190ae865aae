use crate::coxeter::ReflectionData;
use crate::scalar::Scalar;

/// Coxeter matrix entry recovered from `a_st · a_ts`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterEntry {
    Order(u32),
    Infinite,
    /// A product outside the crystallographic table.
    Unrecognized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteType {
    Finite,
    Infinite,
    Unknown,
}

fn entry_from_product(p: f64) -> CoxeterEntry {
    let table = [(0.0, 2), (1.0, 3), (2.0, 4), (3.0, 6)];
    for (v, m) in table {
        if (p - v).abs() < 1e-9 {
            return CoxeterEntry::Order(m);
        }
    }
    if p >= 4.0 - 1e-9 {
        CoxeterEntry::Infinite
    } else {
        CoxeterEntry::Unrecognized
    }
}

/// `m_st` for all pairs; the diagonal is `Order(1)`.
pub fn coxeter_matrix<T: Scalar>(data: &ReflectionData<T>) -> Vec<Vec<CoxeterEntry>> {
    let a = data.cartan();
    let n = data.rank();
    (0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    if s == t {
                        CoxeterEntry::Order(1)
                    } else {
                        entry_from_product((a[s][t].clone() * a[t][s].clone()).to_f64_lossy())
                    }
                })
                .collect()
        })
        .collect()
}

/// Is the parabolic subgroup generated by `subset` finite?
///
/// Decided per connected component of the Coxeter graph: rank one and two by
/// the entry itself, rank three by `Σ 1/m > 1`; larger components are `Unknown`.
pub fn is_finite_type<T: Scalar>(data: &ReflectionData<T>, subset: &[usize]) -> FiniteType {
    let m = coxeter_matrix(data);
    let mut seen = vec![false; subset.len()];
    let mut verdict = FiniteType::Finite;
    for start in 0..subset.len() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = subset[comp[i]];
            for (j, &b) in subset.iter().enumerate() {
                if !seen[j] && m[a][b] != CoxeterEntry::Order(2) {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            i += 1;
        }
        let members: Vec<usize> = comp.iter().map(|&c| subset[c]).collect();
        let entries: Vec<CoxeterEntry> = pairs(&members).map(|(a, b)| m[a][b]).collect();
        if entries.contains(&CoxeterEntry::Infinite) {
            return FiniteType::Infinite;
        }
        if entries.contains(&CoxeterEntry::Unrecognized) {
            verdict = FiniteType::Unknown;
            continue;
        }
        match members.len() {
            1 | 2 => {}
            3 => {
                let total: f64 = entries
                    .iter()
                    .map(|e| match e {
                        CoxeterEntry::Order(k) => 1.0 / f64::from(*k),
                        _ => unreachable!("handled above"),
                    })
                    .sum();
                if total <= 1.0 + 1e-12 {
                    return FiniteType::Infinite;
                }
            }
            _ => verdict = FiniteType::Unknown,
        }
    }
    verdict
}

fn pairs(xs: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    xs.iter()
        .enumerate()
        .flat_map(move |(i, &a)| xs[i + 1..].iter().map(move |&b| (a, b)))
}
