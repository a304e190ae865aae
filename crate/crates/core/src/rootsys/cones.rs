use crate::convexcore::PolyhedralSet;
use crate::linalg::Vector;
use crate::rootsys::{RootDecomposition, RootSysError};
use crate::scalar::rationalize;
use crate::Rational;

/// Denominator used to read floating Cartan data as exact rationals.
const DENOMINATOR: i64 = 720_720;

fn exact(v: &[f64]) -> Vector<Rational> {
    Vector(v.iter().map(|&x| rationalize(x, DENOMINATOR)).collect())
}

#[derive(Clone, Debug)]
pub struct SandwichCones {
    /// `cone{i[x_α, x_α*]}` over the positive system.
    pub c_min: PolyhedralSet<Rational>,
    /// `{h : -λ_α(h) >= 0}` over the positive system.
    pub c_max: PolyhedralSet<Rational>,
}

/// `C_min ⊆ C_max` for a positive system of noncompact roots, checked exactly.
pub fn cmin_cmax(
    decomp: &RootDecomposition,
    positive_system: &[usize],
) -> Result<SandwichCones, RootSysError> {
    let noncompact = decomp.noncompact_roots();
    for &i in positive_system {
        if !noncompact.contains(&i) {
            return Err(RootSysError::NotAPositiveSystem(format!("root {i} is not noncompact")));
        }
        if positive_system.contains(&decomp.roots[i].negative) {
            return Err(RootSysError::NotAPositiveSystem(format!(
                "root {i} and its negative both chosen"
            )));
        }
    }
    for &i in &noncompact {
        if !positive_system.contains(&i) && !positive_system.contains(&decomp.roots[i].negative) {
            return Err(RootSysError::NotAPositiveSystem(format!("neither ±root {i} chosen")));
        }
    }
    let r = decomp.rank();
    let gens: Vec<Vector<Rational>> =
        positive_system.iter().map(|&i| exact(&decomp.roots[i].bracket_t)).collect();
    let normals: Vec<Vector<Rational>> = positive_system
        .iter()
        .map(|&i| exact(&decomp.roots[i].lambda.iter().map(|x| -x).collect::<Vec<_>>()))
        .collect();
    let c_min = PolyhedralSet::cone(r, gens).expect("dimensions agree");
    let c_max = PolyhedralSet::hcone(r, normals)
        .map_err(|e| RootSysError::NotAPositiveSystem(e.to_string()))?;
    if !c_min.is_subset_of(&c_max) {
        return Err(RootSysError::SandwichViolated);
    }
    Ok(SandwichCones { c_min, c_max })
}

/// All choices of one root from each `±α` noncompact pair that are invariant
/// under the reflections in compact roots.
pub fn find_positive_systems(decomp: &RootDecomposition) -> Vec<Vec<usize>> {
    let noncompact = decomp.noncompact_roots();
    let pairs: Vec<usize> =
        noncompact.iter().copied().filter(|&i| i < decomp.roots[i].negative).collect();
    let compact = decomp.compact_roots();
    let mut out = Vec::new();
    assert!(pairs.len() < 24, "sign search is exponential in the number of root pairs");
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<usize> = pairs
            .iter()
            .enumerate()
            .map(|(b, &i)| if mask >> b & 1 == 1 { decomp.roots[i].negative } else { i })
            .collect();
        let invariant = compact.iter().all(|&beta| {
            chosen.iter().all(|&a| {
                let image = decomp.reflect_functional(beta, &decomp.roots[a].lambda);
                decomp.find_root(&image).is_some_and(|j| chosen.contains(&j))
            })
        });
        if invariant {
            let mut c = chosen;
            c.sort_unstable();
            out.push(c);
        }
    }
    out
}
