use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exact::{sparse, Echelon};
use super::{Projection, StructureConstantAlgebra};
use crate::error::Result;

/// `pAp`, either on a sub-basis of morphisms (when `p` is a sum of
/// identities) or as a bare subspace.
#[derive(Clone, Debug)]
pub enum Corner {
    Basis {
        algebra: StructureConstantAlgebra,
        /// Corner basis element → basis element of the ambient algebra.
        inclusion: Vec<usize>,
    },
    /// Fallback for other projections: a basis of `span{p·a·p}` in ambient
    /// coordinates. No product table is attached.
    Subspace { basis: Vec<Vec<BigRational>> },
}

impl Corner {
    pub fn dim(&self) -> usize {
        match self {
            Corner::Basis { algebra, .. } => algebra.dim(),
            Corner::Subspace { basis } => basis.len(),
        }
    }

    pub fn is_fallback(&self) -> bool {
        matches!(self, Corner::Subspace { .. })
    }

    pub fn algebra(&self) -> Option<&StructureConstantAlgebra> {
        match self {
            Corner::Basis { algebra, .. } => Some(algebra),
            Corner::Subspace { .. } => None,
        }
    }
}

/// Basis elements of the unit that `p` sums, if it is such a sum.
fn identity_support(a: &StructureConstantAlgebra, p: &Projection) -> Option<Vec<usize>> {
    let mut support = Vec::new();
    for (i, c) in p.coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_one() || !a.unit_support().contains(&i) {
            return None;
        }
        support.push(i);
    }
    Some(support)
}

pub fn corner_algebra(a: &StructureConstantAlgebra, p: &Projection) -> Result<Corner> {
    if let Some(support) = identity_support(a, p) {
        // b survives iff e·b = b = b·e' for some e, e' in the support
        let kept: Vec<usize> = (0..a.dim())
            .filter(|&b| {
                support.iter().any(|&e| a.product(e, b) == Some(b)) && support.iter().any(|&e| a.product(b, e) == Some(b))
            })
            .collect();
        let pos = |b: usize| kept.iter().position(|&k| k == b);
        let product = kept
            .iter()
            .map(|&x| kept.iter().map(|&y| a.product(x, y).map(|c| pos(c).expect("corner is closed"))).collect())
            .collect();
        let star = kept.iter().map(|&x| pos(a.star(x)).expect("corner is star-closed")).collect();
        let unit = support.iter().map(|&e| pos(e).expect("identity survives")).collect();
        let algebra = StructureConstantAlgebra::from_table(kept.iter().map(|&b| a.basis()[b].clone()).collect(), product, star, unit)?;
        return Ok(Corner::Basis { algebra, inclusion: kept });
    }
    let mut span = Echelon::new();
    let pc = p.coefficients();
    for b in 0..a.dim() {
        let v = a.multiply(&a.multiply(pc, &a.basis_vector(b)), pc);
        span.insert(sparse(&v));
    }
    Ok(Corner::Subspace { basis: span.basis(a.dim()) })
}

/// Whether `ApA = A`, by the exact rank of `{a·p·b}`.
pub fn is_full_projection(a: &StructureConstantAlgebra, p: &Projection) -> bool {
    let n = a.dim();
    let pc = p.coefficients();
    let support: Vec<(usize, &BigRational)> = pc.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let mut span = Echelon::new();
    for x in 0..n {
        // x·p as a sparse combination
        let mut xp = std::collections::BTreeMap::new();
        for &(k, c) in &support {
            if let Some(m) = a.product(x, k) {
                *xp.entry(m).or_insert_with(BigRational::zero) += c;
            }
        }
        if xp.is_empty() {
            continue;
        }
        for y in 0..n {
            let mut row = std::collections::BTreeMap::new();
            for (&m, c) in &xp {
                if let Some(t) = a.product(m, y) {
                    *row.entry(t).or_insert_with(BigRational::zero) += c;
                }
            }
            span.insert(row);
            if span.rank() == n {
                return true;
            }
        }
    }
    span.rank() == n
}

/// A bijection of bases matching products (zeros included), the involution
/// and the unit. Backtracking; assigning a pair forces the images of all
/// products it forms with pairs already assigned.
pub fn find_basis_isomorphism(a: &StructureConstantAlgebra, b: &StructureConstantAlgebra) -> Option<Vec<usize>> {
    let n = a.dim();
    if n != b.dim() || a.unit_support().len() != b.unit_support().len() {
        return None;
    }
    let profile = |alg: &StructureConstantAlgebra, x: usize| {
        let left = (0..n).filter(|&y| alg.product(x, y).is_some()).count();
        let right = (0..n).filter(|&y| alg.product(y, x).is_some()).count();
        let square = alg.product(x, x).is_some();
        (left, right, square, alg.star(x) == x, alg.unit_support().contains(&x))
    };
    let pa: Vec<_> = (0..n).map(|x| profile(a, x)).collect();
    let pb: Vec<_> = (0..n).map(|x| profile(b, x)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(a, b, &pa, &pb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn search<P: PartialEq>(
    a: &StructureConstantAlgebra,
    b: &StructureConstantAlgebra,
    pa: &[P],
    pb: &[P],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(x) = map.iter().position(|&m| m == usize::MAX) else {
        return true;
    };
    for y in 0..b.dim() {
        if used[y] || pa[x] != pb[y] {
            continue;
        }
        let (saved_map, saved_used) = (map.clone(), used.clone());
        if assign(a, b, x, y, map, used) && search(a, b, pa, pb, map, used) {
            return true;
        }
        *map = saved_map;
        *used = saved_used;
    }
    false
}

/// Sets `x ↦ y` and propagates through products and the involution.
fn assign(a: &StructureConstantAlgebra, b: &StructureConstantAlgebra, x: usize, y: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let mut queue = vec![(x, y)];
    while let Some((x, y)) = queue.pop() {
        if map[x] != usize::MAX {
            if map[x] != y {
                return false;
            }
            continue;
        }
        if used[y] {
            return false;
        }
        map[x] = y;
        used[y] = true;
        queue.push((a.star(x), b.star(y)));
        for z in 0..a.dim() {
            let w = map[z];
            if w == usize::MAX {
                continue;
            }
            for (p, q) in [(a.product(x, z), b.product(y, w)), (a.product(z, x), b.product(w, y))] {
                match (p, q) {
                    (Some(p), Some(q)) => queue.push((p, q)),
                    (None, None) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}
