use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::blocks::{left_trace, multiply};
use super::{block_decomposition, corner_algebra, find_basis_isomorphism, groupoid_algebra, induced_map, is_full_projection};
use super::{AlgebraMap, Projection};
use crate::error::{Error, Result};
use crate::groupoid::GroupoidFunctor;

/// `K₀(A) = ℤ^{blocks of A}` → `K₀(B)`, as a `codomain_rank × domain_rank`
/// matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct K0Map {
    pub domain_rank: usize,
    pub codomain_rank: usize,
    pub matrix: Vec<Vec<i64>>,
    /// Largest distance of a computed multiplicity from its integer.
    pub max_defect: f64,
}

impl K0Map {
    pub fn determinant(&self) -> Option<BigInt> {
        (self.domain_rank == self.codomain_rank).then(|| bareiss(&self.matrix))
    }

    /// Square with determinant ±1.
    pub fn is_isomorphism(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }
}

/// Fraction-free elimination; exact for integer matrices.
fn bareiss(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Entry `(j, i)` is how often block `i` of the source occurs in block `j`
/// of the target: the rank of `φ(E_i)·F_j` inside `M_{D_j}` divided by `D_i`,
/// read off as `tr(L_{φ(E_i)F_j}) / (D_j·D_i)` and rounded.
pub fn k0_map(phi: &AlgebraMap, tol: f64, seed: u64) -> Result<K0Map> {
    let (a, b) = (phi.source(), phi.target());
    let da = block_decomposition(a, tol, seed)?;
    let db = block_decomposition(b, tol, seed)?;
    let mut matrix = vec![vec![0i64; da.blocks.len()]; db.blocks.len()];
    let mut max_defect = 0.0f64;
    for (i, e) in da.blocks.iter().enumerate() {
        let image = phi.apply(&e.idempotent);
        for (j, f) in db.blocks.iter().enumerate() {
            let t = left_trace(b, &multiply(b, &image, &f.idempotent));
            let value = t.re / (f.size * e.size) as f64;
            let rounded = value.round();
            let defect = (value - rounded).abs().max(t.im.abs());
            if defect > 0.01 || rounded < 0.0 {
                return Err(Error::Rounding { value });
            }
            max_defect = max_defect.max(defect);
            matrix[j][i] = rounded as i64;
        }
    }
    Ok(K0Map { domain_rank: da.blocks.len(), codomain_rank: db.blocks.len(), matrix, max_defect })
}

/// `p = id_x` for an object `x` of one component of the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerWitness {
    pub component: usize,
    pub object: String,
    /// Fullness of `id_x` in the algebra of its component.
    pub full: bool,
    pub corner_dimension: usize,
    /// Whether the corner is isomorphic to the algebra of the vertex group.
    pub corner_is_vertex_group_algebra: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MoritaReport {
    pub acyclic_cofibration: bool,
    pub k0_iso: bool,
    pub k0: K0Map,
    pub full_corner_witnesses: Vec<CornerWitness>,
    pub seed: u64,
    pub tol: f64,
}

/// For a cofibration `F`: whether it is acyclic, whether the induced map on
/// K₀ is an isomorphism, and the full corners `id_x` that make it one.
pub fn morita_check(f: &GroupoidFunctor, tol: f64, seed: u64) -> Result<MoritaReport> {
    let phi = induced_map(f)?;
    let k0 = k0_map(&phi, tol, seed)?;
    let g = f.target();
    let labels = g.component_labels();
    let mut witnesses = Vec::new();
    let mut seen = Vec::new();
    for &y in f.object_map() {
        let c = labels[y];
        if seen.contains(&c) {
            continue;
        }
        seen.push(c);
        let objects: Vec<usize> = (0..g.object_count()).filter(|&z| labels[z] == c).collect();
        let (sub, _) = g.full_subgroupoid(&objects);
        let algebra = groupoid_algebra(&sub);
        let name = g.object_name(y).to_owned();
        let p = Projection::identity_at(&algebra, &name)?;
        let corner = corner_algebra(&algebra, &p)?;
        let vertex = Arc::new(g.vertex_group(y).to_groupoid(g));
        let matches = corner.algebra().is_some_and(|c| find_basis_isomorphism(c, &groupoid_algebra(&vertex)).is_some());
        witnesses.push(CornerWitness {
            component: c,
            object: name,
            full: is_full_projection(&algebra, &p),
            corner_dimension: corner.dim(),
            corner_is_vertex_group_algebra: matches,
        });
    }
    Ok(MoritaReport {
        acyclic_cofibration: f.is_equivalence(),
        k0_iso: k0.is_isomorphism(),
        k0,
        full_corner_witnesses: witnesses,
        seed,
        tol,
    })
}
