use std::sync::Arc;

use num_complex::Complex64;

use super::{groupoid_algebra, StructureConstantAlgebra};
use crate::error::{Error, Result};
use crate::groupoid::GroupoidFunctor;

/// A *-homomorphism sending basis elements to basis elements.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<StructureConstantAlgebra>,
    target: Arc<StructureConstantAlgebra>,
    basis_map: Vec<usize>,
}

impl AlgebraMap {
    /// Checks multiplicativity (including zero products) and compatibility
    /// with the involution on every pair of basis elements.
    pub fn new(source: Arc<StructureConstantAlgebra>, target: Arc<StructureConstantAlgebra>, basis_map: Vec<usize>) -> Result<Self> {
        let n = source.dim();
        if basis_map.len() != n || basis_map.iter().any(|&i| i >= target.dim()) {
            return Err(Error::Precondition("basis map does not fit the algebras".into()));
        }
        for a in 0..n {
            if target.star(basis_map[a]) != basis_map[source.star(a)] {
                return Err(Error::Precondition(format!("{} does not commute with the involution", source.basis()[a])));
            }
            for b in 0..n {
                let direct = source.product(a, b).map(|c| basis_map[c]);
                let image = target.product(basis_map[a], basis_map[b]);
                if direct != image {
                    return Err(Error::Precondition(format!(
                        "product of {} and {} is not preserved",
                        source.basis()[a],
                        source.basis()[b]
                    )));
                }
            }
        }
        Ok(AlgebraMap { source, target, basis_map })
    }

    pub fn source(&self) -> &Arc<StructureConstantAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<StructureConstantAlgebra> {
        &self.target
    }

    pub fn basis_map(&self) -> &[usize] {
        &self.basis_map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.dim()];
        self.basis_map.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.target.dim()];
        for (a, v) in x.iter().enumerate() {
            out[self.basis_map[a]] += v;
        }
        out
    }
}

/// The map of groupoid algebras induced by a cofibration. Two objects with
/// the same image would make `id_x · id_y = 0` go to `id_z · id_z = id_z`, so
/// anything else is rejected.
pub fn induced_map(f: &GroupoidFunctor) -> Result<AlgebraMap> {
    if let Some((x, y)) = f.cofibration_witness() {
        let s = f.source();
        return Err(Error::NotACofibration(format!(
            "id_{0}·id_{1} = 0 but both map to the identity of {2}, so the induced map is not multiplicative",
            s.object_name(x),
            s.object_name(y),
            f.target().object_name(f.on_object(x))
        )));
    }
    AlgebraMap::new(
        Arc::new(groupoid_algebra(f.source())),
        Arc::new(groupoid_algebra(f.target())),
        f.morphism_map().to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{FiniteGroup, Groupoid};

    #[test]
    fn loop_into_connected_groupoid() {
        let bz2 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        let big = Arc::new(Groupoid::with_group(&Groupoid::codiscrete(2), &FiniteGroup::cyclic(2)));
        let (_, incl) = big.full_subgroupoid(&[0]);
        let incl = GroupoidFunctor::new(bz2, big, incl.object_map().to_vec(), incl.morphism_map().to_vec()).unwrap();
        let m = induced_map(&incl).unwrap();
        assert!(m.is_injective());
        assert_eq!((m.source().dim(), m.target().dim()), (2, 8));
    }

    #[test]
    fn identity_is_identity() {
        let g = Arc::new(Groupoid::with_group(&Groupoid::codiscrete(2), &FiniteGroup::symmetric(3)));
        let m = induced_map(&GroupoidFunctor::identity(&g)).unwrap();
        assert!(m.basis_map().iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn collapsing_objects_is_rejected() {
        let cd2 = Arc::new(Groupoid::codiscrete(2));
        let f = GroupoidFunctor::new(cd2, Arc::new(Groupoid::point()), vec![0, 0], vec![0; 4]).unwrap();
        let err = induced_map(&f).unwrap_err();
        assert!(matches!(&err, Error::NotACofibration(m) if m.contains("not multiplicative")), "{err}");
    }
}
