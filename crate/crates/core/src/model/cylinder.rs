use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidFunctor};
use crate::presentation::{pushout_along_cofibration, PresentedFunctor, Pushout};

/// `G × 𝕀` with its two ends and the projection back to `G`.
///
/// Objects of the total groupoid are `(x,0)`, `(x,1)`; object `(x,k)` has
/// index `2x + k` and morphism `(f,e)` has index `4f + e` for the four arrows
/// `e` of the interval.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub base: Arc<Groupoid>,
    pub total: Arc<Groupoid>,
    pub i0: GroupoidFunctor,
    pub i1: GroupoidFunctor,
    pub projection: GroupoidFunctor,
}

const LOWER: usize = 0;
const UPPER: usize = 3;

pub fn cylinder(g: &Arc<Groupoid>) -> Cylinder {
    let total = Arc::new(Groupoid::product(g, &Groupoid::interval()));
    let (n, m) = (g.object_count(), g.morphism_count());
    let end = |k: usize, e: usize| {
        GroupoidFunctor::new_unchecked(
            g.clone(),
            total.clone(),
            (0..n).map(|x| 2 * x + k).collect(),
            (0..m).map(|f| 4 * f + e).collect(),
        )
    };
    let projection = GroupoidFunctor::new_unchecked(
        total.clone(),
        g.clone(),
        (0..2 * n).map(|x| x / 2).collect(),
        (0..4 * m).map(|f| f / 4).collect(),
    );
    Cylinder { base: g.clone(), total: total.clone(), i0: end(0, LOWER), i1: end(1, UPPER), projection }
}

impl Cylinder {
    /// `i0 ⊔ i1 : G ⊔ G → IG`.
    pub fn ends(&self) -> GroupoidFunctor {
        GroupoidFunctor::copair(&[&self.i0, &self.i1]).expect("ends share the total groupoid")
    }

    /// `I(f) : IX → IY`, with `self` the cylinder on `X` and `to` on `Y`.
    pub fn map(&self, f: &GroupoidFunctor, to: &Cylinder) -> GroupoidFunctor {
        GroupoidFunctor::new_unchecked(
            self.total.clone(),
            to.total.clone(),
            (0..self.total.object_count()).map(|x| 2 * f.on_object(x / 2) + x % 2).collect(),
            (0..self.total.morphism_count()).map(|m| 4 * f.on_morphism(m / 4) + m % 4).collect(),
        )
    }
}

/// Outcome of checking that the corner map out of `IX ⊔_{X⊔X} (Y⊔Y)` is a
/// cofibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderReport {
    pub pass: bool,
    pub pushout_objects: usize,
    pub target_objects: usize,
    /// Two pushout objects with the same image.
    pub witness: Option<[String; 2]>,
}

fn corner(i: &GroupoidFunctor) -> Result<(Cylinder, Pushout)> {
    if let Some((x, y)) = i.cofibration_witness() {
        return Err(Error::NotACofibration(format!(
            "objects {} and {} have the same image",
            i.source().object_name(x),
            i.source().object_name(y)
        )));
    }
    let cx = cylinder(i.source());
    let pushout = pushout_along_cofibration(&cx.ends(), &GroupoidFunctor::sum(&[i, i]))?;
    Ok((cx, pushout))
}

fn report(map: &PresentedFunctor) -> CylinderReport {
    let p = map.source();
    CylinderReport {
        pass: map.is_injective_on_objects(),
        pushout_objects: p.object_count(),
        target_objects: map.target().object_count(),
        witness: map.object_collision().map(|(a, b)| [p.objects()[a].clone(), p.objects()[b].clone()]),
    }
}

/// Builds `IX ⊔_{X⊔X} (Y⊔Y)` as a presentation, maps it to `IY` and checks
/// injectivity on objects.
pub fn good_cylinder_check(i: &GroupoidFunctor) -> Result<CylinderReport> {
    let (cx, pushout) = corner(i)?;
    let cy = cylinder(i.target());
    let left = cx.map(i, &cy);
    let right = cy.ends();
    Ok(report(&pushout.induced(&left, &right)?))
}

/// The same corner map with `IY` replaced by `Y` itself, `IX → Y` the
/// projection followed by `i` and `Y ⊔ Y → Y` the fold. Fails whenever `Y`
/// has an object, which shows the check can fail.
pub fn degenerate_cylinder_check(i: &GroupoidFunctor) -> Result<CylinderReport> {
    let (cx, pushout) = corner(i)?;
    let y = i.target();
    let left = cx.projection.then(i)?;
    let id = GroupoidFunctor::identity(y);
    let right = GroupoidFunctor::copair(&[&id, &id])?;
    Ok(report(&pushout.induced(&left, &right)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{find_isomorphism, FiniteGroup};

    fn arc(g: Groupoid) -> Arc<Groupoid> {
        Arc::new(g)
    }

    #[test]
    fn cylinder_shapes() {
        let c = cylinder(&arc(Groupoid::point()));
        assert!(find_isomorphism(&c.total, &arc(Groupoid::codiscrete(2))).is_some());
        let c = cylinder(&arc(Groupoid::discrete(2)));
        let two = arc(Groupoid::disjoint_union(&[&Groupoid::codiscrete(2), &Groupoid::codiscrete(2)]));
        assert!(find_isomorphism(&c.total, &two).is_some());
        let c = cylinder(&arc(Groupoid::classifying(&FiniteGroup::cyclic(2))));
        assert_eq!((c.total.object_count(), c.total.morphism_count()), (2, 8));
        assert!(c.total.is_connected());
    }

    #[test]
    fn cylinder_invariants() {
        for g in [Groupoid::point(), Groupoid::codiscrete(3), Groupoid::with_group(&Groupoid::discrete(2), &FiniteGroup::symmetric(3))] {
            let g = arc(g);
            let c = cylinder(&g);
            assert_eq!(c.total.morphism_count(), 4 * g.morphism_count());
            let id = GroupoidFunctor::identity(&g);
            assert_eq!(c.i0.then(&c.projection).unwrap(), id);
            assert_eq!(c.i1.then(&c.projection).unwrap(), id);
            assert!(c.ends().is_cofibration());
            assert!(c.projection.is_equivalence());
            GroupoidFunctor::new(c.total.clone(), g.clone(), c.projection.object_map().to_vec(), c.projection.morphism_map().to_vec())
                .unwrap();
        }
    }

    #[test]
    fn good_cylinder_examples() {
        let d2 = arc(Groupoid::discrete(2));
        let cd2 = arc(Groupoid::codiscrete(2));
        let i = GroupoidFunctor::new(d2, cd2.clone(), vec![0, 1], vec![0, 3]).unwrap();
        let r = good_cylinder_check(&i).unwrap();
        assert!(r.pass);
        // objects of the pushout are Ob(Y) ⊔ Ob(Y), mapped bijectively onto Ob(IY)
        assert_eq!((r.pushout_objects, r.target_objects), (4, 4));

        let bz2 = arc(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        assert!(good_cylinder_check(&GroupoidFunctor::identity(&bz2)).unwrap().pass);

        let bad = degenerate_cylinder_check(&i).unwrap();
        assert!(!bad.pass);
        assert!(bad.witness.is_some());
    }

    #[test]
    fn non_cofibrations_are_rejected() {
        let cd2 = arc(Groupoid::codiscrete(2));
        let b1 = arc(Groupoid::point());
        let f = GroupoidFunctor::new(cd2, b1, vec![0, 0], vec![0; 4]).unwrap();
        assert!(matches!(good_cylinder_check(&f), Err(Error::NotACofibration(_))));
    }
}
