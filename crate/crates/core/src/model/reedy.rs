use std::sync::Arc;

use serde::Serialize;

use super::factorization::{mapping_cylinder_factorization, presented_mapping_cylinder, Factorization, PresentedFactorization};
use super::Check;
use crate::error::{Error, Result};
use crate::groupoid::{same_groupoid, Groupoid, GroupoidFunctor};
use crate::presentation::{pushout_along_cofibration, PresentedGroupoid, Pushout};

/// A chain `A_0 → A_1 → … → A_k`.
#[derive(Clone, Debug)]
pub struct ReedyDiagram {
    objects: Vec<Arc<Groupoid>>,
    arrows: Vec<GroupoidFunctor>,
}

impl ReedyDiagram {
    pub fn new(objects: Vec<Arc<Groupoid>>, arrows: Vec<GroupoidFunctor>) -> Result<Self> {
        if objects.is_empty() || arrows.len() + 1 != objects.len() {
            return Err(Error::Precondition("a diagram over [k] has k+1 objects and k arrows".into()));
        }
        for (i, f) in arrows.iter().enumerate() {
            if !same_groupoid(f.source(), &objects[i]) || !same_groupoid(f.target(), &objects[i + 1]) {
                return Err(Error::Precondition(format!("arrow {i} does not go from object {i} to object {}", i + 1)));
            }
        }
        Ok(ReedyDiagram { objects, arrows })
    }

    /// The chain of arrows; objects are read off their endpoints.
    pub fn from_arrows(arrows: Vec<GroupoidFunctor>) -> Result<Self> {
        let first = arrows.first().ok_or_else(|| Error::Precondition("no arrows".into()))?;
        let mut objects = vec![first.source().clone()];
        objects.extend(arrows.iter().map(|f| f.target().clone()));
        Self::new(objects, arrows)
    }

    /// The constant chain of identities of length `k`.
    pub fn constant(g: &Arc<Groupoid>, k: usize) -> Self {
        ReedyDiagram { objects: vec![g.clone(); k + 1], arrows: vec![GroupoidFunctor::identity(g); k] }
    }

    pub fn shape(&self) -> usize {
        self.arrows.len()
    }

    pub fn object(&self, i: usize) -> &Arc<Groupoid> {
        &self.objects[i]
    }

    pub fn arrow(&self, i: usize) -> &GroupoidFunctor {
        &self.arrows[i]
    }
}

/// A natural transformation `t: A ⇒ B` of chains.
#[derive(Clone, Debug)]
pub struct ReedyMorphism {
    source: ReedyDiagram,
    target: ReedyDiagram,
    components: Vec<GroupoidFunctor>,
}

impl ReedyMorphism {
    pub fn new(source: ReedyDiagram, target: ReedyDiagram, components: Vec<GroupoidFunctor>) -> Result<Self> {
        let k = source.shape();
        if target.shape() != k || components.len() != k + 1 {
            return Err(Error::Precondition("diagrams and components disagree on the shape".into()));
        }
        for (i, t) in components.iter().enumerate() {
            if !same_groupoid(t.source(), source.object(i)) || !same_groupoid(t.target(), target.object(i)) {
                return Err(Error::Precondition(format!("component {i} has the wrong endpoints")));
            }
        }
        for i in 0..k {
            if components[i].then(target.arrow(i))? != source.arrow(i).then(&components[i + 1])? {
                return Err(Error::Precondition(format!("naturality square {i} does not commute")));
            }
        }
        Ok(ReedyMorphism { source, target, components })
    }

    pub fn shape(&self) -> usize {
        self.source.shape()
    }

    pub fn component(&self, i: usize) -> &GroupoidFunctor {
        &self.components[i]
    }
}

/// Level `i` of the factorization: `Q_i ↣ B̃_i → B_i`, where `Q_0 = A_0` and
/// `Q_{i+1} = B̃_i ⊔_{A_i} A_{i+1}`.
#[derive(Clone, Debug)]
pub struct ReedyLevel {
    pub step: LevelFactorization,
    /// `Q_i` as a presentation, absent at level 0.
    pub corner: Option<Pushout>,
    /// `A_i → B̃_i`.
    pub structure: Option<GroupoidFunctor>,
    /// `B̃_i → B_i`.
    pub collapse: Option<GroupoidFunctor>,
    /// `B̃_{i-1} → B̃_i`.
    pub connecting: Option<GroupoidFunctor>,
    pub checks: LevelChecks,
}

/// Level 0 factors a functor of concrete groupoids; later levels factor a
/// functor out of the (possibly infinite) corner presentation.
#[derive(Clone, Debug)]
pub enum LevelFactorization {
    Base(Factorization),
    Corner(PresentedFactorization),
}

impl LevelFactorization {
    pub fn middle(&self) -> Option<&Arc<Groupoid>> {
        match self {
            LevelFactorization::Base(f) => f.middle(),
            LevelFactorization::Corner(f) => f.middle(),
        }
    }

    pub fn presentation(&self) -> &Arc<PresentedGroupoid> {
        match self {
            LevelFactorization::Base(f) => f.presentation(),
            LevelFactorization::Corner(f) => f.presentation(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelChecks {
    pub structure_is_cofibration: Check,
    /// `Q_i → B̃_i` is injective on objects.
    pub latching_is_cofibration: Check,
    pub collapse_is_equivalence: Check,
    /// The factorization composes to the input, and both squares relating
    /// level `i-1` to level `i` commute.
    pub squares_commute: Check,
}

impl LevelChecks {
    pub fn all(&self) -> Check {
        self.structure_is_cofibration
            .and(self.latching_is_cofibration)
            .and(self.collapse_is_equivalence)
            .and(self.squares_commute)
    }
}

#[derive(Clone, Debug)]
pub struct ReedyFactorization {
    pub levels: Vec<ReedyLevel>,
    /// Levels that could not be built because an earlier middle did not
    /// concretize.
    pub missing: usize,
    pub reason: Option<String>,
}

impl ReedyFactorization {
    pub fn check(&self) -> Check {
        let built = self.levels.iter().fold(Check::Pass, |c, l| c.and(l.checks.all()));
        if self.missing > 0 {
            built.and(Check::Unverified)
        } else {
            built
        }
    }

    /// `B̃_i`, when concrete.
    pub fn middle(&self, i: usize) -> Option<&Arc<Groupoid>> {
        self.levels.get(i).and_then(|l| l.step.middle())
    }
}

/// Factors `t: A ⇒ B` levelwise by induction along the chain, using the
/// mapping cylinder at each level.
pub fn reedy_factorization(t: &ReedyMorphism, bound: usize) -> Result<ReedyFactorization> {
    let k = t.shape();
    if k > 3 {
        return Err(Error::Precondition(format!("chains of length at most 3 are supported, got {k}")));
    }
    let (a, b) = (&t.source, &t.target);
    let base = mapping_cylinder_factorization(t.component(0), bound)?;
    let bc = base.checks();
    let mut levels = vec![ReedyLevel {
        structure: base.first().cloned(),
        collapse: base.second().cloned(),
        checks: LevelChecks {
            structure_is_cofibration: bc.first_is_cofibration,
            latching_is_cofibration: bc.first_is_cofibration,
            collapse_is_equivalence: bc.second_is_equivalence,
            squares_commute: bc.composite_is_original,
        },
        step: LevelFactorization::Base(base),
        corner: None,
        connecting: None,
    }];

    for i in 0..k {
        let prev = &levels[i];
        let (Some(structure), Some(collapse), Some(middle)) = (&prev.structure, &prev.collapse, prev.step.middle()) else {
            return Ok(ReedyFactorization {
                missing: k - i,
                reason: Some(format!("the middle at level {i} did not concretize")),
                levels,
            });
        };
        let corner = pushout_along_cofibration(structure, a.arrow(i))?;
        let u = corner.induced(&collapse.then(b.arrow(i))?, t.component(i + 1))?;
        let fact = presented_mapping_cylinder(&u, bound)?;
        let fc = fact.checks();
        let (next_structure, connecting, squares) = match fact.first() {
            Some(latch) => {
                let up = latch.after(&corner.from_right, a.object(i + 1))?;
                let across = latch.after(&corner.from_left, middle)?;
                let lower = a.arrow(i).then(&up)? == structure.then(&across)?;
                let upper = across.then(fact.second().expect("concrete"))? == collapse.then(b.arrow(i))?;
                (Some(up), Some(across), Check::from(lower && upper))
            }
            None => (None, None, Check::Unverified),
        };
        let structure_check = match &next_structure {
            Some(s) => s.is_cofibration().into(),
            None => (corner.from_right.is_injective_on_objects() && fact.first_map().is_injective_on_objects()).into(),
        };
        levels.push(ReedyLevel {
            structure: next_structure,
            collapse: fact.second().cloned(),
            connecting,
            checks: LevelChecks {
                structure_is_cofibration: structure_check,
                latching_is_cofibration: fc.first_is_cofibration,
                collapse_is_equivalence: fc.second_is_equivalence,
                squares_commute: squares.and(fc.composite_is_original),
            },
            step: LevelFactorization::Corner(fact),
            corner: Some(corner),
        });
    }
    Ok(ReedyFactorization { levels, missing: 0, reason: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{find_isomorphism, FiniteGroup};

    fn arc(g: Groupoid) -> Arc<Groupoid> {
        Arc::new(g)
    }

    #[test]
    fn point_into_loop() {
        let b1 = arc(Groupoid::point());
        let bz2 = arc(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        let incl = GroupoidFunctor::new(b1.clone(), bz2.clone(), vec![0], vec![0]).unwrap();
        let id = GroupoidFunctor::identity(&bz2);
        let a = ReedyDiagram::from_arrows(vec![incl.clone()]).unwrap();
        let b = ReedyDiagram::from_arrows(vec![id.clone()]).unwrap();
        let t = ReedyMorphism::new(a, b, vec![incl, id]).unwrap();
        let r = reedy_factorization(&t, 10_000).unwrap();
        assert_eq!(r.check(), Check::Pass, "{:?} {:?}", r.levels.iter().map(|l| l.checks).collect::<Vec<_>>(), r.reason);
        assert_eq!(r.middle(0).unwrap().object_count(), 2);
        assert_eq!(r.middle(1).unwrap().object_count(), 3);
        // the corner glues two copies of Z/2 at a point: infinite dihedral
        let corner = r.levels[1].corner.as_ref().unwrap();
        assert!(!corner.presentation.concretize(10_000).unwrap().is_concrete());
        let expected = arc(Groupoid::with_group(&Groupoid::codiscrete(3), &FiniteGroup::cyclic(2)));
        assert!(find_isomorphism(r.middle(1).unwrap(), &expected).is_some());
    }

    #[test]
    fn identity_chain_on_a_point() {
        let b1 = arc(Groupoid::point());
        let t = ReedyMorphism::new(
            ReedyDiagram::constant(&b1, 1),
            ReedyDiagram::constant(&b1, 1),
            vec![GroupoidFunctor::identity(&b1); 2],
        )
        .unwrap();
        let r = reedy_factorization(&t, 10_000).unwrap();
        assert_eq!(r.check(), Check::Pass);
        // level 1 carries B_0, A_1 and B_1
        for (i, n) in [(0, 2), (1, 3)] {
            assert!(find_isomorphism(r.middle(i).unwrap(), &arc(Groupoid::codiscrete(n))).is_some());
        }
    }

    #[test]
    fn length_two_chain() {
        let b1 = arc(Groupoid::point());
        let t = ReedyMorphism::new(
            ReedyDiagram::constant(&b1, 2),
            ReedyDiagram::constant(&b1, 2),
            vec![GroupoidFunctor::identity(&b1); 3],
        )
        .unwrap();
        let r = reedy_factorization(&t, 10_000).unwrap();
        assert_eq!(r.levels.len(), 3);
        assert_eq!(r.check(), Check::Pass);
    }

    #[test]
    fn rejects_non_natural_components() {
        let b1 = arc(Groupoid::point());
        let cd2 = arc(Groupoid::codiscrete(2));
        let left = GroupoidFunctor::new(b1.clone(), cd2.clone(), vec![0], vec![0]).unwrap();
        let right = GroupoidFunctor::new(b1.clone(), cd2.clone(), vec![1], vec![3]).unwrap();
        let a = ReedyDiagram::constant(&b1, 1);
        let b = ReedyDiagram::constant(&cd2, 1);
        assert!(ReedyMorphism::new(a, b, vec![left, right]).is_err());
    }

    #[test]
    fn unconcretized_levels_are_flagged() {
        let bs3 = arc(Groupoid::classifying(&FiniteGroup::symmetric(3)));
        let t = ReedyMorphism::new(
            ReedyDiagram::constant(&bs3, 1),
            ReedyDiagram::constant(&bs3, 1),
            vec![GroupoidFunctor::identity(&bs3); 2],
        )
        .unwrap();
        let r = reedy_factorization(&t, 10).unwrap();
        assert_eq!(r.check(), Check::Unverified);
        assert_eq!(r.missing, 1);
        assert!(r.reason.is_some());
    }
}
