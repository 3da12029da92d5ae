use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::GroupoidFunctor;
use crate::model::{mapping_cylinder_factorization, Factorization};

/// `A ↪ Cyl(F) ↩ B` for an equivalence `F: A → B`.
#[derive(Clone, Debug)]
pub struct Zigzag {
    pub factorization: Factorization,
    pub source_leg: GroupoidFunctor,
    pub target_leg: GroupoidFunctor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZigzagChecks {
    pub source_leg_is_cofibration: bool,
    pub source_leg_is_equivalence: bool,
    pub target_leg_is_cofibration: bool,
    pub target_leg_is_equivalence: bool,
}

impl ZigzagChecks {
    pub fn all(&self) -> bool {
        self.source_leg_is_cofibration && self.source_leg_is_equivalence && self.target_leg_is_cofibration && self.target_leg_is_equivalence
    }
}

impl Zigzag {
    pub fn checks(&self) -> ZigzagChecks {
        ZigzagChecks {
            source_leg_is_cofibration: self.source_leg.is_cofibration(),
            source_leg_is_equivalence: self.source_leg.is_equivalence(),
            target_leg_is_cofibration: self.target_leg.is_cofibration(),
            target_leg_is_equivalence: self.target_leg.is_equivalence(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ZigzagOutcome {
    Witness(Box<Zigzag>),
    /// The mapping cylinder did not concretize within the bound.
    Unknown { reason: String },
}

/// Both legs of the mapping cylinder of an equivalence are acyclic
/// cofibrations. Rejects functors that are not equivalences.
pub fn zigzag_witness(f: &GroupoidFunctor, bound: usize) -> Result<ZigzagOutcome> {
    let report = f.equivalence_report();
    if !report.is_equivalence() {
        return Err(Error::NotAnEquivalence(format!("{report:?}")));
    }
    let factorization = mapping_cylinder_factorization(f, bound)?;
    let (Some(source_leg), Some(target_leg)) = (factorization.first().cloned(), factorization.target_inclusion()) else {
        let reason = factorization.unverified_reason().unwrap_or("no concrete middle").to_owned();
        return Ok(ZigzagOutcome::Unknown { reason });
    };
    Ok(ZigzagOutcome::Witness(Box::new(Zigzag { factorization, source_leg, target_leg })))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groupoid::{find_isomorphism, FiniteGroup, Groupoid};

    fn witness(f: &GroupoidFunctor) -> Zigzag {
        match zigzag_witness(f, 10_000).unwrap() {
            ZigzagOutcome::Witness(z) => *z,
            ZigzagOutcome::Unknown { reason } => panic!("{reason}"),
        }
    }

    #[test]
    fn arrow_onto_point() {
        let cd2 = Arc::new(Groupoid::codiscrete(2));
        let point = Arc::new(Groupoid::point());
        let f = GroupoidFunctor::new(cd2, point, vec![0, 0], vec![0; 4]).unwrap();
        let z = witness(&f);
        assert!(z.checks().all());
        let middle = z.factorization.middle().unwrap();
        assert!(find_isomorphism(middle, &Arc::new(Groupoid::codiscrete(3))).is_some());
    }

    #[test]
    fn identity_legs_are_cylinder_ends() {
        let g = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        let z = witness(&GroupoidFunctor::identity(&g));
        assert!(z.checks().all());
        // the two ends are disjoint and cover the objects of the cylinder
        let mut hit = [z.source_leg.object_map(), z.target_leg.object_map()].concat();
        hit.sort();
        assert_eq!(hit, vec![0, 1]);
        let cylinder = Groupoid::product(&g, &Groupoid::interval());
        assert!(find_isomorphism(z.factorization.middle().unwrap(), &Arc::new(cylinder)).is_some());
    }

    #[test]
    fn non_equivalences_are_rejected() {
        let z2 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        let z3 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(3)));
        let collapse = GroupoidFunctor::new(z2, z3, vec![0], vec![0, 0]).unwrap();
        assert!(matches!(zigzag_witness(&collapse, 10_000), Err(Error::NotAnEquivalence(_))));
    }
}
