//! Cylinders, factorizations and the checks built on them.

mod cylinder;
mod factorization;
mod good;
mod reedy;

use serde::Serialize;

pub use cylinder::{cylinder, degenerate_cylinder_check, good_cylinder_check, Cylinder, CylinderReport};
pub use factorization::{
    mapping_cylinder_factorization, presented_mapping_cylinder, Factorization, FactorizationChecks, PresentedFactorization,
};
pub use good::{good_subcategory_check, AxiomReport, GoodSubcategoryReport, Predicate};
pub use reedy::{
    reedy_factorization, LevelChecks, LevelFactorization, ReedyDiagram, ReedyFactorization, ReedyLevel, ReedyMorphism,
};

/// Morphism count past which a presentation is left unconcretized.
pub const DEFAULT_BOUND: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
    Unverified,
}

impl From<bool> for Check {
    fn from(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

impl Check {
    /// Fail dominates, then unverified.
    pub fn and(self, other: Check) -> Check {
        match (self, other) {
            (Check::Fail, _) | (_, Check::Fail) => Check::Fail,
            (Check::Unverified, _) | (_, Check::Unverified) => Check::Unverified,
            _ => Check::Pass,
        }
    }
}
