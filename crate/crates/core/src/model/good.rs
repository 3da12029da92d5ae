use std::collections::HashMap;

use serde::Serialize;

use super::factorization::{mapping_cylinder_factorization, Factorization};
use super::Check;
use crate::error::Result;
use crate::groupoid::GroupoidFunctor;
use crate::presentation::pushout_along_cofibration;
use crate::sample::FiniteSampleCategory;

/// The class of functors whose closure properties are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    All,
    Cofibrations,
    Equivalences,
}

impl Predicate {
    pub fn holds(self, f: &GroupoidFunctor) -> bool {
        match self {
            Predicate::All => true,
            Predicate::Cofibrations => f.is_cofibration(),
            Predicate::Equivalences => f.is_equivalence(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub check: Check,
    pub checked: usize,
    pub unverified: usize,
    pub witness: Option<String>,
}

impl AxiomReport {
    fn new() -> Self {
        AxiomReport { check: Check::Pass, checked: 0, unverified: 0, witness: None }
    }

    fn record(&mut self, outcome: Check, witness: impl FnOnce() -> String) {
        self.checked += 1;
        match outcome {
            Check::Pass => {}
            Check::Unverified => {
                self.unverified += 1;
                if self.check == Check::Pass {
                    self.check = Check::Unverified;
                }
            }
            Check::Fail => {
                if self.check != Check::Fail {
                    self.check = Check::Fail;
                    self.witness = Some(witness());
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodSubcategoryReport {
    pub predicate: Predicate,
    /// Every cofibration satisfies the predicate.
    pub contains_cofibrations: AxiomReport,
    /// Pushing out a member along a cofibration gives a member.
    pub stable_under_pushout: AxiomReport,
    /// For a square of members, the corner map into the mapping cylinder is
    /// a member.
    pub factorization_preserves: AxiomReport,
}

impl GoodSubcategoryReport {
    pub fn check(&self) -> Check {
        self.contains_cofibrations.check.and(self.stable_under_pushout.check).and(self.factorization_preserves.check)
    }
}

/// Runs the three closure checks over every cofibration, pushout square and
/// commuting square formable from the sample.
pub fn good_subcategory_check(sample: &FiniteSampleCategory, predicate: Predicate, bound: usize) -> Result<GoodSubcategoryReport> {
    let n = sample.object_count();
    let member: Vec<bool> = sample.morphisms().iter().map(|m| predicate.holds(&m.functor)).collect();

    let mut first = AxiomReport::new();
    for (m, s) in sample.morphisms().iter().enumerate() {
        if s.is_cofibration {
            first.record(member[m].into(), || format!("cofibration {} is not in the class", sample.describe(m)));
        }
    }

    let mut second = AxiomReport::new();
    for a in 0..n {
        for b in 0..n {
            for &i in sample.hom(a, b) {
                if !sample.morphism(i).is_cofibration {
                    continue;
                }
                for c in 0..n {
                    for &f in sample.hom(a, c) {
                        if !member[f] {
                            continue;
                        }
                        let outcome = pushout_member(sample, i, f, predicate, bound)?;
                        second.record(outcome, || {
                            format!("pushout of {} along {} is not in the class", sample.describe(f), sample.describe(i))
                        });
                    }
                }
            }
        }
    }

    let mut third = AxiomReport::new();
    let mut cache: HashMap<usize, Factorization> = HashMap::new();
    let mut factor = |t: usize| -> Result<Factorization> {
        if let Some(x) = cache.get(&t) {
            return Ok(x.clone());
        }
        let x = mapping_cylinder_factorization(&sample.morphism(t).functor, bound)?;
        cache.insert(t, x.clone());
        Ok(x)
    };
    for (t0, s0) in sample.morphisms().iter().enumerate() {
        for (t1, s1) in sample.morphisms().iter().enumerate() {
            for &a in sample.hom(s0.src, s1.src) {
                for &b in sample.hom(s0.dst, s1.dst) {
                    if !member[a] || !member[b] || sample.compose(b, t0) != sample.compose(t1, a) {
                        continue;
                    }
                    let outcome = match predicate {
                        Predicate::All => Check::Pass,
                        _ => corner_member(sample, (factor(t0)?, factor(t1)?), (a, b), predicate, bound)?,
                    };
                    third.record(outcome, || {
                        format!(
                            "corner map for the square {} ⇒ {} with sides #{a}, #{b} is not in the class",
                            sample.describe(t0),
                            sample.describe(t1)
                        )
                    });
                }
            }
        }
    }

    Ok(GoodSubcategoryReport {
        predicate,
        contains_cofibrations: first,
        stable_under_pushout: second,
        factorization_preserves: third,
    })
}

/// Whether `B → B ⊔_A C` is in the class, for `i: A ↣ B` and `f: A → C`.
fn pushout_member(sample: &FiniteSampleCategory, i: usize, f: usize, predicate: Predicate, bound: usize) -> Result<Check> {
    let (i, f) = (&sample.morphism(i).functor, &sample.morphism(f).functor);
    if predicate == Predicate::All {
        return Ok(Check::Pass);
    }
    let p = pushout_along_cofibration(i, f)?;
    if predicate == Predicate::Cofibrations {
        return Ok(p.from_left.is_injective_on_objects().into());
    }
    Ok(match p.presentation.concretize(bound)?.realization() {
        Some(r) => predicate.holds(&r.pull(i.target(), &p.from_left)).into(),
        None => Check::Unverified,
    })
}

/// Whether `A1 ⊔_{A0} B̃0 → B̃1` is in the class.
fn corner_member(
    sample: &FiniteSampleCategory,
    (x0, x1): (Factorization, Factorization),
    (a, b): (usize, usize),
    predicate: Predicate,
    bound: usize,
) -> Result<Check> {
    let (a, b) = (&sample.morphism(a).functor, &sample.morphism(b).functor);
    let middles = x0.map_of_middles(&x1, a, b)?;
    if predicate == Predicate::Cofibrations {
        // objects of the corner: those of B̃0 outside A0, then those of A1
        let mut images: Vec<usize> = (0..x0.presentation().object_count())
            .filter(|&y| !x0.first_map().object_map.contains(&y))
            .map(|y| middles.object_map[y])
            .collect();
        images.extend(x1.first_map().object_map.iter().copied());
        let total = images.len();
        images.sort_unstable();
        images.dedup();
        return Ok((images.len() == total).into());
    }
    let (Some(first0), Some(first1), Some(m)) = (x0.first(), x1.first(), x0.concrete_map_of_middles(&x1, a, b)?) else {
        return Ok(Check::Unverified);
    };
    let corner = pushout_along_cofibration(first0, a)?;
    let Some(r) = corner.presentation.concretize(bound)?.realization() else {
        return Ok(Check::Unverified);
    };
    let induced = corner.induced(&m, first1)?;
    Ok(predicate.holds(&r.extend(&induced)?).into())
}
