use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::cylinder::cylinder;
use super::Check;
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidFunctor};
use crate::presentation::pushout::fresh;
use crate::presentation::{
    pushout_along_cofibration, Concretized, Generator, GeneratorMap, PresentedFunctor, PresentedGroupoid, Pushout, Realization, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationChecks {
    pub first_is_cofibration: Check,
    pub second_is_equivalence: Check,
    pub composite_is_original: Check,
}

impl FactorizationChecks {
    pub fn all_pass(&self) -> bool {
        [self.first_is_cofibration, self.second_is_equivalence, self.composite_is_original].iter().all(|c| *c == Check::Pass)
    }

    pub fn any_fail(&self) -> bool {
        [self.first_is_cofibration, self.second_is_equivalence, self.composite_is_original].contains(&Check::Fail)
    }
}

/// `F = second ∘ first` through `IA ⊔_{A⊔A} (A⊔B)`.
///
/// The middle always exists as a presentation whose objects are those of `A`
/// followed by those of `B`. The concrete maps are present only when the
/// presentation concretized within the bound.
#[derive(Clone, Debug)]
pub struct Factorization {
    original: GroupoidFunctor,
    pushout: Pushout,
    first_map: GeneratorMap,
    second_map: PresentedFunctor,
    realization: Option<Realization>,
    first: Option<GroupoidFunctor>,
    second: Option<GroupoidFunctor>,
    unknown: Option<String>,
    checks: FactorizationChecks,
}

pub fn mapping_cylinder_factorization(f: &GroupoidFunctor, bound: usize) -> Result<Factorization> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    let (a, b) = (f.source(), f.target());
    let ca = cylinder(a);
    let id_a = GroupoidFunctor::identity(a);
    let id_b = GroupoidFunctor::identity(b);
    let pushout = pushout_along_cofibration(&ca.ends(), &GroupoidFunctor::sum(&[&id_a, f]))?;
    let second_map = pushout.induced(&ca.projection.then(f)?, &GroupoidFunctor::copair(&[f, &id_b])?)?;
    let na = a.morphism_count();
    let first_map = GeneratorMap {
        object_map: pushout.from_right.object_map[..a.object_count()].to_vec(),
        generator_map: pushout.from_right.generator_map[..na].to_vec(),
    };

    let mut fact = Factorization {
        original: f.clone(),
        first_map,
        second_map,
        realization: None,
        first: None,
        second: None,
        unknown: None,
        checks: FactorizationChecks {
            first_is_cofibration: Check::Unverified,
            second_is_equivalence: Check::Unverified,
            composite_is_original: Check::Unverified,
        },
        pushout,
    };
    match fact.pushout.presentation.concretize(bound)? {
        Concretized::Concrete(r) => {
            let first = r.pull(a, &fact.first_map);
            let second = r.extend(&fact.second_map)?;
            fact.checks = FactorizationChecks {
                first_is_cofibration: first.is_cofibration().into(),
                second_is_equivalence: second.is_equivalence().into(),
                composite_is_original: (first.then(&second)? == *f).into(),
            };
            fact.first = Some(first);
            fact.second = Some(second);
            fact.realization = Some(r);
        }
        Concretized::Unknown { reason } => {
            let composite_objects =
                fact.first_map.object_map.iter().map(|&x| fact.second_map.object_map()[x]).eq(f.object_map().iter().copied());
            let composite_generators = fact
                .first_map
                .generator_map
                .iter()
                .map(|&g| fact.second_map.generator_map()[g])
                .eq(f.morphism_map().iter().copied());
            fact.checks = FactorizationChecks {
                first_is_cofibration: fact.first_map.is_injective_on_objects().into(),
                second_is_equivalence: Check::Unverified,
                composite_is_original: (composite_objects && composite_generators).into(),
            };
            fact.unknown = Some(reason);
        }
    }
    Ok(fact)
}

impl Factorization {
    pub fn original(&self) -> &GroupoidFunctor {
        &self.original
    }

    pub fn presentation(&self) -> &Arc<PresentedGroupoid> {
        &self.pushout.presentation
    }

    pub fn pushout(&self) -> &Pushout {
        &self.pushout
    }

    /// `A → middle` on objects and generators.
    pub fn first_map(&self) -> &GeneratorMap {
        &self.first_map
    }

    /// `middle → B` on objects and generators.
    pub fn second_map(&self) -> &PresentedFunctor {
        &self.second_map
    }

    /// `B → middle` on objects and generators.
    pub fn target_map(&self) -> GeneratorMap {
        let a = self.original.source();
        GeneratorMap {
            object_map: self.pushout.from_right.object_map[a.object_count()..].to_vec(),
            generator_map: self.pushout.from_right.generator_map[a.morphism_count()..].to_vec(),
        }
    }

    /// The inclusion of `B` into the concrete middle.
    pub fn target_inclusion(&self) -> Option<GroupoidFunctor> {
        self.realization.as_ref().map(|r| r.pull(self.original.target(), &self.target_map()))
    }

    pub fn middle(&self) -> Option<&Arc<Groupoid>> {
        self.realization.as_ref().map(|r| r.groupoid())
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn first(&self) -> Option<&GroupoidFunctor> {
        self.first.as_ref()
    }

    pub fn second(&self) -> Option<&GroupoidFunctor> {
        self.second.as_ref()
    }

    pub fn is_concrete(&self) -> bool {
        self.realization.is_some()
    }

    /// Why the middle did not concretize.
    pub fn unverified_reason(&self) -> Option<&str> {
        self.unknown.as_deref()
    }

    pub fn checks(&self) -> FactorizationChecks {
        self.checks
    }

    /// The map of middles induced by a commuting square
    /// `b ∘ self.original = to.original ∘ a`, on objects and generators.
    pub fn map_of_middles(&self, to: &Factorization, a: &GroupoidFunctor, b: &GroupoidFunctor) -> Result<GeneratorMap> {
        let (f0, f1) = (&self.original, &to.original);
        let sources = crate::groupoid::same_groupoid(a.source(), f0.source()) && crate::groupoid::same_groupoid(b.source(), f0.target());
        let targets = crate::groupoid::same_groupoid(a.target(), f1.source()) && crate::groupoid::same_groupoid(b.target(), f1.target());
        if !sources || !targets {
            return Err(Error::Precondition("square legs do not match the factored functors".into()));
        }
        if f0.then(b)? != a.then(f1)? {
            return Err(Error::Precondition("square does not commute".into()));
        }
        let (na0, na1) = (f0.source().object_count(), f1.source().object_count());
        let object_map = (0..self.presentation().object_count())
            .map(|x| if x < na0 { a.on_object(x) } else { na1 + b.on_object(x - na0) })
            .collect();
        // generators: 4·|A| cylinder arrows, then A, then B
        let (m0, m1) = (f0.source().morphism_count(), f1.source().morphism_count());
        let generator_map = (0..self.presentation().generators().len())
            .map(|g| {
                if g < 4 * m0 {
                    4 * a.on_morphism(g / 4) + g % 4
                } else if g < 5 * m0 {
                    4 * m1 + a.on_morphism(g - 4 * m0)
                } else {
                    5 * m1 + b.on_morphism(g - 5 * m0)
                }
            })
            .collect();
        Ok(GeneratorMap { object_map, generator_map })
    }

    /// [`Self::map_of_middles`] as a functor of concrete middles, when both
    /// concretized.
    pub fn concrete_map_of_middles(
        &self,
        to: &Factorization,
        a: &GroupoidFunctor,
        b: &GroupoidFunctor,
    ) -> Result<Option<GroupoidFunctor>> {
        let (Some(r0), Some(r1)) = (&self.realization, &to.realization) else {
            return Ok(None);
        };
        let map = self.map_of_middles(to, a, b)?;
        let images = map.generator_map.iter().map(|&g| r1.generator_images()[g]).collect();
        let presented = PresentedFunctor::new(self.presentation().clone(), r1.groupoid().clone(), map.object_map, images)?;
        r0.extend(&presented).map(Some)
    }

    /// `{input, middle, first, second, checks}`; the middle is a concrete
    /// groupoid when available and the presentation otherwise.
    pub fn to_json(&self) -> Value {
        let presented_map = |objects: Vec<(String, String)>, generators: Vec<(String, String)>| {
            json!({
                "onObjects": objects.into_iter().collect::<indexmap::IndexMap<_, _>>(),
                "onGenerators": generators.into_iter().collect::<indexmap::IndexMap<_, _>>(),
            })
        };
        let p = self.presentation();
        let (a, b) = (self.original.source(), self.original.target());
        let middle = match &self.realization {
            Some(r) => json!({"concrete": r.groupoid().to_json()}),
            None => json!({"presented": p.to_json(), "reason": self.unknown}),
        };
        let first = match &self.first {
            Some(f) => serde_json::to_value(f.to_json()).expect("serializable"),
            None => presented_map(
                self.first_map.object_map.iter().enumerate().map(|(x, &y)| (a.object_name(x).into(), p.objects()[y].clone())).collect(),
                self.first_map
                    .generator_map
                    .iter()
                    .enumerate()
                    .map(|(m, &g)| (a.morphism_name(m).into(), p.generators()[g].id.clone()))
                    .collect(),
            ),
        };
        let second = match &self.second {
            Some(f) => serde_json::to_value(f.to_json()).expect("serializable"),
            None => presented_map(
                self.second_map.object_map().iter().enumerate().map(|(x, &y)| (p.objects()[x].clone(), b.object_name(y).into())).collect(),
                self.second_map
                    .generator_map()
                    .iter()
                    .enumerate()
                    .map(|(g, &m)| (p.generators()[g].id.clone(), b.morphism_name(m).into()))
                    .collect(),
            ),
        };
        json!({
            "input": self.original.to_json(),
            "middle": middle,
            "first": first,
            "second": second,
            "checks": self.checks,
        })
    }
}

/// Mapping cylinder of a functor `u: Q → B` out of a presented groupoid.
///
/// Objects are those of `Q` followed by those of `B`; generators are those of
/// `Q`, the morphisms of `B`, and one arrow `h_q: q → u(q)` per object of `Q`,
/// with `h ∘ g = u(g) ∘ h` for every generator `g`.
#[derive(Clone, Debug)]
pub struct PresentedFactorization {
    original: PresentedFunctor,
    presentation: Arc<PresentedGroupoid>,
    first_map: GeneratorMap,
    second_map: PresentedFunctor,
    realization: Option<Realization>,
    first: Option<PresentedFunctor>,
    second: Option<GroupoidFunctor>,
    unknown: Option<String>,
    checks: FactorizationChecks,
}

pub fn presented_mapping_cylinder(u: &PresentedFunctor, bound: usize) -> Result<PresentedFactorization> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    let (q, b) = (u.source(), u.target());
    let (nq, gq, nb) = (q.object_count(), q.generators().len(), b.morphism_count());

    let mut taken: HashSet<String> = q.objects().iter().cloned().collect();
    let mut objects = q.objects().to_vec();
    objects.extend(b.objects().iter().map(|o| fresh(o, &mut taken)));
    let mut taken: HashSet<String> = q.generators().iter().map(|g| g.id.clone()).collect();
    let mut generators = q.generators().to_vec();
    generators.extend(b.morphisms().iter().map(|m| Generator { id: fresh(&m.id, &mut taken), src: nq + m.src, dst: nq + m.dst }));
    let h = |x: usize| gq + nb + x;
    generators.extend((0..nq).map(|x| Generator {
        id: fresh(&format!("h:{}", q.objects()[x]), &mut taken),
        src: x,
        dst: nq + u.object_map()[x],
    }));

    let mut relations = q.relations().to_vec();
    for (x, y) in PresentedGroupoid::from_groupoid(b).relations() {
        let shift = |w: &Word| w.iter().map(|g| g + gq).collect::<Word>();
        relations.push((shift(x), shift(y)));
    }
    for (g, gen) in q.generators().iter().enumerate() {
        relations.push((vec![h(gen.dst), g], vec![gq + u.generator_map()[g], h(gen.src)]));
    }
    let presentation = Arc::new(PresentedGroupoid::new(objects, generators, relations)?);

    let first_map = GeneratorMap { object_map: (0..nq).collect(), generator_map: (0..gq).collect() };
    let mut object_map = u.object_map().to_vec();
    object_map.extend(0..b.object_count());
    let mut generator_map = u.generator_map().to_vec();
    generator_map.extend(0..nb);
    generator_map.extend((0..nq).map(|x| b.identity(u.object_map()[x])));
    let second_map = PresentedFunctor::new(presentation.clone(), b.clone(), object_map, generator_map)?;

    let mut fact = PresentedFactorization {
        original: u.clone(),
        presentation,
        first_map,
        second_map,
        realization: None,
        first: None,
        second: None,
        unknown: None,
        checks: FactorizationChecks {
            first_is_cofibration: Check::Pass,
            second_is_equivalence: Check::Unverified,
            composite_is_original: Check::Unverified,
        },
    };
    match fact.presentation.concretize(bound)? {
        Concretized::Concrete(r) => {
            let images = fact.first_map.generator_map.iter().map(|&g| r.generator_images()[g]).collect();
            let first = PresentedFunctor::new(q.clone(), r.groupoid().clone(), fact.first_map.object_map.clone(), images)?;
            let second = r.extend(&fact.second_map)?;
            let objects_agree = (0..nq).all(|x| second.on_object(first.object_map()[x]) == u.object_map()[x]);
            let generators_agree = (0..gq).all(|g| second.on_morphism(first.generator_map()[g]) == u.generator_map()[g]);
            fact.checks = FactorizationChecks {
                first_is_cofibration: first.is_injective_on_objects().into(),
                second_is_equivalence: second.is_equivalence().into(),
                composite_is_original: (objects_agree && generators_agree).into(),
            };
            fact.first = Some(first);
            fact.second = Some(second);
            fact.realization = Some(r);
        }
        Concretized::Unknown { reason } => {
            fact.checks.first_is_cofibration = fact.first_map.is_injective_on_objects().into();
            fact.checks.composite_is_original = ((0..nq).all(|x| fact.second_map.object_map()[x] == u.object_map()[x])
                && (0..gq).all(|g| fact.second_map.generator_map()[g] == u.generator_map()[g]))
            .into();
            fact.unknown = Some(reason);
        }
    }
    Ok(fact)
}

impl PresentedFactorization {
    pub fn original(&self) -> &PresentedFunctor {
        &self.original
    }

    pub fn presentation(&self) -> &Arc<PresentedGroupoid> {
        &self.presentation
    }

    pub fn first_map(&self) -> &GeneratorMap {
        &self.first_map
    }

    pub fn second_map(&self) -> &PresentedFunctor {
        &self.second_map
    }

    pub fn middle(&self) -> Option<&Arc<Groupoid>> {
        self.realization.as_ref().map(|r| r.groupoid())
    }

    pub fn first(&self) -> Option<&PresentedFunctor> {
        self.first.as_ref()
    }

    pub fn second(&self) -> Option<&GroupoidFunctor> {
        self.second.as_ref()
    }

    pub fn unverified_reason(&self) -> Option<&str> {
        self.unknown.as_deref()
    }

    pub fn checks(&self) -> FactorizationChecks {
        self.checks
    }
}
