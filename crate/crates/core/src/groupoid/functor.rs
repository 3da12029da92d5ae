use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::Groupoid;
use crate::error::{Error, Result};

/// A functor between concrete groupoids. Equality is on-the-nose equality of
/// the object and morphism maps.
#[derive(Clone, Debug)]
pub struct GroupoidFunctor {
    source: Arc<Groupoid>,
    target: Arc<Groupoid>,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctorViolation {
    WrongArity,
    Endpoints { morphism: String },
    Identity { object: String },
    Composition { g: String, f: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::WrongArity => write!(out, "object or morphism map has the wrong length"),
            FunctorViolation::Endpoints { morphism } => write!(out, "image of {morphism} has wrong endpoints"),
            FunctorViolation::Identity { object } => write!(out, "identity at {object} not preserved"),
            FunctorViolation::Composition { g, f } => write!(out, "composite {g}∘{f} not preserved"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivalenceFailure {
    NotFaithful { from: String, to: String, first: String, second: String },
    NotFull { from: String, to: String, missing: String },
    NotEssentiallySurjective { object: String },
}

impl fmt::Display for EquivalenceFailure {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceFailure::NotFaithful { first, second, .. } => {
                write!(out, "not faithful: {first} and {second} have the same image")
            }
            EquivalenceFailure::NotFull { missing, .. } => write!(out, "not full: {missing} is not in the image"),
            EquivalenceFailure::NotEssentiallySurjective { object } => {
                write!(out, "not essentially surjective: {object} is not isomorphic to an image object")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
    /// First failure found, checking faithfulness, then fullness, then
    /// essential surjectivity.
    pub witness: Option<EquivalenceFailure>,
}

impl EquivalenceReport {
    pub fn is_equivalence(&self) -> bool {
        self.faithful && self.full && self.essentially_surjective
    }
}

impl GroupoidFunctor {
    pub fn new(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self> {
        let violations = Self::check_laws(&source, &target, &object_map, &morphism_map);
        if !violations.is_empty() {
            return Err(Error::FunctorLaws(violations));
        }
        Ok(GroupoidFunctor { source, target, object_map, morphism_map })
    }

    pub(crate) fn new_unchecked(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Self {
        debug_assert!(
            source.morphism_count() > 400
                || Self::check_laws(&source, &target, &object_map, &morphism_map).is_empty(),
            "functor laws"
        );
        GroupoidFunctor { source, target, object_map, morphism_map }
    }

    pub fn check_laws(
        source: &Groupoid,
        target: &Groupoid,
        object_map: &[usize],
        morphism_map: &[usize],
    ) -> Vec<FunctorViolation> {
        if object_map.len() != source.object_count()
            || morphism_map.len() != source.morphism_count()
            || object_map.iter().any(|&x| x >= target.object_count())
            || morphism_map.iter().any(|&f| f >= target.morphism_count())
        {
            return vec![FunctorViolation::WrongArity];
        }
        let mut out = Vec::new();
        for (f, m) in source.morphisms().iter().enumerate() {
            let img = morphism_map[f];
            if target.src(img) != object_map[m.src] || target.dst(img) != object_map[m.dst] {
                out.push(FunctorViolation::Endpoints { morphism: m.id.clone() });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in 0..source.object_count() {
            if morphism_map[source.identity(x)] != target.identity(object_map[x]) {
                out.push(FunctorViolation::Identity { object: source.object_name(x).to_owned() });
            }
        }
        let mut pairs: Vec<_> = source.composition_table().iter().collect();
        pairs.sort_unstable();
        for (&(g, f), &gf) in pairs {
            if target.compose(morphism_map[g], morphism_map[f]) != Some(morphism_map[gf]) {
                out.push(FunctorViolation::Composition {
                    g: source.morphism_name(g).to_owned(),
                    f: source.morphism_name(f).to_owned(),
                });
            }
        }
        out
    }

    pub fn identity(g: &Arc<Groupoid>) -> Self {
        GroupoidFunctor {
            source: g.clone(),
            target: g.clone(),
            object_map: (0..g.object_count()).collect(),
            morphism_map: (0..g.morphism_count()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<Groupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Groupoid> {
        &self.target
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if !same(&self.target, &next.source) {
            return Err(Error::Precondition("functors are not composable".into()));
        }
        Ok(GroupoidFunctor {
            source: self.source.clone(),
            target: next.target.clone(),
            object_map: self.object_map.iter().map(|&x| next.object_map[x]).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| next.morphism_map[f]).collect(),
        })
    }

    /// Cofibrations of groupoids are the functors injective on objects.
    pub fn is_cofibration(&self) -> bool {
        self.cofibration_witness().is_none()
    }

    /// Two distinct objects with the same image, if any.
    pub fn cofibration_witness(&self) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.target.object_count()];
        for (x, &y) in self.object_map.iter().enumerate() {
            if seen[y] != usize::MAX {
                return Some((seen[y], x));
            }
            seen[y] = x;
        }
        None
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let mut seen = vec![false; self.target.morphism_count()];
        self.morphism_map.iter().all(|&f| !std::mem::replace(&mut seen[f], true))
    }

    pub fn is_equivalence(&self) -> bool {
        self.equivalence_report().is_equivalence()
    }

    /// Full, faithful and essentially surjective, decided by enumerating every
    /// hom-set and the components of the target.
    pub fn equivalence_report(&self) -> EquivalenceReport {
        let (s, t) = (&*self.source, &*self.target);
        let mut report = EquivalenceReport { faithful: true, full: true, essentially_surjective: true, witness: None };
        let mut not_full = None;
        for x in 0..s.object_count() {
            for y in 0..s.object_count() {
                let (fx, fy) = (self.object_map[x], self.object_map[y]);
                let target_hom = t.hom(fx, fy);
                let mut hit = vec![None; target_hom.len()];
                for &f in s.hom(x, y) {
                    let pos = target_hom.iter().position(|&g| g == self.morphism_map[f]).expect("endpoints");
                    if let Some(prev) = hit[pos] {
                        if report.faithful {
                            report.witness = Some(EquivalenceFailure::NotFaithful {
                                from: s.object_name(x).to_owned(),
                                to: s.object_name(y).to_owned(),
                                first: s.morphism_name(prev).to_owned(),
                                second: s.morphism_name(f).to_owned(),
                            });
                        }
                        report.faithful = false;
                    } else {
                        hit[pos] = Some(f);
                    }
                }
                if let Some(pos) = hit.iter().position(Option::is_none) {
                    report.full = false;
                    not_full.get_or_insert_with(|| EquivalenceFailure::NotFull {
                        from: s.object_name(x).to_owned(),
                        to: s.object_name(y).to_owned(),
                        missing: t.morphism_name(target_hom[pos]).to_owned(),
                    });
                }
            }
        }
        let labels = t.component_labels();
        let mut covered = vec![false; labels.iter().copied().max().map_or(0, |m| m + 1)];
        for &y in &self.object_map {
            covered[labels[y]] = true;
        }
        let missing = (0..t.object_count()).find(|&y| !covered[labels[y]]);
        if missing.is_some() {
            report.essentially_surjective = false;
        }
        if report.witness.is_none() {
            report.witness = not_full.or_else(|| {
                missing.map(|y| EquivalenceFailure::NotEssentiallySurjective { object: t.object_name(y).to_owned() })
            });
        }
        report
    }

    /// `f ⊔ g : A ⊔ B → A' ⊔ B'` for the disjoint unions built by
    /// [`Groupoid::disjoint_union`].
    pub fn sum(parts: &[&GroupoidFunctor]) -> GroupoidFunctor {
        let source = Arc::new(Groupoid::disjoint_union(&parts.iter().map(|p| &*p.source).collect::<Vec<_>>()));
        let target = Arc::new(Groupoid::disjoint_union(&parts.iter().map(|p| &*p.target).collect::<Vec<_>>()));
        let mut object_map = Vec::new();
        let mut morphism_map = Vec::new();
        let (mut oo, mut mo) = (0, 0);
        for p in parts {
            object_map.extend(p.object_map.iter().map(|&x| x + oo));
            morphism_map.extend(p.morphism_map.iter().map(|&f| f + mo));
            oo += p.target.object_count();
            mo += p.target.morphism_count();
        }
        GroupoidFunctor::new_unchecked(source, target, object_map, morphism_map)
    }

    /// The functor out of a disjoint union that restricts to `parts[i]` on
    /// the `i`-th summand. All parts must share a target.
    pub fn copair(parts: &[&GroupoidFunctor]) -> Result<GroupoidFunctor> {
        let target = parts
            .first()
            .map(|p| p.target.clone())
            .ok_or_else(|| Error::Precondition("copair of no functors".into()))?;
        if parts.iter().any(|p| !same(&p.target, &target)) {
            return Err(Error::Precondition("copair parts must share a target".into()));
        }
        let source = Arc::new(Groupoid::disjoint_union(&parts.iter().map(|p| &*p.source).collect::<Vec<_>>()));
        Ok(GroupoidFunctor::new_unchecked(
            source,
            target,
            parts.iter().flat_map(|p| p.object_map.iter().copied()).collect(),
            parts.iter().flat_map(|p| p.morphism_map.iter().copied()).collect(),
        ))
    }
}

pub(crate) fn same(a: &Arc<Groupoid>, b: &Arc<Groupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for GroupoidFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.object_map == other.object_map
            && self.morphism_map == other.morphism_map
            && same(&self.source, &other.source)
            && same(&self.target, &other.target)
    }
}

impl Eq for GroupoidFunctor {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteGroup;

    fn collapse(g: &Arc<Groupoid>) -> GroupoidFunctor {
        let point = Arc::new(Groupoid::point());
        GroupoidFunctor::new(g.clone(), point, vec![0; g.object_count()], vec![0; g.morphism_count()]).unwrap()
    }

    #[test]
    fn cofibration_examples() {
        let z2 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        assert!(GroupoidFunctor::identity(&z2).is_cofibration());
        let cd2 = Arc::new(Groupoid::codiscrete(2));
        assert!(!collapse(&cd2).is_cofibration());
        let big = Arc::new(Groupoid::with_group(&Groupoid::codiscrete(2), &FiniteGroup::cyclic(2)));
        // * ↦ (a,*), r ↦ (a>a,r)
        let e = big.morphism_index("(a>a,e)").unwrap();
        let r = big.morphism_index("(a>a,r)").unwrap();
        let inc = GroupoidFunctor::new(z2, big, vec![0], vec![e, r]).unwrap();
        assert!(inc.is_cofibration());
    }

    #[test]
    fn equivalence_examples() {
        let cd2 = Arc::new(Groupoid::codiscrete(2));
        assert!(collapse(&cd2).is_equivalence());
        let z2 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        let r = collapse(&z2).equivalence_report();
        assert!(!r.is_equivalence());
        assert!(!r.faithful && r.full && r.essentially_surjective);
        assert!(matches!(r.witness, Some(EquivalenceFailure::NotFaithful { .. })));
        let point = Arc::new(Groupoid::point());
        let inc = GroupoidFunctor::new(point, cd2, vec![0], vec![0]).unwrap();
        assert!(inc.is_equivalence());
    }

    #[test]
    fn essential_surjectivity_witness() {
        let point = Arc::new(Groupoid::point());
        let d2 = Arc::new(Groupoid::discrete(2));
        let inc = GroupoidFunctor::new(point, d2, vec![1], vec![1]).unwrap();
        let r = inc.equivalence_report();
        assert_eq!(
            r.witness,
            Some(EquivalenceFailure::NotEssentiallySurjective { object: "a".into() })
        );
    }

    #[test]
    fn laws_are_checked() {
        let z2 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        let z3 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(3)));
        // r ↦ r is not a homomorphism ℤ/2 → ℤ/3
        let err = GroupoidFunctor::new(z2, z3, vec![0], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::FunctorLaws(_)));
    }
}
