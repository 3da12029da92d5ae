use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::{Generator, PresentedFunctor, PresentedGroupoid, Word};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidFunctor};

/// A map from a concrete groupoid into a presentation sending every morphism
/// to a single generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorMap {
    pub object_map: Vec<usize>,
    pub generator_map: Vec<usize>,
}

impl GeneratorMap {
    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = HashSet::new();
        self.object_map.iter().all(|x| seen.insert(*x))
    }
}

/// `B ⊔_A C` for a cofibration `i: A ↣ B` and any `f: A → C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub presentation: Arc<PresentedGroupoid>,
    /// `B → B ⊔_A C`.
    pub from_left: GeneratorMap,
    /// `C → B ⊔_A C`.
    pub from_right: GeneratorMap,
    cofibration: GroupoidFunctor,
    other: GroupoidFunctor,
}

/// Objects are those of `B` outside the image of `A`, followed by those of
/// `C`. Generators are the morphisms of `B` and then of `C`; relations are
/// the composition tables of both plus `i(a) = f(a)` for every morphism `a`
/// of `A`. Names from `C` are kept; a name from `B` that clashes gets primes.
pub fn pushout_along_cofibration(i: &GroupoidFunctor, f: &GroupoidFunctor) -> Result<Pushout> {
    if let Some((x, y)) = i.cofibration_witness() {
        let a = i.source();
        return Err(Error::NotACofibration(format!(
            "objects {} and {} have the same image",
            a.object_name(x),
            a.object_name(y)
        )));
    }
    if !crate::groupoid::same_groupoid(i.source(), f.source()) {
        return Err(Error::Precondition("the two legs of a pushout must share a source".into()));
    }
    let (b, c) = (i.target(), f.target());

    let mut hit = vec![None; b.object_count()];
    for (a, &y) in i.object_map().iter().enumerate() {
        hit[y] = Some(a);
    }
    let mut taken: HashSet<String> = c.objects().iter().cloned().collect();
    let mut objects = Vec::new();
    let mut left_objects = vec![0; b.object_count()];
    let kept = (0..b.object_count()).filter(|&y| hit[y].is_none()).count();
    for y in 0..b.object_count() {
        match hit[y] {
            Some(a) => left_objects[y] = kept + f.on_object(a),
            None => {
                left_objects[y] = objects.len();
                objects.push(fresh(b.object_name(y), &mut taken));
            }
        }
    }
    objects.extend(c.objects().iter().cloned());
    let right_objects: Vec<usize> = (0..c.object_count()).map(|x| kept + x).collect();

    let mut taken: HashSet<String> = c.morphisms().iter().map(|m| m.id.clone()).collect();
    let mut generators: Vec<Generator> = b
        .morphisms()
        .iter()
        .map(|m| Generator { id: fresh(&m.id, &mut taken), src: left_objects[m.src], dst: left_objects[m.dst] })
        .collect();
    let nb = generators.len();
    generators.extend(
        c.morphisms().iter().map(|m| Generator { id: m.id.clone(), src: right_objects[m.src], dst: right_objects[m.dst] }),
    );

    let shift = |w: Word, by: usize| -> Word { w.into_iter().map(|g| g + by).collect() };
    let mut relations = Vec::new();
    for (a, bw) in PresentedGroupoid::from_groupoid(b).relations {
        relations.push((a, bw));
    }
    for (x, y) in PresentedGroupoid::from_groupoid(c).relations {
        relations.push((shift(x, nb), shift(y, nb)));
    }
    for m in 0..i.source().morphism_count() {
        relations.push((vec![i.on_morphism(m)], vec![nb + f.on_morphism(m)]));
    }

    let presentation = Arc::new(PresentedGroupoid::new(objects, generators, relations)?);
    Ok(Pushout {
        presentation,
        from_left: GeneratorMap { object_map: left_objects, generator_map: (0..nb).collect() },
        from_right: GeneratorMap { object_map: right_objects, generator_map: (nb..nb + c.morphism_count()).collect() },
        cofibration: i.clone(),
        other: f.clone(),
    })
}

pub(crate) fn fresh(name: &str, taken: &mut HashSet<String>) -> String {
    let mut n = name.to_owned();
    while taken.contains(&n) {
        n.push('\'');
    }
    taken.insert(n.clone());
    n
}

impl Pushout {
    pub fn cofibration(&self) -> &GroupoidFunctor {
        &self.cofibration
    }

    pub fn other_leg(&self) -> &GroupoidFunctor {
        &self.other
    }

    /// The map out of the pushout determined by a cocone `left: B → T`,
    /// `right: C → T` with `left∘i = right∘f`.
    pub fn induced(&self, left: &GroupoidFunctor, right: &GroupoidFunctor) -> Result<PresentedFunctor> {
        let (b, c) = (self.cofibration.target(), self.other.target());
        if !crate::groupoid::same_groupoid(left.source(), b) || !crate::groupoid::same_groupoid(right.source(), c) {
            return Err(Error::Precondition("cocone legs have the wrong sources".into()));
        }
        if !crate::groupoid::same_groupoid(left.target(), right.target()) {
            return Err(Error::Precondition("cocone legs have different targets".into()));
        }
        if self.cofibration.then(left)? != self.other.then(right)? {
            return Err(Error::Precondition("cocone does not commute".into()));
        }
        let p = &self.presentation;
        let mut object_map = vec![0; p.object_count()];
        for (y, &o) in self.from_left.object_map.iter().enumerate() {
            object_map[o] = left.on_object(y);
        }
        for (x, &o) in self.from_right.object_map.iter().enumerate() {
            object_map[o] = right.on_object(x);
        }
        let mut generator_map = vec![0; p.generators().len()];
        for (m, &g) in self.from_left.generator_map.iter().enumerate() {
            generator_map[g] = left.on_morphism(m);
        }
        for (m, &g) in self.from_right.generator_map.iter().enumerate() {
            generator_map[g] = right.on_morphism(m);
        }
        PresentedFunctor::new(p.clone(), left.target().clone(), object_map, generator_map)
    }

    pub fn left(&self) -> &Arc<Groupoid> {
        self.cofibration.target()
    }

    pub fn right(&self) -> &Arc<Groupoid> {
        self.other.target()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{enumerate_functors, find_isomorphism, FiniteGroup, FunctorFilter};

    fn arc(g: Groupoid) -> Arc<Groupoid> {
        Arc::new(g)
    }

    /// The identity-on-objects inclusion of the discrete groupoid.
    fn discrete_into(g: &Arc<Groupoid>) -> GroupoidFunctor {
        let d = arc(Groupoid::discrete(g.object_count()));
        let n = g.object_count();
        GroupoidFunctor::new(d, g.clone(), (0..n).collect(), (0..n).map(|x| g.identity(x)).collect()).unwrap()
    }

    #[test]
    fn circle_has_infinite_cyclic_vertex_group() {
        let cd2 = arc(Groupoid::codiscrete(2));
        let i = discrete_into(&cd2);
        let p = pushout_along_cofibration(&i, &i).unwrap();
        assert_eq!(p.presentation.object_count(), 2);
        let groups = p.presentation.vertex_group_presentations();
        assert_eq!(groups.len(), 1);
        assert_eq!((groups[0].generators, groups[0].relators.len()), (1, 0));
        assert!(!p.presentation.concretize(1000).unwrap().is_concrete());

        // The loop a→b (left copy), b→a (right copy) maps onto a generator of
        // Z/n for every n, so it has infinite order.
        let a_to_b = cd2.morphism_index("a>b").unwrap();
        let b_to_a = cd2.morphism_index("b>a").unwrap();
        for n in 2..8 {
            let target = arc(Groupoid::with_group(&cd2, &FiniteGroup::cyclic(n)));
            let shifted = |m: usize, k: usize| target.morphism_index(&format!("({},{})", cd2.morphism_name(m), if k == 0 { "e".to_string() } else if k == 1 { "r".to_string() } else { format!("r^{k}") })).unwrap();
            let objects: Vec<usize> = (0..2).map(|x| target.object_index(&format!("({},*)", cd2.object_name(x))).unwrap()).collect();
            let left = GroupoidFunctor::new(
                cd2.clone(),
                target.clone(),
                objects.clone(),
                (0..4).map(|m| if m == a_to_b { shifted(m, 1) } else if m == b_to_a { shifted(m, n - 1) } else { shifted(m, 0) }).collect(),
            )
            .unwrap();
            let right = GroupoidFunctor::new(cd2.clone(), target.clone(), objects, (0..4).map(|m| shifted(m, 0)).collect()).unwrap();
            let induced = p.induced(&left, &right).unwrap();
            let lg = p.from_left.generator_map[a_to_b];
            let rg = p.from_right.generator_map[b_to_a];
            let start = p.presentation.generators()[lg].src;
            let lp = induced.evaluate(&[rg, lg], start);
            let mut x = lp;
            let mut order = 1;
            while !target.is_identity(x) {
                x = target.compose(lp, x).unwrap();
                order += 1;
            }
            assert_eq!(order, n);
        }
    }

    #[test]
    fn pushout_along_identity_is_the_other_leg() {
        let c = arc(Groupoid::with_group(&Groupoid::codiscrete(2), &FiniteGroup::cyclic(3)));
        let a = arc(Groupoid::classifying(&FiniteGroup::cyclic(3)));
        let f = enumerate_functors(&a, &c, FunctorFilter::default()).into_iter().nth(1).unwrap();
        let p = pushout_along_cofibration(&GroupoidFunctor::identity(&a), &f).unwrap();
        let r = p.presentation.concretize(1000).unwrap().realization().unwrap();
        assert!(find_isomorphism(r.groupoid(), &c).is_some());
        assert!(r.pull(&c, &p.from_right).is_equivalence());
    }

    #[test]
    fn gluing_a_point_into_bz2() {
        let b1 = arc(Groupoid::point());
        let bz2 = arc(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        let i = GroupoidFunctor::new(b1.clone(), bz2.clone(), vec![0], vec![0]).unwrap();
        let p = pushout_along_cofibration(&i, &GroupoidFunctor::identity(&b1)).unwrap();
        let r = p.presentation.concretize(100).unwrap().realization().unwrap();
        assert!(find_isomorphism(r.groupoid(), &bz2).is_some());
    }

    #[test]
    fn rejects_non_cofibrations() {
        let cd2 = arc(Groupoid::codiscrete(2));
        let b1 = arc(Groupoid::point());
        let collapse = GroupoidFunctor::new(cd2.clone(), b1, vec![0, 0], vec![0; 4]).unwrap();
        let err = pushout_along_cofibration(&collapse, &GroupoidFunctor::identity(&cd2)).unwrap_err();
        assert!(matches!(err, Error::NotACofibration(_)));
    }

    #[test]
    fn gluing_an_arrow_into_a_loop() {
        let cd2 = arc(Groupoid::codiscrete(2));
        let bz2 = arc(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        let i = discrete_into(&cd2);
        let d2 = i.source().clone();
        let f = enumerate_functors(&d2, &bz2, FunctorFilter::default()).remove(0);
        let p = pushout_along_cofibration(&i, &f).unwrap();
        assert!(p.from_right.is_injective_on_objects());
        // both ends of a>b land on the one object: Z/2 free product with Z
        assert_eq!(p.presentation.object_count(), 1);
        let g = &p.presentation.vertex_group_presentations()[0];
        assert_eq!((g.generators, g.relators.len()), (2, 1));
        assert!(!p.presentation.concretize(1000).unwrap().is_concrete());
    }
}
