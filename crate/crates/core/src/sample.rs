//! Finite full subcategories of groupoids, with every functor enumerated.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{enumerate_functors, FunctorFilter, Groupoid, GroupoidFunctor};

pub const MAX_OBJECTS: usize = 4;
pub const MAX_MORPHISMS: usize = 24;

#[derive(Clone, Debug)]
pub struct SampleMorphism {
    pub src: usize,
    pub dst: usize,
    pub functor: GroupoidFunctor,
    pub is_weak: bool,
    pub is_cofibration: bool,
}

/// Groupoids with all functors between them. Morphisms are numbered by
/// source, then target, then enumeration order.
#[derive(Clone, Debug)]
pub struct FiniteSampleCategory {
    names: Vec<String>,
    groupoids: Vec<Arc<Groupoid>>,
    morphisms: Vec<SampleMorphism>,
    hom: Vec<Vec<Vec<usize>>>,
    identities: Vec<usize>,
    lookup: HashMap<(usize, usize, Vec<usize>, Vec<usize>), usize>,
}

pub fn enumerate_sample(groupoids: &[(String, Groupoid)]) -> Result<FiniteSampleCategory> {
    for (name, g) in groupoids {
        if g.object_count() > MAX_OBJECTS || g.morphism_count() > MAX_MORPHISMS {
            return Err(Error::SizeBound(format!(
                "`{name}` has {} objects and {} morphisms (limits {MAX_OBJECTS} and {MAX_MORPHISMS})",
                g.object_count(),
                g.morphism_count()
            )));
        }
    }
    let names: Vec<String> = groupoids.iter().map(|(n, _)| n.clone()).collect();
    let arcs: Vec<Arc<Groupoid>> = groupoids.iter().map(|(_, g)| Arc::new(g.clone())).collect();
    let n = arcs.len();
    let mut morphisms = Vec::new();
    let mut hom = vec![vec![Vec::new(); n]; n];
    let mut lookup = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            for f in enumerate_functors(&arcs[i], &arcs[j], FunctorFilter::default()) {
                lookup.insert((i, j, f.object_map().to_vec(), f.morphism_map().to_vec()), morphisms.len());
                hom[i][j].push(morphisms.len());
                morphisms.push(SampleMorphism {
                    src: i,
                    dst: j,
                    is_weak: f.is_equivalence(),
                    is_cofibration: f.is_cofibration(),
                    functor: f,
                });
            }
        }
    }
    let identities = (0..n)
        .map(|i| {
            let id = GroupoidFunctor::identity(&arcs[i]);
            lookup[&(i, i, id.object_map().to_vec(), id.morphism_map().to_vec())]
        })
        .collect();
    Ok(FiniteSampleCategory { names, groupoids: arcs, morphisms, hom, identities, lookup })
}

impl FiniteSampleCategory {
    pub fn object_count(&self) -> usize {
        self.groupoids.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn groupoid(&self, i: usize) -> &Arc<Groupoid> {
        &self.groupoids[i]
    }

    pub fn morphism(&self, m: usize) -> &SampleMorphism {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[SampleMorphism] {
        &self.morphisms
    }

    pub fn hom(&self, i: usize, j: usize) -> &[usize] {
        &self.hom[i][j]
    }

    pub fn identity(&self, i: usize) -> usize {
        self.identities[i]
    }

    /// `g ∘ f`, or `None` when not composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let (fm, gm) = (&self.morphisms[f], &self.morphisms[g]);
        if fm.dst != gm.src {
            return None;
        }
        let h = fm.functor.then(&gm.functor).ok()?;
        self.index_of(fm.src, gm.dst, &h)
    }

    /// Index of a functor between sample groupoids `i → j`.
    pub fn index_of(&self, i: usize, j: usize, f: &GroupoidFunctor) -> Option<usize> {
        self.lookup.get(&(i, j, f.object_map().to_vec(), f.morphism_map().to_vec())).copied()
    }

    /// `name: source → target`, with the functor's object map.
    pub fn describe(&self, m: usize) -> String {
        let s = &self.morphisms[m];
        let (a, b) = (&self.groupoids[s.src], &self.groupoids[s.dst]);
        let objects: Vec<String> = (0..a.object_count())
            .map(|x| format!("{}↦{}", a.object_name(x), b.object_name(s.functor.on_object(x))))
            .collect();
        format!("{} → {} [{}] #{m}", self.names[s.src], self.names[s.dst], objects.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sample(names: &[&str]) -> FiniteSampleCategory {
        enumerate_sample(&names.iter().map(|n| (n.to_string(), fixtures::groupoid(n).unwrap())).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn functor_counts() {
        let s = sample(&["B1"]);
        assert_eq!((s.object_count(), s.morphism_count()), (1, 1));
        let s = sample(&["BZ2"]);
        assert_eq!(s.morphism_count(), 2);
        let s = sample(&["B1", "codiscrete2"]);
        let counts: Vec<usize> = [(1, 1), (0, 1), (1, 0), (0, 0)].iter().map(|&(i, j)| s.hom(i, j).len()).collect();
        // Fun(cd2, cd2): an object map determines the functor, so 4
        assert_eq!(counts, vec![4, 2, 1, 1]);
    }

    #[test]
    fn composition_is_closed_and_unital() {
        let s = sample(&["B1", "BZ2", "codiscrete2"]);
        for f in 0..s.morphism_count() {
            let m = s.morphism(f);
            assert_eq!(s.compose(s.identity(m.dst), f), Some(f));
            assert_eq!(s.compose(f, s.identity(m.src)), Some(f));
            for g in 0..s.morphism_count() {
                assert_eq!(s.compose(g, f).is_some(), s.morphism(g).src == m.dst);
            }
        }
    }

    #[test]
    fn size_bound() {
        let big = fixtures::groupoid("codiscrete5").unwrap();
        let err = enumerate_sample(&[("codiscrete5".into(), big)]).unwrap_err();
        assert!(matches!(err, Error::SizeBound(m) if m.contains("codiscrete5")));
    }
}
