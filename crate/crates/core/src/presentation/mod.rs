//! Groupoids given by generating arrows and relations between composable
//! words. Pushouts of finite groupoids land here, since they can be infinite;
//! [`PresentedGroupoid::concretize`] turns a presentation back into a finite
//! table when its realization is small enough.

mod concretize;
pub mod group;
pub(crate) mod pushout;

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use concretize::{Concretized, Realization};
pub use group::{GroupPresentation, Letter};
pub use pushout::{pushout_along_cofibration, GeneratorMap, Pushout};

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidFunctor, MorphismJson};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A word of generators, outermost first: `[g, f]` is `g∘f`. The empty word is
/// an identity.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroupoid {
    objects: Vec<String>,
    generators: Vec<Generator>,
    relations: Vec<(Word, Word)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedJson {
    pub objects: Vec<String>,
    pub generators: Vec<MorphismJson>,
    pub relations: Vec<[Vec<String>; 2]>,
}

impl PresentedGroupoid {
    pub fn new(objects: Vec<String>, generators: Vec<Generator>, relations: Vec<(Word, Word)>) -> Result<Self> {
        let p = PresentedGroupoid { objects, generators, relations };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for o in &self.objects {
            if seen.insert(o.as_str(), ()).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate object `{o}`")));
            }
        }
        let mut seen = HashMap::new();
        for g in &self.generators {
            if seen.insert(g.id.as_str(), ()).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{}`", g.id)));
            }
            if g.src >= self.objects.len() || g.dst >= self.objects.len() {
                return Err(Error::InvalidPresentation(format!("generator `{}` has an unknown endpoint", g.id)));
            }
        }
        for (k, (a, b)) in self.relations.iter().enumerate() {
            let ea = self.endpoints(a)?;
            let eb = self.endpoints(b)?;
            let ok = match (ea, eb) {
                (Some(x), Some(y)) => x == y,
                (Some((s, t)), None) | (None, Some((s, t))) => s == t,
                (None, None) => true,
            };
            if !ok {
                return Err(Error::InvalidPresentation(format!("relation {k} has words with different endpoints")));
            }
        }
        Ok(())
    }

    /// Endpoints of a nonempty word; `None` for the empty word.
    pub fn endpoints(&self, word: &[usize]) -> Result<Option<(usize, usize)>> {
        let Some(&last) = word.last() else { return Ok(None) };
        let gen = |i: usize| {
            self.generators
                .get(i)
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator index {i}")))
        };
        let src = gen(last)?.src;
        let mut at = src;
        for &g in word.iter().rev() {
            let g = gen(g)?;
            if g.src != at {
                return Err(Error::InvalidPresentation(format!("word is not composable at `{}`", g.id)));
            }
            at = g.dst;
        }
        Ok(Some((src, at)))
    }

    /// Every morphism a generator, the composition table and identities as
    /// relations.
    pub fn from_groupoid(g: &Groupoid) -> Self {
        let generators =
            g.morphisms().iter().map(|m| Generator { id: m.id.clone(), src: m.src, dst: m.dst }).collect();
        let mut relations: Vec<(Word, Word)> = (0..g.object_count()).map(|x| (vec![g.identity(x)], vec![])).collect();
        let mut table: Vec<_> = g.composition_table().iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        table.sort_unstable();
        for (a, b, c) in table {
            if !g.is_identity(a) && !g.is_identity(b) {
                relations.push((vec![a, b], vec![c]));
            }
        }
        PresentedGroupoid { objects: g.objects().to_vec(), generators, relations }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// Object → component of the underlying graph of generators.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.generators {
            let (a, b) = (find(&mut parent, g.src), find(&mut parent, g.dst));
            parent[a.max(b)] = a.min(b);
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            let r = find(&mut parent, x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[x] = label[r];
        }
        label
    }

    pub fn from_json(raw: &PresentedJson) -> Result<Self> {
        let objects = raw.objects.clone();
        let obj = |name: &str| {
            objects.iter().position(|o| o == name).ok_or_else(|| Error::UnknownObject(name.to_owned()))
        };
        let generators = raw
            .generators
            .iter()
            .map(|m| Ok(Generator { id: m.id.clone(), src: obj(&m.src)?, dst: obj(&m.dst)? }))
            .collect::<Result<Vec<_>>>()?;
        let index: HashMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.id.as_str(), i)).collect();
        let word = |w: &[String]| {
            w.iter()
                .map(|id| {
                    index
                        .get(id.as_str())
                        .copied()
                        .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator `{id}`")))
                })
                .collect::<Result<Vec<_>>>()
        };
        let relations = raw.relations.iter().map(|[a, b]| Ok((word(a)?, word(b)?))).collect::<Result<Vec<_>>>()?;
        Self::new(objects, generators, relations)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> PresentedJson {
        let name = |w: &Word| w.iter().map(|&g| self.generators[g].id.clone()).collect();
        PresentedJson {
            objects: self.objects.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| MorphismJson {
                    id: g.id.clone(),
                    src: self.objects[g.src].clone(),
                    dst: self.objects[g.dst].clone(),
                })
                .collect(),
            relations: self.relations.iter().map(|(a, b)| [name(a), name(b)]).collect(),
        }
    }
}

/// A functor from a presented groupoid to a concrete one, given on objects
/// and generators.
#[derive(Clone, Debug)]
pub struct PresentedFunctor {
    source: Arc<PresentedGroupoid>,
    target: Arc<Groupoid>,
    object_map: Vec<usize>,
    generator_map: Vec<usize>,
}

impl PresentedFunctor {
    /// Checks endpoints and that every relation holds in the target.
    pub fn new(
        source: Arc<PresentedGroupoid>,
        target: Arc<Groupoid>,
        object_map: Vec<usize>,
        generator_map: Vec<usize>,
    ) -> Result<Self> {
        if object_map.len() != source.object_count() || generator_map.len() != source.generators.len() {
            return Err(Error::Precondition("object or generator map has the wrong length".into()));
        }
        for (g, &img) in source.generators.iter().zip(&generator_map) {
            if target.src(img) != object_map[g.src] || target.dst(img) != object_map[g.dst] {
                return Err(Error::Precondition(format!("image of generator `{}` has wrong endpoints", g.id)));
            }
        }
        let f = PresentedFunctor { source, target, object_map, generator_map };
        for (k, (a, b)) in f.source.relations.iter().enumerate() {
            let at = f.source.endpoints(a)?.or(f.source.endpoints(b)?).map_or(0, |e| e.0);
            if f.evaluate(a, at) != f.evaluate(b, at) {
                return Err(Error::Precondition(format!("relation {k} does not hold in the target")));
            }
        }
        Ok(f)
    }

    pub fn source(&self) -> &Arc<PresentedGroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Groupoid> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn generator_map(&self) -> &[usize] {
        &self.generator_map
    }

    /// Image of a word starting at `src` (needed for the empty word).
    pub fn evaluate(&self, word: &[usize], src: usize) -> usize {
        let t = &self.target;
        word.iter()
            .rev()
            .fold(t.identity(self.object_map[src]), |acc, &g| t.compose(self.generator_map[g], acc).expect("composable"))
    }

    /// Image of a word with formal inverses.
    pub fn evaluate_letters(&self, word: &[Letter], src: usize) -> usize {
        let t = &self.target;
        word.iter().rev().fold(t.identity(self.object_map[src]), |acc, l| {
            let m = self.generator_map[l.generator];
            let m = if l.inverse { t.inverse(m) } else { m };
            t.compose(m, acc).expect("composable")
        })
    }

    pub fn is_injective_on_objects(&self) -> bool {
        self.object_collision().is_none()
    }

    /// Two distinct objects with the same image, if any.
    pub fn object_collision(&self) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.target.object_count()];
        for (x, &y) in self.object_map.iter().enumerate() {
            if seen[y] != usize::MAX {
                return Some((seen[y], x));
            }
            seen[y] = x;
        }
        None
    }

    /// Precomposition with a generator map out of a concrete groupoid.
    pub fn after(&self, map: &GeneratorMap, source: &Arc<Groupoid>) -> Result<GroupoidFunctor> {
        GroupoidFunctor::new(
            source.clone(),
            self.target.clone(),
            map.object_map.iter().map(|&x| self.object_map[x]).collect(),
            map.generator_map.iter().map(|&g| self.generator_map[g]).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteGroup;

    #[test]
    fn from_groupoid_round_trips_through_json() {
        let g = Groupoid::with_group(&Groupoid::codiscrete(2), &FiniteGroup::cyclic(2));
        let p = PresentedGroupoid::from_groupoid(&g);
        let q = PresentedGroupoid::from_json_str(&serde_json::to_string(&p.to_json()).unwrap()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.generators().len(), 8);
    }

    #[test]
    fn rejects_relations_with_mismatched_endpoints() {
        let raw = r#"{"objects": ["a", "b"],
            "generators": [{"id": "f", "src": "a", "dst": "b"}],
            "relations": [[["f"], []]]}"#;
        assert!(matches!(PresentedGroupoid::from_json_str(raw), Err(Error::InvalidPresentation(_))));
        let raw = r#"{"objects": ["a"],
            "generators": [{"id": "f", "src": "a", "dst": "b"}],
            "relations": []}"#;
        assert!(matches!(PresentedGroupoid::from_json_str(raw), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn functor_out_of_a_presentation_checks_relations() {
        // s∘s = id, sent into Z/3: fails; into Z/2: fine
        let p = Arc::new(
            PresentedGroupoid::new(
                vec!["*".into()],
                vec![Generator { id: "s".into(), src: 0, dst: 0 }],
                vec![(vec![0, 0], vec![])],
            )
            .unwrap(),
        );
        let z3 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(3)));
        let z2 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        assert!(PresentedFunctor::new(p.clone(), z3, vec![0], vec![1]).is_err());
        assert!(PresentedFunctor::new(p, z2, vec![0], vec![1]).is_ok());
    }
}
