use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::model::Predicate;
use crate::sample::FiniteSampleCategory;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub name: String,
}

/// A finite category with composition stored for composable pairs only.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    arrow_ids: Vec<usize>,
    outgoing: Vec<Vec<usize>>,
    composite: HashMap<(usize, usize), usize>,
}

/// Which sample functors a marked subcategory keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Marking {
    All,
    Weak,
    Cofibrations,
    AcyclicCofibrations,
    /// Weak equivalences that satisfy the predicate.
    WeakAnd(Predicate),
}

impl Marking {
    pub fn keeps(self, sample: &FiniteSampleCategory, m: usize) -> bool {
        let s = sample.morphism(m);
        match self {
            Marking::All => true,
            Marking::Weak => s.is_weak,
            Marking::Cofibrations => s.is_cofibration,
            Marking::AcyclicCofibrations => s.is_weak && s.is_cofibration,
            Marking::WeakAnd(p) => s.is_weak && p.holds(&s.functor),
        }
    }
}

impl FiniteCategory {
    /// `compose(g, f) = g ∘ f` must be defined exactly on pairs with
    /// `dst f = src g`. Unit and associativity laws are checked.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let n = arrows.len();
        if identities.len() != objects.len()
            || identities.iter().enumerate().any(|(x, &i)| i >= n || arrows[i].src != x || arrows[i].dst != x)
            || arrows.iter().any(|a| a.src >= objects.len() || a.dst >= objects.len())
        {
            return Err(Error::Structural("identities or arrow endpoints do not fit the objects".into()));
        }
        let mut outgoing = vec![Vec::new(); objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.src].push(i);
        }
        let mut composite = HashMap::new();
        for f in 0..n {
            for &g in &outgoing[arrows[f].dst] {
                let h = compose(g, f).ok_or_else(|| Error::Structural(format!("{} ∘ {} is undefined", arrows[g].name, arrows[f].name)))?;
                if h >= n || arrows[h].src != arrows[f].src || arrows[h].dst != arrows[g].dst {
                    return Err(Error::Structural(format!("{} ∘ {} has the wrong endpoints", arrows[g].name, arrows[f].name)));
                }
                composite.insert((g, f), h);
            }
        }
        let arrow_ids = (0..n).collect();
        let cat = FiniteCategory { objects, arrows, identities, arrow_ids, outgoing, composite };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<()> {
        for (f, a) in self.arrows.iter().enumerate() {
            if self.compose(f, self.identities[a.src]) != Some(f) || self.compose(self.identities[a.dst], f) != Some(f) {
                return Err(Error::Structural(format!("identities do not act trivially on {}", a.name)));
            }
            for &g in &self.outgoing[a.dst] {
                let gf = self.composite[&(g, f)];
                for &h in &self.outgoing[self.arrows[g].dst] {
                    if self.composite[&(h, gf)] != self.composite[&(self.composite[&(h, g)], f)] {
                        return Err(Error::Structural(format!("composition is not associative at {}", a.name)));
                    }
                }
            }
        }
        Ok(())
    }

    /// A groupoid viewed as a category.
    pub fn from_groupoid(g: &Groupoid) -> Self {
        let arrows = (0..g.morphism_count())
            .map(|f| Arrow { src: g.src(f), dst: g.dst(f), name: g.morphism_name(f).to_owned() })
            .collect();
        let identities = (0..g.object_count()).map(|x| g.identity(x)).collect();
        FiniteCategory::new(g.objects().to_vec(), arrows, identities, |a, b| g.compose(a, b)).expect("groupoids are categories")
    }

    /// The poset `0 < 1 < … < n`.
    pub fn ordinal(n: usize) -> Self {
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                index.insert((i, j), arrows.len());
                arrows.push(Arrow { src: i, dst: j, name: format!("{i}≤{j}") });
            }
        }
        let identities = (0..=n).map(|i| index[&(i, i)]).collect();
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.dst)).collect();
        FiniteCategory::new((0..=n).map(|i| i.to_string()).collect(), arrows, identities, |g, f| {
            (ends[f].1 == ends[g].0).then(|| index[&(ends[f].0, ends[g].1)])
        })
        .expect("posets are categories")
    }

    /// The wide subcategory of the sample on the marked functors. Arrow `i`
    /// of the result is sample morphism `arrow_id(i)`.
    pub fn marked(sample: &FiniteSampleCategory, marking: Marking) -> Result<Self> {
        let kept: Vec<usize> = (0..sample.morphism_count()).filter(|&m| marking.keeps(sample, m)).collect();
        let position: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut identities = Vec::with_capacity(sample.object_count());
        for x in 0..sample.object_count() {
            let id = sample.identity(x);
            identities.push(*position.get(&id).ok_or_else(|| Error::Precondition(format!("{marking:?} does not contain the identity of {}", sample.name(x))))?);
        }
        let arrows = kept
            .iter()
            .map(|&m| {
                let s = sample.morphism(m);
                Arrow { src: s.src, dst: s.dst, name: format!("#{m}") }
            })
            .collect();
        let objects = (0..sample.object_count()).map(|x| sample.name(x).to_owned()).collect();
        let mut not_closed = None;
        let cat = FiniteCategory::new(objects, arrows, identities, |g, f| {
            let h = sample.compose(kept[g], kept[f])?;
            let found = position.get(&h).copied();
            if found.is_none() {
                not_closed.get_or_insert((kept[g], kept[f]));
            }
            Some(found.unwrap_or(usize::MAX))
        });
        if let Some((g, f)) = not_closed {
            return Err(Error::Precondition(format!("{marking:?} is not closed under composition: #{g} ∘ #{f}")));
        }
        let mut cat = cat?;
        cat.arrow_ids = kept;
        Ok(cat)
    }

    /// External label of arrow `f`: its sample index for marked
    /// subcategories, `f` itself otherwise.
    pub fn arrow_id(&self, f: usize) -> usize {
        self.arrow_ids[f]
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].src] == f
    }

    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composite.get(&(g, f)).copied()
    }
}
