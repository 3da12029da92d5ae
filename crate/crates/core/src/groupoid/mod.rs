//! Finite groupoids given by explicit composition tables, functors between
//! them, and the elementary predicates the rest of the crate consumes.
//!
//! Objects and morphisms are addressed by their position in input order; the
//! string identifiers are kept for serialization and reports.

mod builders;
mod enumerate;
mod functor;
mod json;
mod structure;
mod validate;

use std::collections::HashMap;
use std::fmt;

pub use builders::{FiniteGroup, INTERVAL_OBJECTS};
pub use enumerate::{enumerate_functors, find_isomorphism, FunctorFilter};
pub(crate) use functor::same as same_groupoid;
pub use functor::{EquivalenceFailure, EquivalenceReport, FunctorViolation, GroupoidFunctor};
pub use json::{FunctorJson, GroupoidJson, MorphismJson};
pub use structure::{Component, VertexGroup};
pub use validate::{validate_groupoid, ValidationReport, Violation};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite groupoid with a total composition table on composable pairs.
///
/// Values of this type always satisfy the groupoid axioms; the only way to get
/// one from untrusted data is [`Groupoid::from_json`], which validates.
#[derive(Clone)]
pub struct Groupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    compose: HashMap<(usize, usize), usize>,
    identities: Vec<usize>,
    inverses: Vec<usize>,
    homs: Vec<Vec<usize>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

impl Groupoid {
    /// Builds a groupoid from trusted parts. `compose(g, f)` is queried for
    /// every pair with `dst(f) == src(g)` and must return the index of `g∘f`.
    pub(crate) fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        inverses: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = objects.len();
        let mut object_index = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::Structural(format!("duplicate object identifier `{o}`")));
            }
        }
        let mut morphism_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= n || m.dst >= n {
                return Err(Error::Structural(format!("morphism `{}` has an out-of-range endpoint", m.id)));
            }
            if morphism_index.insert(m.id.clone(), i).is_some() {
                return Err(Error::Structural(format!("duplicate morphism identifier `{}`", m.id)));
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.src * n + m.dst].push(i);
        }
        let mut table = HashMap::new();
        for y in 0..n {
            let incoming: Vec<usize> = (0..n).flat_map(|x| homs[x * n + y].iter().copied()).collect();
            let outgoing: Vec<usize> = (0..n).flat_map(|z| homs[y * n + z].iter().copied()).collect();
            for &f in &incoming {
                for &g in &outgoing {
                    table.insert((g, f), compose(g, f));
                }
            }
        }
        Ok(Groupoid {
            objects,
            morphisms,
            compose: table,
            identities,
            inverses,
            homs,
            object_index,
            morphism_index,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphism_index.get(name).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    /// `g∘f`, defined exactly when `dst(f) == src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// Composes a word written outermost-first: `[h, g, f]` is `h∘g∘f`.
    pub fn compose_word(&self, word: &[usize]) -> Option<usize> {
        let (&last, rest) = word.split_last()?;
        rest.iter().rev().try_fold(last, |acc, &g| self.compose(g, acc))
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverses[f]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.objects.len() + y]
    }

    pub(crate) fn composition_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.compose
    }
}

impl PartialEq for Groupoid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.inverses == other.inverses
            && self.compose == other.compose
    }
}

impl Eq for Groupoid {}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Groupoid")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}
