use std::collections::HashMap;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{validate_groupoid, Groupoid, GroupoidFunctor, Morphism};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// Wire form of a finite groupoid.
///
/// `compose` holds triples `[g, f, g∘f]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub compose: Vec<[String; 3]>,
    pub identities: IndexMap<String, String>,
    pub inverses: IndexMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub source: GroupoidJson,
    pub target: GroupoidJson,
    #[serde(rename = "onObjects")]
    pub on_objects: IndexMap<String, String>,
    #[serde(rename = "onMorphisms")]
    pub on_morphisms: IndexMap<String, String>,
}

impl Groupoid {
    /// Validates and converts the wire form.
    pub fn from_json(raw: &GroupoidJson) -> Result<Self> {
        let report = validate_groupoid(raw)?;
        if !report.is_ok() {
            return Err(Error::Axioms(report));
        }
        let objects = raw.objects.clone();
        let obj_idx: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let index = |o: &str| obj_idx[o];
        let morphisms: Vec<Morphism> = raw
            .morphisms
            .iter()
            .map(|m| Morphism { id: m.id.clone(), src: index(&m.src), dst: index(&m.dst) })
            .collect();
        let mor_idx: HashMap<&str, usize> =
            morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        let mor_index = |m: &str| mor_idx[m];
        let identities = objects.iter().map(|o| mor_index(&raw.identities[o])).collect();
        let inverses = morphisms.iter().map(|m| mor_index(&raw.inverses[&m.id])).collect();
        let table: HashMap<(usize, usize), usize> = raw
            .compose
            .iter()
            .map(|[g, f, gf]| ((mor_index(g), mor_index(f)), mor_index(gf)))
            .collect();
        Groupoid::assemble(objects.clone(), morphisms.clone(), identities, inverses, |g, f| table[&(g, f)])
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: GroupoidJson = serde_json::from_str(s)?;
        Self::from_json(&raw)
    }

    pub fn to_json(&self) -> GroupoidJson {
        let mut compose: Vec<(usize, usize, usize)> =
            self.composition_table().iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        compose.sort_unstable();
        GroupoidJson {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismJson {
                    id: m.id.clone(),
                    src: self.objects[m.src].clone(),
                    dst: self.objects[m.dst].clone(),
                })
                .collect(),
            compose: compose
                .into_iter()
                .map(|(g, f, gf)| {
                    [self.morphism_name(g).to_owned(), self.morphism_name(f).to_owned(), self.morphism_name(gf).to_owned()]
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .enumerate()
                .map(|(x, o)| (o.clone(), self.morphism_name(self.identity(x)).to_owned()))
                .collect(),
            inverses: self
                .morphisms
                .iter()
                .enumerate()
                .map(|(f, m)| (m.id.clone(), self.morphism_name(self.inverse(f)).to_owned()))
                .collect(),
        }
    }
}

impl GroupoidFunctor {
    pub fn from_json(raw: &FunctorJson) -> Result<Self> {
        let source = Arc::new(Groupoid::from_json(&raw.source)?);
        let target = Arc::new(Groupoid::from_json(&raw.target)?);
        let mut object_map = Vec::with_capacity(source.object_count());
        for o in source.objects() {
            let img = raw
                .on_objects
                .get(o)
                .ok_or_else(|| Error::Structural(format!("object `{o}` has no image")))?;
            object_map.push(target.object_index(img).ok_or_else(|| Error::UnknownObject(img.clone()))?);
        }
        let mut morphism_map = Vec::with_capacity(source.morphism_count());
        for m in source.morphisms() {
            let img = raw
                .on_morphisms
                .get(&m.id)
                .ok_or_else(|| Error::Structural(format!("morphism `{}` has no image", m.id)))?;
            morphism_map.push(
                target
                    .morphism_index(img)
                    .ok_or_else(|| Error::Structural(format!("unknown morphism `{img}`")))?,
            );
        }
        for k in raw.on_objects.keys() {
            if source.object_index(k).is_none() {
                return Err(Error::UnknownObject(k.clone()));
            }
        }
        for k in raw.on_morphisms.keys() {
            if source.morphism_index(k).is_none() {
                return Err(Error::Structural(format!("unknown morphism `{k}`")));
            }
        }
        GroupoidFunctor::new(source, target, object_map, morphism_map)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: FunctorJson = serde_json::from_str(s)?;
        Self::from_json(&raw)
    }

    pub fn to_json(&self) -> FunctorJson {
        let (s, t) = (self.source(), self.target());
        FunctorJson {
            source: s.to_json(),
            target: t.to_json(),
            on_objects: (0..s.object_count())
                .map(|x| (s.object_name(x).to_owned(), t.object_name(self.on_object(x)).to_owned()))
                .collect(),
            on_morphisms: (0..s.morphism_count())
                .map(|f| (s.morphism_name(f).to_owned(), t.morphism_name(self.on_morphism(f)).to_owned()))
                .collect(),
        }
    }
}
