use std::collections::HashMap;

use serde::Serialize;

use super::category::{Arrow, FiniteCategory, Marking};
use super::simplicial::{nerve, SimplicialMap, TruncatedSimplicialSet};
use crate::error::{Error, Result};
use crate::sample::FiniteSampleCategory;

pub const MAX_CLASSIFICATION_LENGTH: usize = 2;
pub const MAX_CLASSIFICATION_DIMENSION: usize = 3;
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Level `k` of a classification diagram: the nerve of the category of
/// `k`-chains of sample functors with ladders of weak equivalences, and
/// the same for chains of cofibrations with ladders of acyclic
/// cofibrations, together with the comparison map between them.
#[derive(Clone, Debug)]
pub struct ClassificationLevel {
    pub length: usize,
    pub chains: FiniteCategory,
    pub nerve: TruncatedSimplicialSet,
    pub cofibration_chains: FiniteCategory,
    pub cofibration_nerve: TruncatedSimplicialSet,
    pub comparison: SimplicialMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSize {
    pub objects: usize,
    pub ladders: usize,
    pub estimate: u128,
}

/// Chains and ladders, before the nerve is taken.
struct Ladders {
    length: usize,
    chains: Vec<Vec<usize>>,
    /// (source chain, target chain, rungs)
    ladders: Vec<(usize, usize, Vec<usize>)>,
}

fn chains(sample: &FiniteSampleCategory, length: usize, arrows: Marking) -> Vec<Vec<usize>> {
    // a 0-chain is recorded as the identity of its object
    let mut out: Vec<Vec<usize>> = (0..sample.object_count()).map(|x| vec![sample.identity(x)]).collect();
    if length == 0 {
        return out;
    }
    out = (0..sample.morphism_count()).filter(|&m| arrows.keeps(sample, m)).map(|m| vec![m]).collect();
    for _ in 1..length {
        out = out
            .into_iter()
            .flat_map(|c| {
                let end = sample.morphism(*c.last().expect("nonempty")).dst;
                (0..sample.object_count())
                    .flat_map(|y| sample.hom(end, y).to_vec())
                    .filter(|&m| arrows.keeps(sample, m))
                    .map(move |m| [c.as_slice(), &[m]].concat())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn source_objects(sample: &FiniteSampleCategory, chain: &[usize], length: usize) -> Vec<usize> {
    if length == 0 {
        return vec![sample.morphism(chain[0]).src];
    }
    chain.iter().map(|&m| sample.morphism(m).src).chain([sample.morphism(chain[length - 1]).dst]).collect()
}

fn ladders(sample: &FiniteSampleCategory, length: usize, arrows: Marking, rungs: Marking) -> Ladders {
    let chains = chains(sample, length, arrows);
    let index: HashMap<Vec<usize>, usize> = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let rung_out: Vec<Vec<usize>> = (0..sample.object_count())
        .map(|x| (0..sample.object_count()).flat_map(|y| sample.hom(x, y).to_vec()).filter(|&m| rungs.keeps(sample, m)).collect())
        .collect();
    let mut ladders = Vec::new();
    for (s, chain) in chains.iter().enumerate() {
        let objects = source_objects(sample, chain, length);
        // partial ladders: rungs so far and the target chain so far
        let mut partial: Vec<(Vec<usize>, Vec<usize>)> = rung_out[objects[0]].iter().map(|&w| (vec![w], Vec::new())).collect();
        for i in 0..length {
            let mut next = Vec::new();
            for (ws, gs) in &partial {
                let w = ws[i];
                let y = sample.morphism(w).dst;
                for &w_next in &rung_out[objects[i + 1]] {
                    let Some(across_then_down) = sample.compose(w_next, chain[i]) else { continue };
                    let z = sample.morphism(w_next).dst;
                    for &g in sample.hom(y, z) {
                        if !arrows.keeps(sample, g) || sample.compose(g, w) != Some(across_then_down) {
                            continue;
                        }
                        let mut ws = ws.clone();
                        ws.push(w_next);
                        let mut gs = gs.clone();
                        gs.push(g);
                        next.push((ws, gs));
                    }
                }
            }
            partial = next;
        }
        for (ws, gs) in partial {
            let target = if length == 0 { vec![sample.identity(sample.morphism(ws[0]).dst)] } else { gs };
            ladders.push((s, index[&target], ws));
        }
    }
    Ladders { length, chains, ladders }
}

fn category(sample: &FiniteSampleCategory, data: &Ladders) -> Result<FiniteCategory> {
    let lookup: HashMap<(usize, usize, &[usize]), usize> =
        data.ladders.iter().enumerate().map(|(i, (s, t, w))| ((*s, *t, w.as_slice()), i)).collect();
    let names = data.chains.iter().map(|c| c.iter().map(|m| format!("#{m}")).collect::<Vec<_>>().join(">")).collect();
    let arrows = data
        .ladders
        .iter()
        .map(|(s, t, w)| Arrow { src: *s, dst: *t, name: w.iter().map(|m| format!("#{m}")).collect::<Vec<_>>().join("|") })
        .collect();
    let identities = data
        .chains
        .iter()
        .enumerate()
        .map(|(c, chain)| {
            let rungs: Vec<usize> = source_objects(sample, chain, data.length).iter().map(|&x| sample.identity(x)).collect();
            lookup.get(&(c, c, rungs.as_slice())).copied().ok_or_else(|| Error::Structural(format!("chain {c} has no identity ladder")))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteCategory::new(names, arrows, identities, |g, f| {
        let (fs, _, fw) = &data.ladders[f];
        let (_, gt, gw) = &data.ladders[g];
        let rungs: Option<Vec<usize>> = fw.iter().zip(gw).map(|(&a, &b)| sample.compose(b, a)).collect();
        lookup.get(&(*fs, *gt, rungs?.as_slice())).copied()
    })
}

/// Object and ladder counts and the estimated number of top simplices,
/// `objects · (ladders / objects)^d`.
fn size(data: &Ladders, d: usize) -> LevelSize {
    let objects = data.chains.len();
    let ladders = data.ladders.len();
    let estimate = if objects == 0 { 0 } else { (objects as f64 * (ladders as f64 / objects as f64).powi(d as i32)).ceil() as u128 };
    LevelSize { objects, ladders, estimate }
}

/// Errors with the size estimate when it exceeds `budget`.
pub fn classification_level(sample: &FiniteSampleCategory, length: usize, d: usize, budget: u128) -> Result<ClassificationLevel> {
    if length > MAX_CLASSIFICATION_LENGTH || d > MAX_CLASSIFICATION_DIMENSION {
        return Err(Error::Precondition(format!(
            "classification levels are limited to k ≤ {MAX_CLASSIFICATION_LENGTH} and d ≤ {MAX_CLASSIFICATION_DIMENSION}, got k = {length}, d = {d}"
        )));
    }
    let weak = ladders(sample, length, Marking::All, Marking::Weak);
    let cofibrant = ladders(sample, length, Marking::Cofibrations, Marking::AcyclicCofibrations);
    for data in [&weak, &cofibrant] {
        let s = size(data, d);
        if s.estimate > budget {
            return Err(Error::Budget { estimate: s.estimate, budget });
        }
    }
    let chains = category(sample, &weak)?;
    let cofibration_chains = category(sample, &cofibrant)?;
    let nerve_all = nerve(&chains, d)?;
    let nerve_cof = nerve(&cofibration_chains, d)?;

    let chain_index: HashMap<&[usize], usize> = weak.chains.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let ladder_index: HashMap<(usize, usize, &[usize]), usize> =
        weak.ladders.iter().enumerate().map(|(i, (s, t, w))| ((*s, *t, w.as_slice()), i)).collect();
    let object = |c: usize| chain_index[cofibrant.chains[c].as_slice()];
    let comparison = SimplicialMap::from_fn(&nerve_cof, &nerve_all, |k, s| {
        if k == 0 {
            return vec![object(s[0])];
        }
        s.iter()
            .map(|&l| {
                let (src, dst, w) = &cofibrant.ladders[l];
                ladder_index[&(object(*src), object(*dst), w.as_slice())]
            })
            .collect()
    })?;
    Ok(ClassificationLevel { length, chains, nerve: nerve_all, cofibration_chains, cofibration_nerve: nerve_cof, comparison })
}

/// Sizes of both ladder categories without building nerves.
pub fn classification_size(sample: &FiniteSampleCategory, length: usize, d: usize) -> (LevelSize, LevelSize) {
    (
        size(&ladders(sample, length, Marking::All, Marking::Weak), d),
        size(&ladders(sample, length, Marking::Cofibrations, Marking::AcyclicCofibrations), d),
    )
}
