use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::category::FiniteCategory;
use crate::error::{Error, Result};

/// A simplex is identified by a tuple of labels. For nerves a `k`-simplex
/// with `k ≥ 1` is its `k` arrows, and a vertex is its object.
pub type Simplex = Vec<usize>;

pub const MAX_NERVE_DIMENSION: usize = 4;

/// Levels `0..=cutoff` with all face and degeneracy maps tabulated.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialSet {
    levels: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    /// `faces[k][s][i] = d_i s`, for `k ≥ 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[k][s][i] = s_i s`, for `k < cutoff`.
    degeneracies: Vec<Vec<Vec<usize>>>,
    degenerate: Vec<Vec<bool>>,
}

impl TruncatedSimplicialSet {
    /// Tabulates the operators given on simplices. Each level is sorted, and
    /// every face and degeneracy must land in the level below or above.
    pub fn build(
        mut levels: Vec<Vec<Simplex>>,
        face: impl Fn(usize, &Simplex, usize) -> Simplex,
        degeneracy: impl Fn(usize, &Simplex, usize) -> Simplex,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Structural("a simplicial set needs level 0".into()));
        }
        for level in &mut levels {
            level.sort();
            level.dedup();
        }
        let index: Vec<HashMap<Simplex, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        let find = |k: usize, s: &Simplex| -> Result<usize> {
            index[k].get(s).copied().ok_or_else(|| Error::Structural(format!("{s:?} is not a {k}-simplex")))
        };
        let cutoff = levels.len() - 1;
        let mut faces = vec![Vec::new()];
        for k in 1..=cutoff {
            let table = levels[k].iter().map(|s| (0..=k).map(|i| find(k - 1, &face(k, s, i))).collect::<Result<Vec<_>>>());
            faces.push(table.collect::<Result<Vec<_>>>()?);
        }
        let mut degeneracies = Vec::new();
        for k in 0..cutoff {
            let table = levels[k].iter().map(|s| (0..=k).map(|i| find(k + 1, &degeneracy(k, s, i))).collect::<Result<Vec<_>>>());
            degeneracies.push(table.collect::<Result<Vec<_>>>()?);
        }
        let mut degenerate: Vec<Vec<bool>> = levels.iter().map(|l| vec![false; l.len()]).collect();
        for (k, table) in degeneracies.iter().enumerate() {
            for &t in table.iter().flatten() {
                degenerate[k + 1][t] = true;
            }
        }
        Ok(TruncatedSimplicialSet { levels, index, faces, degeneracies, degenerate })
    }

    pub fn cutoff(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels[k].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        self.degenerate.iter().map(|d| d.iter().filter(|&&x| !x).count()).collect()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        &self.levels[k]
    }

    pub fn simplex(&self, k: usize, s: usize) -> &Simplex {
        &self.levels[k][s]
    }

    pub fn position(&self, k: usize, s: &Simplex) -> Option<usize> {
        self.index[k].get(s).copied()
    }

    pub fn face(&self, k: usize, s: usize, i: usize) -> usize {
        self.faces[k][s][i]
    }

    pub fn degeneracy(&self, k: usize, s: usize, i: usize) -> usize {
        self.degeneracies[k][s][i]
    }

    pub fn is_degenerate(&self, k: usize, s: usize) -> bool {
        self.degenerate[k][s]
    }

    /// The first simplicial identity that fails, if any.
    pub fn identity_violation(&self) -> Option<String> {
        let d = self.cutoff();
        for k in 2..=d {
            for s in 0..self.count(k) {
                for j in 1..=k {
                    for i in 0..j {
                        if self.face(k - 1, self.face(k, s, j), i) != self.face(k - 1, self.face(k, s, i), j - 1) {
                            return Some(format!("d{i} d{j} ≠ d{} d{i} on {:?}", j - 1, self.simplex(k, s)));
                        }
                    }
                }
            }
        }
        for k in 0..d {
            for s in 0..self.count(k) {
                for j in 0..=k {
                    let t = self.degeneracy(k, s, j);
                    for i in 0..=k + 1 {
                        let lhs = self.face(k + 1, t, i);
                        let ok = if i < j {
                            lhs == self.degeneracy(k - 1, self.face(k, s, i), j - 1)
                        } else if i == j || i == j + 1 {
                            lhs == s
                        } else {
                            lhs == self.degeneracy(k - 1, self.face(k, s, i - 1), j)
                        };
                        if !ok {
                            return Some(format!("d{i} s{j} is wrong on {:?}", self.simplex(k, s)));
                        }
                    }
                    if k + 1 < d {
                        for i in 0..=j {
                            if self.degeneracy(k + 1, t, i) != self.degeneracy(k + 1, self.degeneracy(k, s, i), j + 1) {
                                return Some(format!("s{i} s{j} ≠ s{} s{i} on {:?}", j + 1, self.simplex(k, s)));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Same simplices and the same operator tables.
    pub fn same_as(&self, other: &TruncatedSimplicialSet) -> bool {
        self.levels == other.levels && self.faces == other.faces && self.degeneracies == other.degeneracies
    }

    /// Vertices and nondegenerate edges in DOT syntax.
    pub fn to_dot(&self, name: &str, vertex: impl Fn(&Simplex) -> String, edge: impl Fn(&Simplex) -> String) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for (v, s) in self.levels[0].iter().enumerate() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", vertex(s));
        }
        if self.cutoff() >= 1 {
            for (e, s) in self.levels[1].iter().enumerate() {
                if !self.degenerate[1][e] {
                    let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", self.face(1, e, 1), self.face(1, e, 0), edge(s));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Level-wise maps of simplex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialMap {
    levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Builds the map from a function on simplices, checked against both
    /// sets: every image must exist and faces and degeneracies must commute.
    pub fn from_fn(
        source: &TruncatedSimplicialSet,
        target: &TruncatedSimplicialSet,
        f: impl Fn(usize, &Simplex) -> Simplex,
    ) -> Result<Self> {
        let top = source.cutoff().min(target.cutoff());
        let mut levels = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let level = source.levels[k]
                .iter()
                .map(|s| {
                    let image = f(k, s);
                    target.position(k, &image).ok_or_else(|| Error::Structural(format!("image {image:?} of {s:?} is not a simplex")))
                })
                .collect::<Result<Vec<_>>>()?;
            levels.push(level);
        }
        let map = SimplicialMap { levels };
        if let Some(v) = map.violation(source, target) {
            return Err(Error::Structural(v));
        }
        Ok(map)
    }

    pub fn identity(x: &TruncatedSimplicialSet) -> Self {
        SimplicialMap { levels: x.levels.iter().map(|l| (0..l.len()).collect()).collect() }
    }

    pub fn apply(&self, k: usize, s: usize) -> usize {
        self.levels[k][s]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    fn violation(&self, source: &TruncatedSimplicialSet, target: &TruncatedSimplicialSet) -> Option<String> {
        let top = self.levels.len() - 1;
        for k in 0..=top {
            for s in 0..source.count(k) {
                let t = self.apply(k, s);
                for i in 0..=k {
                    if k >= 1 && self.apply(k - 1, source.face(k, s, i)) != target.face(k, t, i) {
                        return Some(format!("map does not commute with d{i} on {:?}", source.simplex(k, s)));
                    }
                    if k < top && self.apply(k + 1, source.degeneracy(k, s, i)) != target.degeneracy(k, t, i) {
                        return Some(format!("map does not commute with s{i} on {:?}", source.simplex(k, s)));
                    }
                }
            }
        }
        None
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            levels: self.levels.iter().zip(&next.levels).map(|(a, b)| a.iter().map(|&s| b[s]).collect()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.levels.iter().all(|l| l.iter().enumerate().all(|(i, &j)| i == j))
    }

    pub fn is_injective(&self) -> bool {
        self.levels.iter().all(|l| {
            let mut sorted = l.clone();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        })
    }
}

/// Composable chains `x0 → x1 → … → xk` of the category, for `k ≤ d`.
pub fn nerve(category: &FiniteCategory, d: usize) -> Result<TruncatedSimplicialSet> {
    if d > MAX_NERVE_DIMENSION {
        return Err(Error::Precondition(format!("nerves are truncated at {MAX_NERVE_DIMENSION}, got {d}")));
    }
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..category.object_count()).map(|x| vec![x]).collect()];
    if d >= 1 {
        chains.push((0..category.arrow_count()).map(|f| vec![f]).collect());
    }
    for k in 2..=d {
        let next = chains[k - 1]
            .iter()
            .flat_map(|c| category.outgoing(category.arrow(c[k - 2]).dst).iter().map(move |&g| [c.as_slice(), &[g]].concat()))
            .collect();
        chains.push(next);
    }
    let position: HashMap<usize, usize> = (0..category.arrow_count()).map(|f| (category.arrow_id(f), f)).collect();
    let label = |k: usize, c: &[usize]| -> Simplex {
        if k == 0 {
            c.to_vec()
        } else {
            c.iter().map(|&f| category.arrow_id(f)).collect()
        }
    };
    let unlabel = |k: usize, s: &Simplex| -> Vec<usize> {
        if k == 0 {
            s.clone()
        } else {
            s.iter().map(|a| position[a]).collect()
        }
    };
    let levels = chains.iter().enumerate().map(|(k, l)| l.iter().map(|c| label(k, c)).collect()).collect();
    let face = |k: usize, s: &Simplex, i: usize| -> Simplex {
        let c = unlabel(k, s);
        if k == 1 {
            let a = category.arrow(c[0]);
            return vec![if i == 0 { a.dst } else { a.src }];
        }
        let mut out = c.clone();
        if i == 0 {
            out.remove(0);
        } else if i == k {
            out.pop();
        } else {
            let h = category.compose(c[i], c[i - 1]).expect("chains are composable");
            out.splice(i - 1..=i, [h]);
        }
        label(k - 1, &out)
    };
    let degeneracy = |k: usize, s: &Simplex, i: usize| -> Simplex {
        let c = unlabel(k, s);
        if k == 0 {
            return label(1, &[category.identity(c[0])]);
        }
        let x = if i == 0 { category.arrow(c[0]).src } else { category.arrow(c[i - 1]).dst };
        let mut out = c.clone();
        out.insert(i, category.identity(x));
        label(k + 1, &out)
    };
    TruncatedSimplicialSet::build(levels, face, degeneracy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{FiniteGroup, Groupoid};

    #[test]
    fn point_has_one_simplex_per_level() {
        let n = nerve(&FiniteCategory::from_groupoid(&Groupoid::point()), 2).unwrap();
        assert_eq!(n.counts(), vec![1, 1, 1]);
        assert_eq!(n.nondegenerate_counts(), vec![1, 0, 0]);
    }

    #[test]
    fn chains_in_a_group() {
        let n = nerve(&FiniteCategory::from_groupoid(&Groupoid::classifying(&FiniteGroup::cyclic(2))), 4).unwrap();
        assert_eq!(n.counts(), vec![1, 2, 4, 8, 16]);
        assert_eq!(n.identity_violation(), None);
    }

    #[test]
    fn arrow_category() {
        let n = nerve(&FiniteCategory::ordinal(1), 2).unwrap();
        assert_eq!(n.nondegenerate_counts(), vec![2, 1, 0]);
        assert_eq!(n.counts(), vec![2, 3, 4]);
    }

    #[test]
    fn nondegenerate_chains_of_an_ordinal_are_subsets() {
        // nondegenerate k-simplices of the nerve of [n] are (k+1)-subsets
        let n = nerve(&FiniteCategory::ordinal(3), 3).unwrap();
        assert_eq!(n.nondegenerate_counts(), vec![4, 6, 4, 1]);
        assert_eq!(n.identity_violation(), None);
    }

    #[test]
    fn truncation_limit() {
        assert!(nerve(&FiniteCategory::ordinal(1), 5).is_err());
    }

    #[test]
    fn maps_compose_and_are_checked() {
        let x = nerve(&FiniteCategory::ordinal(1), 2).unwrap();
        let id = SimplicialMap::identity(&x);
        assert!(id.then(&id).is_identity());
        // sending the vertex to 1 and its degenerate edges to the identity of 0 is not simplicial
        let point = nerve(&FiniteCategory::ordinal(0), 2).unwrap();
        assert!(SimplicialMap::from_fn(&x, &point, |k, _| if k == 0 { vec![0] } else { vec![0; k] }).is_ok());
        assert!(SimplicialMap::from_fn(&point, &x, |k, _| if k == 0 { vec![1] } else { vec![0; k] }).is_err());
    }

    #[test]
    fn dot_output() {
        let x = nerve(&FiniteCategory::ordinal(1), 1).unwrap();
        let dot = x.to_dot("arrow", |s| format!("{}", s[0]), |s| format!("{}", s[0]));
        assert!(dot.contains("v0 -> v1 [label=\"1\"]"));
        assert_eq!(dot.matches("->").count(), 1);
    }
}
