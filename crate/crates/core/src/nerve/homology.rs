use std::fmt;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::simplicial::{SimplicialMap, TruncatedSimplicialSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    /// Rank of the free part.
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integral homology of a truncation in the degrees it determines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub cutoff: usize,
    /// Ranks of the normalized chain groups.
    pub chain_ranks: Vec<usize>,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn group(&self, degree: usize) -> Option<&HomologyGroup> {
        self.groups.get(degree)
    }

    /// Abstract isomorphism of `H_0 … H_max` on both sides.
    pub fn agrees_with(&self, other: &HomologyProfile, max: usize) -> bool {
        (0..=max).all(|k| match (self.group(k), other.group(k)) {
            (Some(a), Some(b)) => a.rank == b.rank && a.torsion == b.torsion,
            _ => false,
        })
    }
}

/// Boundary `∂_k: N_k → N_{k-1}` on nondegenerate simplices, as a dense
/// matrix with rows indexed by `(k-1)`-simplices. Degenerate faces vanish.
pub fn normalized_boundary(x: &TruncatedSimplicialSet, k: usize) -> Vec<Vec<i64>> {
    let basis = |k: usize| -> Vec<usize> { (0..x.count(k)).filter(|&s| !x.is_degenerate(k, s)).collect() };
    let rows = basis(k - 1);
    let mut row_of = vec![usize::MAX; x.count(k - 1)];
    for (r, &s) in rows.iter().enumerate() {
        row_of[s] = r;
    }
    let cols = basis(k);
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (c, &s) in cols.iter().enumerate() {
        for i in 0..=k {
            let t = x.face(k, s, i);
            if !x.is_degenerate(k - 1, t) {
                m[row_of[t]][c] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// `H_k` for `k < cutoff`, from the Smith normal forms of the normalized
/// boundaries.
pub fn homology(x: &TruncatedSimplicialSet) -> HomologyProfile {
    homology_through(x, x.cutoff().max(1) - 1)
}

/// `H_0 … H_max`, clamped below the cutoff. Boundaries above `max + 1`
/// are never formed.
pub fn homology_through(x: &TruncatedSimplicialSet, max: usize) -> HomologyProfile {
    let d = x.cutoff();
    let top = (max + 1).min(d);
    let chain_ranks = x.nondegenerate_counts();
    // (rank, invariant factors) of ∂_k for k = 1..=top
    let mut boundaries = vec![(0usize, Vec::new())];
    for k in 1..=top {
        boundaries.push(invariant_factors(&normalized_boundary(x, k)));
    }
    let groups = (0..top.max(1))
        .map(|k| {
            let outgoing = boundaries[k].0;
            let (incoming, factors) = boundaries.get(k + 1).cloned().unwrap_or_default();
            HomologyGroup {
                degree: k,
                rank: chain_ranks[k] - outgoing - incoming,
                torsion: factors.into_iter().filter(|&f| f > 1).collect(),
            }
        })
        .collect();
    HomologyProfile { cutoff: d, chain_ranks, groups }
}

/// Whether the map is a bijection on connected components.
pub fn components_bijective(source: &TruncatedSimplicialSet, target: &TruncatedSimplicialSet, map: &SimplicialMap) -> bool {
    let (cs, ns) = components(source);
    let (ct, nt) = components(target);
    if ns != nt {
        return false;
    }
    let mut image = vec![usize::MAX; ns];
    for v in 0..source.count(0) {
        let c = ct[map.apply(0, v)];
        if image[cs[v]] != usize::MAX && image[cs[v]] != c {
            return false;
        }
        image[cs[v]] = c;
    }
    let mut hit = vec![false; nt];
    image.iter().all(|&c| c != usize::MAX && !std::mem::replace(&mut hit[c], true))
}

/// Component label of each vertex and the number of components.
pub fn components(x: &TruncatedSimplicialSet) -> (Vec<usize>, usize) {
    let n = x.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    if x.cutoff() >= 1 {
        for e in 0..x.count(1) {
            let (a, b) = (root(&mut parent, x.face(1, e, 0)), root(&mut parent, x.face(1, e, 1)));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let r = root(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        label[v] = label[r];
    }
    (label, count)
}

/// Rank and the nonzero diagonal of the Smith normal form.
pub fn invariant_factors(m: &[Vec<i64>]) -> (usize, Vec<u64>) {
    let to_u64 = |v: BigInt| v.abs().to_u64().expect("invariant factor fits in 64 bits");
    let factors: Vec<u64> = match smith_diagonal(m.to_vec()) {
        Some(d) => d.into_iter().map(|v: i64| v.unsigned_abs()).collect(),
        None => {
            let big = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            smith_diagonal::<BigInt>(big).expect("arbitrary precision does not overflow").into_iter().map(to_u64).collect()
        }
    };
    (factors.len(), factors)
}

trait Entry: Clone + Zero + One + Signed + PartialOrd + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv {}
impl<T: Clone + Zero + One + Signed + PartialOrd + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv> Entry for T {}

/// Diagonal of the Smith normal form, or `None` on overflow.
fn smith_diagonal<T: Entry>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].checked_div(&a[t][t])?;
                for j in t..cols {
                    let v = a[i][j].checked_sub(&q.checked_mul(&a[t][j])?)?;
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].checked_div(&a[t][t])?;
                for row in a.iter_mut().skip(t) {
                    let v = row[j].checked_sub(&q.checked_mul(&row[t])?)?;
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if !done {
                // a remainder is now smaller than the pivot
                let (mut bi, mut bj) = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && (a[bi][bj].is_zero() || a[i][t].abs() < a[bi][bj].abs()) {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            // the pivot must divide the rest of the block
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(a[i][j].clone() % a[t][t].clone()).is_zero()));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].checked_add(&a[i][j])?;
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
        t += 1;
    }
    Some(diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{FiniteGroup, Groupoid};
    use crate::nerve::{nerve, FiniteCategory};

    fn profile(g: &Groupoid, d: usize) -> HomologyProfile {
        homology(&nerve(&FiniteCategory::from_groupoid(g), d).unwrap())
    }

    #[test]
    fn point() {
        let h = profile(&Groupoid::point(), 3);
        assert_eq!(h.groups.iter().map(|g| g.to_string()).collect::<Vec<_>>(), vec!["Z", "0", "0"]);
    }

    #[test]
    fn cyclic_groups() {
        let h = profile(&Groupoid::classifying(&FiniteGroup::cyclic(2)), 3);
        assert_eq!(h.group(0).unwrap().to_string(), "Z");
        assert_eq!(h.group(1).unwrap().to_string(), "Z/2");
        // H_2(Z/2) = 0
        assert_eq!(h.group(2).unwrap().to_string(), "0");
        let h = profile(&Groupoid::classifying(&FiniteGroup::cyclic(3)), 2);
        assert_eq!(h.group(1).unwrap().torsion, vec![3]);
    }

    #[test]
    fn abelianizations() {
        // H_1 of a group is its abelianization
        let h1 = |g: FiniteGroup| profile(&Groupoid::classifying(&g), 2).group(1).unwrap().torsion.clone();
        assert_eq!(h1(FiniteGroup::symmetric(3)), vec![2]);
        assert_eq!(h1(FiniteGroup::quaternion()), vec![2, 2]);
        assert_eq!(h1(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))), vec![2, 2]);
        assert_eq!(h1(FiniteGroup::cyclic(4)), vec![4]);
    }

    #[test]
    fn low_degrees_only() {
        let x = nerve(&FiniteCategory::from_groupoid(&Groupoid::classifying(&FiniteGroup::symmetric(3))), 3).unwrap();
        let (full, low) = (homology(&x), homology_through(&x, 1));
        assert_eq!(low.groups, full.groups[..2]);
        assert_eq!(homology_through(&x, 7).groups, full.groups);
    }

    #[test]
    fn components_count() {
        let h = profile(&Groupoid::discrete(2), 2);
        assert_eq!(h.group(0).unwrap().rank, 2);
        let h = profile(&Groupoid::codiscrete(3), 3);
        assert_eq!((h.group(0).unwrap().rank, h.group(1).unwrap().rank), (1, 0));
    }

    #[test]
    fn smith_forms() {
        assert_eq!(invariant_factors(&[vec![2, 4], vec![6, 8]]), (2, vec![2, 4]));
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), (2, vec![1, 6]));
        assert_eq!(invariant_factors(&[vec![0, 0]]), (0, vec![]));
        assert_eq!(invariant_factors(&[]), (0, vec![]));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let m = vec![vec![1, i64::MAX], vec![2, 0]];
        assert!(smith_diagonal(m.clone()).is_none());
        assert_eq!(invariant_factors(&m), (2, vec![1, 2 * i64::MAX as u64]));
    }
}
