use std::collections::HashMap;

use super::simplicial::{Simplex, TruncatedSimplicialSet};
use crate::error::{Error, Result};

/// Cells `X_{m,n}` for `m ≤ horizontal`, `n ≤ vertical`. The first index
/// is horizontal. Operators are tabulated per cell.
#[derive(Clone, Debug)]
pub struct TruncatedBisimplicialSet {
    cells: Vec<Vec<Vec<Simplex>>>,
    index: Vec<Vec<HashMap<Simplex, usize>>>,
    horizontal_faces: Vec<Vec<Vec<Vec<usize>>>>,
    vertical_faces: Vec<Vec<Vec<Vec<usize>>>>,
    horizontal_degeneracies: Vec<Vec<Vec<Vec<usize>>>>,
    vertical_degeneracies: Vec<Vec<Vec<Vec<usize>>>>,
}

/// An operator on bisimplices: `(m, n, bisimplex, i) ↦ bisimplex`.
pub type Operator<'a> = &'a dyn Fn(usize, usize, &Simplex, usize) -> Simplex;

impl TruncatedBisimplicialSet {
    /// `cells[m][n]` lists the `(m, n)`-bisimplices. Horizontal operators
    /// change `m`, vertical ones change `n`.
    pub fn build(
        mut cells: Vec<Vec<Vec<Simplex>>>,
        horizontal_face: Operator,
        vertical_face: Operator,
        horizontal_degeneracy: Operator,
        vertical_degeneracy: Operator,
    ) -> Result<Self> {
        let h = cells.len();
        let v = cells.first().map_or(0, Vec::len);
        if h == 0 || v == 0 || cells.iter().any(|c| c.len() != v) {
            return Err(Error::Structural("bisimplicial cells must form a nonempty rectangle".into()));
        }
        for column in &mut cells {
            for cell in column {
                cell.sort();
                cell.dedup();
            }
        }
        let index: Vec<Vec<HashMap<Simplex, usize>>> = cells
            .iter()
            .map(|c| c.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect())
            .collect();
        let find = |m: usize, n: usize, s: &Simplex| -> Result<usize> {
            index[m][n].get(s).copied().ok_or_else(|| Error::Structural(format!("{s:?} is not an ({m},{n})-bisimplex")))
        };
        let table = |op: Operator, dm: isize, dn: isize, count: &dyn Fn(usize, usize) -> usize| -> Result<Vec<Vec<Vec<Vec<usize>>>>> {
            let mut out = vec![vec![Vec::new(); v]; h];
            for m in 0..h {
                for n in 0..v {
                    let (tm, tn) = (m as isize + dm, n as isize + dn);
                    if tm < 0 || tn < 0 || tm as usize >= h || tn as usize >= v {
                        continue;
                    }
                    out[m][n] = cells[m][n]
                        .iter()
                        .map(|s| (0..count(m, n)).map(|i| find(tm as usize, tn as usize, &op(m, n, s, i))).collect())
                        .collect::<Result<Vec<_>>>()?;
                }
            }
            Ok(out)
        };
        let horizontal_faces = table(horizontal_face, -1, 0, &|m, _| m + 1)?;
        let vertical_faces = table(vertical_face, 0, -1, &|_, n| n + 1)?;
        let horizontal_degeneracies = table(horizontal_degeneracy, 1, 0, &|m, _| m + 1)?;
        let vertical_degeneracies = table(vertical_degeneracy, 0, 1, &|_, n| n + 1)?;
        Ok(TruncatedBisimplicialSet {
            cells,
            index,
            horizontal_faces,
            vertical_faces,
            horizontal_degeneracies,
            vertical_degeneracies,
        })
    }

    /// `(horizontal, vertical)` cutoffs.
    pub fn cutoff(&self) -> (usize, usize) {
        (self.cells.len() - 1, self.cells[0].len() - 1)
    }

    pub fn count(&self, m: usize, n: usize) -> usize {
        self.cells[m][n].len()
    }

    pub fn counts(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.iter().map(Vec::len).collect()).collect()
    }

    pub fn bisimplices(&self, m: usize, n: usize) -> &[Simplex] {
        &self.cells[m][n]
    }

    pub fn position(&self, m: usize, n: usize, s: &Simplex) -> Option<usize> {
        self.index[m][n].get(s).copied()
    }

    pub fn horizontal_face(&self, m: usize, n: usize, s: usize, i: usize) -> usize {
        self.horizontal_faces[m][n][s][i]
    }

    pub fn vertical_face(&self, m: usize, n: usize, s: usize, i: usize) -> usize {
        self.vertical_faces[m][n][s][i]
    }

    pub fn horizontal_degeneracy(&self, m: usize, n: usize, s: usize, i: usize) -> usize {
        self.horizontal_degeneracies[m][n][s][i]
    }

    pub fn vertical_degeneracy(&self, m: usize, n: usize, s: usize, i: usize) -> usize {
        self.vertical_degeneracies[m][n][s][i]
    }

    /// The simplicial set `n ↦ X_{m,n}` with the vertical operators.
    pub fn row(&self, m: usize) -> TruncatedSimplicialSet {
        let levels = self.cells[m].clone();
        let face = |n: usize, s: &Simplex, i: usize| {
            let p = self.position(m, n, s).expect("listed");
            self.cells[m][n - 1][self.vertical_face(m, n, p, i)].clone()
        };
        let degeneracy = |n: usize, s: &Simplex, i: usize| {
            let p = self.position(m, n, s).expect("listed");
            self.cells[m][n + 1][self.vertical_degeneracy(m, n, p, i)].clone()
        };
        TruncatedSimplicialSet::build(levels, face, degeneracy).expect("operators are tabulated")
    }

    /// The simplicial set `m ↦ X_{m,n}` with the horizontal operators.
    pub fn column(&self, n: usize) -> TruncatedSimplicialSet {
        let levels = self.cells.iter().map(|c| c[n].clone()).collect();
        let face = |m: usize, s: &Simplex, i: usize| {
            let p = self.position(m, n, s).expect("listed");
            self.cells[m - 1][n][self.horizontal_face(m, n, p, i)].clone()
        };
        let degeneracy = |m: usize, s: &Simplex, i: usize| {
            let p = self.position(m, n, s).expect("listed");
            self.cells[m + 1][n][self.horizontal_degeneracy(m, n, p, i)].clone()
        };
        TruncatedSimplicialSet::build(levels, face, degeneracy).expect("operators are tabulated")
    }

    /// Every row and column is simplicial, and horizontal operators commute
    /// with vertical ones.
    pub fn identity_violation(&self) -> Option<String> {
        let (h, v) = self.cutoff();
        for m in 0..=h {
            if let Some(e) = self.row(m).identity_violation() {
                return Some(format!("row {m}: {e}"));
            }
        }
        for n in 0..=v {
            if let Some(e) = self.column(n).identity_violation() {
                return Some(format!("column {n}: {e}"));
            }
        }
        for m in 0..=h {
            for n in 0..=v {
                for s in 0..self.count(m, n) {
                    for i in 0..=m {
                        for j in 0..=n {
                            if m >= 1 && n >= 1 {
                                let a = self.vertical_face(m - 1, n, self.horizontal_face(m, n, s, i), j);
                                let b = self.horizontal_face(m, n - 1, self.vertical_face(m, n, s, j), i);
                                if a != b {
                                    return Some(format!("d^h{i} and d^v{j} do not commute on {:?}", self.cells[m][n][s]));
                                }
                            }
                            if m < h && n < v {
                                let a = self.vertical_degeneracy(m + 1, n, self.horizontal_degeneracy(m, n, s, i), j);
                                let b = self.horizontal_degeneracy(m, n + 1, self.vertical_degeneracy(m, n, s, j), i);
                                if a != b {
                                    return Some(format!("s^h{i} and s^v{j} do not commute on {:?}", self.cells[m][n][s]));
                                }
                            }
                            if m >= 1 && n < v {
                                let a = self.vertical_degeneracy(m - 1, n, self.horizontal_face(m, n, s, i), j);
                                let b = self.horizontal_face(m, n + 1, self.vertical_degeneracy(m, n, s, j), i);
                                if a != b {
                                    return Some(format!("d^h{i} and s^v{j} do not commute on {:?}", self.cells[m][n][s]));
                                }
                            }
                            if n >= 1 && m < h {
                                let a = self.horizontal_degeneracy(m, n - 1, self.vertical_face(m, n, s, j), i);
                                let b = self.vertical_face(m + 1, n, self.horizontal_degeneracy(m, n, s, i), j);
                                if a != b {
                                    return Some(format!("s^h{i} and d^v{j} do not commute on {:?}", self.cells[m][n][s]));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// `m ↦ X_{m,m}` with `d_i = d^h_i d^v_i` and `s_i = s^h_i s^v_i`.
    pub fn diagonal(&self) -> Result<TruncatedSimplicialSet> {
        let (h, v) = self.cutoff();
        if h != v {
            return Err(Error::Precondition(format!("the diagonal needs a square truncation, got ({h},{v})")));
        }
        let levels = (0..=h).map(|m| self.cells[m][m].clone()).collect();
        let face = |m: usize, s: &Simplex, i: usize| {
            let p = self.position(m, m, s).expect("listed");
            let q = self.vertical_face(m, m, p, i);
            self.cells[m - 1][m - 1][self.horizontal_face(m, m - 1, q, i)].clone()
        };
        let degeneracy = |m: usize, s: &Simplex, i: usize| {
            let p = self.position(m, m, s).expect("listed");
            let q = self.vertical_degeneracy(m, m, p, i);
            self.cells[m + 1][m + 1][self.horizontal_degeneracy(m, m + 1, q, i)].clone()
        };
        TruncatedSimplicialSet::build(levels, face, degeneracy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The product of two nerves of `[1]`: bisimplices are pairs of
    /// monotone sequences.
    fn square() -> TruncatedBisimplicialSet {
        let seqs = |k: usize| -> Vec<Vec<usize>> {
            (0..1usize << (k + 1)).map(|b| (0..=k).map(|i| (b >> i) & 1).collect::<Vec<_>>()).filter(|s| s.windows(2).all(|w| w[0] <= w[1])).collect()
        };
        let cells = (0..3)
            .map(|m| (0..3).map(|n| seqs(m).into_iter().flat_map(|a| seqs(n).into_iter().map(move |b| [a.clone(), b].concat())).collect()).collect())
            .collect();
        let drop = |s: &Simplex, at: usize| {
            let mut t = s.clone();
            t.remove(at);
            t
        };
        let dup = |s: &Simplex, at: usize| {
            let mut t = s.clone();
            t.insert(at, s[at]);
            t
        };
        TruncatedBisimplicialSet::build(
            cells,
            &|_, _, s, i| drop(s, i),
            &|m, _, s, j| drop(s, m + 1 + j),
            &|_, _, s, i| dup(s, i),
            &|m, _, s, j| dup(s, m + 1 + j),
        )
        .unwrap()
    }

    #[test]
    fn product_of_intervals() {
        let x = square();
        assert_eq!(x.counts(), vec![vec![4, 6, 8], vec![6, 9, 12], vec![8, 12, 16]]);
        assert_eq!(x.identity_violation(), None);
        assert_eq!(x.row(0).counts(), vec![4, 6, 8]);
        let d = x.diagonal().unwrap();
        assert_eq!(d.counts(), vec![4, 9, 16]);
        assert_eq!(d.identity_violation(), None);
        // the diagonal of N[1] × N[1] is the nerve of [1] × [1]: 4 vertices,
        // 5 nondegenerate edges and 2 nondegenerate triangles
        assert_eq!(d.nondegenerate_counts(), vec![4, 5, 2]);
    }

    #[test]
    fn diagonal_needs_a_square() {
        let cells = vec![vec![vec![vec![0]], vec![vec![0, 0]]]];
        let x = TruncatedBisimplicialSet::build(
            cells,
            &|_, _, s, _| s.clone(),
            &|_, _, s, _| s[..s.len() - 1].to_vec(),
            &|_, _, s, _| s.clone(),
            &|_, _, s, _| [s.as_slice(), &[0]].concat(),
        )
        .unwrap();
        assert!(x.diagonal().is_err());
    }
}
