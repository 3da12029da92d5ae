use serde::Serialize;

use super::bisimplicial::TruncatedBisimplicialSet;
use super::category::{FiniteCategory, Marking};
use super::simplicial::{nerve, Simplex, SimplicialMap, TruncatedSimplicialSet};
use crate::error::{Error, Result};
use crate::model::Predicate;
use crate::sample::FiniteSampleCategory;

pub const MAX_DOUBLE_NERVE_DIMENSION: usize = 3;

/// An `m × n` grid of commuting squares in the sample. `X[i][j]` has
/// horizontal position `i` and vertical position `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Grid {
    m: usize,
    n: usize,
    /// `objects[i * (n + 1) + j]`
    objects: Vec<usize>,
    /// `horizontal[j * m + i]: X[i][j] → X[i+1][j]`
    horizontal: Vec<usize>,
    /// `vertical[i * n + j]: X[i][j] → X[i][j+1]`
    vertical: Vec<usize>,
}

impl Grid {
    fn object(&self, i: usize, j: usize) -> usize {
        self.objects[i * (self.n + 1) + j]
    }

    fn h(&self, i: usize, j: usize) -> usize {
        self.horizontal[j * self.m + i]
    }

    fn v(&self, i: usize, j: usize) -> usize {
        self.vertical[i * self.n + j]
    }

    /// Horizontal arrows row by row, then vertical arrows column by
    /// column; a single object when both sides are zero.
    fn key(&self) -> Simplex {
        if self.m == 0 && self.n == 0 {
            return vec![self.objects[0]];
        }
        [self.horizontal.as_slice(), &self.vertical].concat()
    }

    fn decode(all: &FiniteCategory, m: usize, n: usize, key: &Simplex) -> Grid {
        if m == 0 && n == 0 {
            return Grid { m, n, objects: key.clone(), horizontal: Vec::new(), vertical: Vec::new() };
        }
        let split = (n + 1) * m;
        let (horizontal, vertical) = (key[..split].to_vec(), key[split..].to_vec());
        let mut objects = vec![0; (m + 1) * (n + 1)];
        for i in 0..=m {
            for j in 0..=n {
                objects[i * (n + 1) + j] = if m > 0 {
                    if i < m { all.arrow(horizontal[j * m + i]).src } else { all.arrow(horizontal[j * m + m - 1]).dst }
                } else if j < n {
                    all.arrow(vertical[j]).src
                } else {
                    all.arrow(vertical[n - 1]).dst
                };
            }
        }
        Grid { m, n, objects, horizontal, vertical }
    }

    fn transpose(&self) -> Grid {
        let (m, n) = (self.n, self.m);
        let mut objects = vec![0; (m + 1) * (n + 1)];
        for i in 0..=m {
            for j in 0..=n {
                objects[i * (n + 1) + j] = self.object(j, i);
            }
        }
        Grid { m, n, objects, horizontal: self.vertical.clone(), vertical: self.horizontal.clone() }
    }

    /// Deletes column `i`, composing across it when it is interior.
    fn horizontal_face(&self, all: &FiniteCategory, i: usize) -> Grid {
        let (m, n) = (self.m - 1, self.n);
        let mut objects = Vec::with_capacity((m + 1) * (n + 1));
        for c in (0..=self.m).filter(|&c| c != i) {
            objects.extend((0..=n).map(|j| self.object(c, j)));
        }
        let mut horizontal = Vec::with_capacity(m * (n + 1));
        for j in 0..=n {
            for c in 0..self.m {
                if (i == 0 && c == 0) || (i == self.m && c == self.m - 1) || c == i {
                    continue;
                }
                if c + 1 == i {
                    horizontal.push(all.compose(self.h(i, j), self.h(c, j)).expect("rows are composable"));
                } else {
                    horizontal.push(self.h(c, j));
                }
            }
        }
        let mut vertical = Vec::with_capacity((m + 1) * n);
        for c in (0..=self.m).filter(|&c| c != i) {
            vertical.extend((0..n).map(|j| self.v(c, j)));
        }
        Grid { m, n, objects, horizontal, vertical }
    }

    /// Repeats column `i` with identities between the copies.
    fn horizontal_degeneracy(&self, all: &FiniteCategory, i: usize) -> Grid {
        let (m, n) = (self.m + 1, self.n);
        let columns: Vec<usize> = (0..=self.m).flat_map(|c| if c == i { vec![c, c] } else { vec![c] }).collect();
        let objects = columns.iter().flat_map(|&c| (0..=n).map(move |j| self.object(c, j))).collect();
        let mut horizontal = Vec::with_capacity(m * (n + 1));
        for j in 0..=n {
            for c in 0..self.m {
                if c == i {
                    horizontal.push(all.identity(self.object(i, j)));
                }
                horizontal.push(self.h(c, j));
            }
            if i == self.m {
                horizontal.push(all.identity(self.object(i, j)));
            }
        }
        let vertical = columns.iter().flat_map(|&c| (0..n).map(move |j| self.v(c, j))).collect();
        Grid { m, n, objects, horizontal, vertical }
    }
}

/// The double nerve: horizontal arrows are acyclic cofibrations, vertical
/// arrows weak equivalences in the good class, cells commuting squares.
///
/// Cells are enumerated on demand; `bisimplicial` materializes all of them
/// within a budget.
#[derive(Clone, Debug)]
pub struct DoubleNerve {
    predicate: Predicate,
    cutoff: usize,
    all: FiniteCategory,
    horizontal_out: Vec<Vec<usize>>,
    vertical_out: Vec<Vec<usize>>,
    acyclic_cofibrations: TruncatedSimplicialSet,
    good_weak: TruncatedSimplicialSet,
}

/// The composite through the diagonal, evaluated on every simplex of the
/// two nerves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionCheck {
    pub simplices_checked: usize,
    /// Constant grids are cells of `W`.
    pub constant_grids_are_cells: bool,
    /// `N wg → diag W → N wg` is the identity.
    pub retracts_good_weak: bool,
    /// `N wc → diag W → N wg` is the inclusion.
    pub extends_inclusion: bool,
}

impl RetractionCheck {
    pub fn holds(&self) -> bool {
        self.constant_grids_are_cells && self.retracts_good_weak && self.extends_inclusion
    }
}

pub fn double_nerve_w(sample: &FiniteSampleCategory, good: Predicate, d: usize) -> Result<DoubleNerve> {
    if d > MAX_DOUBLE_NERVE_DIMENSION {
        return Err(Error::Precondition(format!("the double nerve is truncated at {MAX_DOUBLE_NERVE_DIMENSION}, got {d}")));
    }
    let all = FiniteCategory::marked(sample, Marking::All)?;
    let wc = FiniteCategory::marked(sample, Marking::AcyclicCofibrations)?;
    let wg = FiniteCategory::marked(sample, Marking::WeakAnd(good))?;
    let out = |c: &FiniteCategory, x: usize| -> Vec<usize> { c.outgoing(x).iter().map(|&f| c.arrow_id(f)).collect() };
    Ok(DoubleNerve {
        predicate: good,
        cutoff: d,
        horizontal_out: (0..all.object_count()).map(|x| out(&wc, x)).collect(),
        vertical_out: (0..all.object_count()).map(|x| out(&wg, x)).collect(),
        acyclic_cofibrations: nerve(&wc, d)?,
        good_weak: nerve(&wg, d)?,
        all,
    })
}

impl DoubleNerve {
    pub fn predicate(&self) -> Predicate {
        self.predicate
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn acyclic_cofibration_nerve(&self) -> &TruncatedSimplicialSet {
        &self.acyclic_cofibrations
    }

    pub fn good_weak_nerve(&self) -> &TruncatedSimplicialSet {
        &self.good_weak
    }

    /// The sorted `(m, n)`-bisimplices. Errors once more than `budget`
    /// have been found.
    pub fn cell(&self, m: usize, n: usize, budget: u128) -> Result<Vec<Simplex>> {
        let mut keys: Vec<Simplex> = grids(&self.all, &self.horizontal_out, &self.vertical_out, m, n, budget)?.iter().map(Grid::key).collect();
        keys.sort();
        Ok(keys)
    }

    /// Whether `key` describes an `(m, n)`-grid of the right arrows with
    /// commuting squares.
    pub fn contains(&self, m: usize, n: usize, key: &Simplex) -> bool {
        let expected = if m == 0 && n == 0 { 1 } else { (n + 1) * m + (m + 1) * n };
        if m == 0 && n == 0 {
            return key.len() == 1 && key[0] < self.all.object_count();
        }
        if key.len() != expected || key.iter().any(|&f| f >= self.all.arrow_count()) {
            return false;
        }
        let g = Grid::decode(&self.all, m, n, key);
        let arrow = |f: usize| self.all.arrow(f);
        for j in 0..=n {
            for i in 0..m {
                let h = g.h(i, j);
                if !self.horizontal_out[arrow(h).src].contains(&h) || arrow(h).src != g.object(i, j) || arrow(h).dst != g.object(i + 1, j) {
                    return false;
                }
            }
        }
        for i in 0..=m {
            for j in 0..n {
                let v = g.v(i, j);
                if !self.vertical_out[arrow(v).src].contains(&v) || arrow(v).src != g.object(i, j) || arrow(v).dst != g.object(i, j + 1) {
                    return false;
                }
            }
        }
        (0..m).all(|i| (0..n).all(|j| self.all.compose(g.v(i + 1, j), g.h(i, j)) == self.all.compose(g.h(i, j + 1), g.v(i, j))))
    }

    pub fn horizontal_face(&self, m: usize, n: usize, key: &Simplex, i: usize) -> Simplex {
        Grid::decode(&self.all, m, n, key).horizontal_face(&self.all, i).key()
    }

    pub fn vertical_face(&self, m: usize, n: usize, key: &Simplex, j: usize) -> Simplex {
        Grid::decode(&self.all, m, n, key).transpose().horizontal_face(&self.all, j).transpose().key()
    }

    pub fn horizontal_degeneracy(&self, m: usize, n: usize, key: &Simplex, i: usize) -> Simplex {
        Grid::decode(&self.all, m, n, key).horizontal_degeneracy(&self.all, i).key()
    }

    pub fn vertical_degeneracy(&self, m: usize, n: usize, key: &Simplex, j: usize) -> Simplex {
        Grid::decode(&self.all, m, n, key).transpose().horizontal_degeneracy(&self.all, j).transpose().key()
    }

    /// `n ↦ X_{m,n}` with the vertical operators.
    pub fn row(&self, m: usize, budget: u128) -> Result<TruncatedSimplicialSet> {
        let levels = (0..=self.cutoff).map(|n| self.cell(m, n, budget)).collect::<Result<Vec<_>>>()?;
        TruncatedSimplicialSet::build(levels, |n, s, j| self.vertical_face(m, n, s, j), |n, s, j| self.vertical_degeneracy(m, n, s, j))
    }

    /// `m ↦ X_{m,n}` with the horizontal operators.
    pub fn column(&self, n: usize, budget: u128) -> Result<TruncatedSimplicialSet> {
        let levels = (0..=self.cutoff).map(|m| self.cell(m, n, budget)).collect::<Result<Vec<_>>>()?;
        TruncatedSimplicialSet::build(levels, |m, s, i| self.horizontal_face(m, n, s, i), |m, s, i| self.horizontal_degeneracy(m, n, s, i))
    }

    /// Row 0 and the nerve of good weak equivalences have the same
    /// simplices and operators.
    pub fn row_zero_is_good_weak_nerve(&self, budget: u128) -> Result<bool> {
        Ok(self.row(0, budget)?.same_as(&self.good_weak))
    }

    /// Column 0 and the nerve of acyclic cofibrations have the same
    /// simplices and operators.
    pub fn column_zero_is_acyclic_cofibration_nerve(&self, budget: u128) -> Result<bool> {
        Ok(self.column(0, budget)?.same_as(&self.acyclic_cofibrations))
    }

    /// Every cell up to the cutoff in both directions.
    pub fn bisimplicial(&self, budget: u128) -> Result<TruncatedBisimplicialSet> {
        let d = self.cutoff;
        let mut cells = vec![vec![Vec::new(); d + 1]; d + 1];
        let mut total = 0u128;
        for (m, column) in cells.iter_mut().enumerate() {
            for (n, cell) in column.iter_mut().enumerate() {
                *cell = self.cell(m, n, budget.saturating_sub(total))?;
                total += cell.len() as u128;
            }
        }
        let hf = |m: usize, n: usize, s: &Simplex, i: usize| self.horizontal_face(m, n, s, i);
        let vf = |m: usize, n: usize, s: &Simplex, j: usize| self.vertical_face(m, n, s, j);
        let hs = |m: usize, n: usize, s: &Simplex, i: usize| self.horizontal_degeneracy(m, n, s, i);
        let vs = |m: usize, n: usize, s: &Simplex, j: usize| self.vertical_degeneracy(m, n, s, j);
        TruncatedBisimplicialSet::build(cells, &hf, &vf, &hs, &vs)
    }

    /// Restriction of an `(m, m)`-grid along `[m] → [m] × [m]`.
    pub fn restrict_to_diagonal(&self, m: usize, key: &Simplex) -> Simplex {
        let g = Grid::decode(&self.all, m, m, key);
        if m == 0 {
            return g.objects.clone();
        }
        (0..m).map(|k| self.all.compose(g.v(k + 1, k), g.h(k, k)).expect("composable")).collect()
    }

    /// The `(m, m)`-grid repeating a chain along the other direction:
    /// vertical arrows from the chain when `vertical`, horizontal otherwise.
    pub fn constant_grid(&self, m: usize, chain: &Simplex, vertical: bool) -> Simplex {
        if m == 0 {
            return chain.clone();
        }
        let all = &self.all;
        let objects: Vec<usize> = chain.iter().map(|&f| all.arrow(f).src).chain([all.arrow(chain[m - 1]).dst]).collect();
        let g = Grid {
            m,
            n: m,
            objects: (0..=m).flat_map(|i| (0..=m).map(move |j| if vertical { j } else { i })).map(|p| objects[p]).collect(),
            horizontal: (0..=m)
                .flat_map(|j| (0..m).map(move |i| (i, j)))
                .map(|(i, j)| if vertical { all.identity(objects[j]) } else { chain[i] })
                .collect(),
            vertical: (0..=m)
                .flat_map(|i| (0..m).map(move |j| (i, j)))
                .map(|(i, j)| if vertical { chain[j] } else { all.identity(objects[i]) })
                .collect(),
        };
        g.key()
    }

    /// Evaluates both composites through the diagonal on every simplex of
    /// the two nerves, without materializing the diagonal.
    pub fn retraction_check(&self) -> RetractionCheck {
        let mut check =
            RetractionCheck { simplices_checked: 0, constant_grids_are_cells: true, retracts_good_weak: true, extends_inclusion: true };
        for (source, vertical) in [(&self.good_weak, true), (&self.acyclic_cofibrations, false)] {
            for m in 0..=self.cutoff {
                for s in source.simplices(m) {
                    let grid = self.constant_grid(m, s, vertical);
                    check.simplices_checked += 1;
                    check.constant_grids_are_cells &= self.contains(m, m, &grid);
                    let back = self.restrict_to_diagonal(m, &grid);
                    if vertical {
                        check.retracts_good_weak &= back == *s;
                    } else {
                        check.extends_inclusion &= self.good_weak.position(m, &back).is_some() && back == *s;
                    }
                }
            }
        }
        check
    }

    /// The diagonal, materialized, with the comparison maps checked to be
    /// simplicial.
    pub fn diagonal(&self, budget: u128) -> Result<Diagonal> {
        let mut levels = Vec::with_capacity(self.cutoff + 1);
        let mut total = 0u128;
        for m in 0..=self.cutoff {
            let cell = self.cell(m, m, budget.saturating_sub(total))?;
            total += cell.len() as u128;
            levels.push(cell);
        }
        let face = |m: usize, s: &Simplex, i: usize| self.horizontal_face(m, m - 1, &self.vertical_face(m, m, s, i), i);
        let degeneracy = |m: usize, s: &Simplex, i: usize| self.horizontal_degeneracy(m, m + 1, &self.vertical_degeneracy(m, m, s, i), i);
        let set = TruncatedSimplicialSet::build(levels, face, degeneracy)?;
        let restriction = SimplicialMap::from_fn(&set, &self.good_weak, |m, s| self.restrict_to_diagonal(m, s))?;
        let from_good_weak = SimplicialMap::from_fn(&self.good_weak, &set, |m, s| self.constant_grid(m, s, true))?;
        let from_acyclic_cofibrations = SimplicialMap::from_fn(&self.acyclic_cofibrations, &set, |m, s| self.constant_grid(m, s, false))?;
        let inclusion = SimplicialMap::from_fn(&self.acyclic_cofibrations, &self.good_weak, |_, s| s.clone())?;
        Ok(Diagonal { set, restriction, from_good_weak, from_acyclic_cofibrations, inclusion })
    }
}

/// All `m × n` grids: a horizontal chain in row 0, then each further row
/// chosen square by square.
fn grids(all: &FiniteCategory, wc_out: &[Vec<usize>], wg_out: &[Vec<usize>], m: usize, n: usize, budget: u128) -> Result<Vec<Grid>> {
    let over = |count: usize| Error::Budget { estimate: count as u128, budget };
    let mut rows: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for x in 0..all.object_count() {
        extend_row(all, wc_out, vec![x], Vec::new(), m, &mut rows);
    }
    if rows.len() as u128 > budget {
        return Err(over(rows.len()));
    }
    // partial grids: (objects by row, horizontal by row, vertical by row)
    let mut partial: Vec<(Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<Vec<usize>>)> =
        rows.into_iter().map(|(o, h)| (vec![o], vec![h], Vec::new())).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for (objects, horizontal, vertical) in &partial {
            let (top, top_h) = (objects.last().expect("row"), horizontal.last().expect("row"));
            let mut found = Vec::new();
            next_rows(all, wc_out, wg_out, top, top_h, Vec::new(), Vec::new(), Vec::new(), &mut found);
            for (o, h, v) in found {
                let mut g = (objects.clone(), horizontal.clone(), vertical.clone());
                g.0.push(o);
                g.1.push(h);
                g.2.push(v);
                next.push(g);
            }
            if next.len() as u128 > budget {
                return Err(over(next.len()));
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|(objects, horizontal, vertical)| {
            let mut obj = vec![0; (m + 1) * (n + 1)];
            let mut ver = vec![0; (m + 1) * n];
            for i in 0..=m {
                for j in 0..=n {
                    obj[i * (n + 1) + j] = objects[j][i];
                }
                for j in 0..n {
                    ver[i * n + j] = vertical[j][i];
                }
            }
            Grid { m, n, objects: obj, horizontal: horizontal.concat(), vertical: ver }
        })
        .collect())
}

fn extend_row(all: &FiniteCategory, wc_out: &[Vec<usize>], objects: Vec<usize>, arrows: Vec<usize>, m: usize, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
    if arrows.len() == m {
        out.push((objects, arrows));
        return;
    }
    let x = *objects.last().expect("nonempty");
    for &f in &wc_out[x] {
        let mut o = objects.clone();
        o.push(all.arrow(f).dst);
        let mut a = arrows.clone();
        a.push(f);
        extend_row(all, wc_out, o, a, m, out);
    }
}

/// Rows below `top` joined to it by vertical arrows with commuting squares.
#[allow(clippy::too_many_arguments)]
fn next_rows(
    all: &FiniteCategory,
    wc_out: &[Vec<usize>],
    wg_out: &[Vec<usize>],
    top: &[usize],
    top_h: &[usize],
    objects: Vec<usize>,
    horizontal: Vec<usize>,
    vertical: Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>,
) {
    let i = objects.len();
    if i == top.len() {
        out.push((objects, horizontal, vertical));
        return;
    }
    if i == 0 {
        for &v in &wg_out[top[0]] {
            next_rows(all, wc_out, wg_out, top, top_h, vec![all.arrow(v).dst], horizontal.clone(), vec![v], out);
        }
        return;
    }
    let left = *objects.last().expect("nonempty");
    let down_then_across = |h: usize| all.compose(h, vertical[i - 1]).expect("composable");
    for &v in &wg_out[top[i]] {
        let across_then_down = all.compose(v, top_h[i - 1]).expect("composable");
        for &h in &wc_out[left] {
            if all.arrow(h).dst == all.arrow(v).dst && down_then_across(h) == across_then_down {
                let (mut o, mut hh, mut vv) = (objects.clone(), horizontal.clone(), vertical.clone());
                o.push(all.arrow(v).dst);
                hh.push(h);
                vv.push(v);
                next_rows(all, wc_out, wg_out, top, top_h, o, hh, vv, out);
            }
        }
    }
}

/// The diagonal of `W` with the maps between it and the two nerves.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub set: TruncatedSimplicialSet,
    /// Restriction along `[m] → [m] × [m]`, to the nerve of good weak equivalences.
    pub restriction: SimplicialMap,
    /// Grids constant in the horizontal direction.
    pub from_good_weak: SimplicialMap,
    /// Grids constant in the vertical direction.
    pub from_acyclic_cofibrations: SimplicialMap,
    /// Inclusion of the acyclic cofibration nerve into the good weak one.
    pub inclusion: SimplicialMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalChecks {
    pub restriction_retracts_good_weak: bool,
    pub restriction_extends_inclusion: bool,
}

impl Diagonal {
    pub fn checks(&self) -> DiagonalChecks {
        DiagonalChecks {
            restriction_retracts_good_weak: self.from_good_weak.then(&self.restriction).is_identity(),
            restriction_extends_inclusion: self.from_acyclic_cofibrations.then(&self.restriction) == self.inclusion,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::nerve::DEFAULT_BUDGET;
    use crate::sample::enumerate_sample;

    fn sample(names: &[&str]) -> FiniteSampleCategory {
        enumerate_sample(&names.iter().map(|n| (n.to_string(), fixtures::groupoid(n).unwrap())).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn point_sample_is_a_point_everywhere() {
        let w = double_nerve_w(&sample(&["B1"]), Predicate::All, 3).unwrap();
        assert!(w.bisimplicial(DEFAULT_BUDGET).unwrap().counts().iter().flatten().all(|&c| c == 1));
        let diag = w.diagonal(DEFAULT_BUDGET).unwrap();
        assert_eq!(diag.set.counts(), vec![1; 4]);
    }

    #[test]
    fn point_and_arrow() {
        let w = double_nerve_w(&sample(&["B1", "codiscrete2"]), Predicate::All, 2).unwrap();
        let x = w.bisimplicial(DEFAULT_BUDGET).unwrap();
        assert_eq!(x.count(0, 0), 2);
        // id_B1, two end inclusions, id and swap of codiscrete2
        assert_eq!(x.count(1, 0), 5);
        // every functor between the two is an equivalence
        assert_eq!(x.count(0, 1), 8);
        assert_eq!(x.identity_violation(), None);
        assert!(w.row_zero_is_good_weak_nerve(DEFAULT_BUDGET).unwrap());
        assert!(w.column_zero_is_acyclic_cofibration_nerve(DEFAULT_BUDGET).unwrap());
        let diag = w.diagonal(DEFAULT_BUDGET).unwrap();
        assert_eq!(diag.set.counts(), (0..=2).map(|m| x.count(m, m)).collect::<Vec<_>>());
        assert_eq!(diag.set.identity_violation(), None);
        assert!(diag.set.same_as(&x.diagonal().unwrap()));
        let checks = diag.checks();
        assert!(checks.restriction_retracts_good_weak && checks.restriction_extends_inclusion);
        assert!(w.retraction_check().holds());
    }

    #[test]
    fn membership_matches_enumeration() {
        let w = double_nerve_w(&sample(&["B1", "codiscrete2"]), Predicate::All, 2).unwrap();
        for m in 0..=2 {
            for n in 0..=2 {
                let cell = w.cell(m, n, DEFAULT_BUDGET).unwrap();
                assert!(cell.iter().all(|k| w.contains(m, n, k)));
                // a swapped key is rarely a cell, and never one that was not enumerated
                for k in &cell {
                    let mut r = k.clone();
                    r.reverse();
                    assert_eq!(w.contains(m, n, &r), cell.binary_search(&r).is_ok());
                }
            }
        }
    }

    #[test]
    fn budget_stops_enumeration() {
        let w = double_nerve_w(&sample(&["B1", "codiscrete2"]), Predicate::All, 2).unwrap();
        assert!(matches!(w.cell(2, 2, 10), Err(Error::Budget { .. })));
        assert!(matches!(w.bisimplicial(100), Err(Error::Budget { .. })));
    }

    #[test]
    fn truncation_limit() {
        assert!(double_nerve_w(&sample(&["B1"]), Predicate::All, 4).is_err());
    }
}
