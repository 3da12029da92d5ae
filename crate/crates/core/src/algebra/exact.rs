//! Sparse row reduction over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Row = BTreeMap<usize, BigRational>;

/// Rows in echelon form, keyed by pivot column, each with pivot entry 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored rows and keeps the remainder.
    /// Returns whether the rank went up.
    pub fn insert(&mut self, mut row: Row) -> bool {
        row.retain(|_, v| !v.is_zero());
        let mut from = 0;
        loop {
            let Some((&col, _)) = row.range(from..).next() else {
                return false;
            };
            match self.rows.get(&col) {
                Some(pivot) => {
                    let factor = row[&col].clone();
                    for (c, v) in pivot {
                        let entry = row.entry(*c).or_insert_with(BigRational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                    from = col + 1;
                }
                None => {
                    let lead = row[&col].clone();
                    if !lead.is_one() {
                        for v in row.values_mut() {
                            *v /= &lead;
                        }
                    }
                    self.rows.insert(col, row);
                    return true;
                }
            }
        }
    }

    /// Clears every pivot column from the other rows.
    fn reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let pivot = self.rows[&p].clone();
            for (&q, row) in self.rows.range_mut(..p) {
                debug_assert!(q < p);
                if let Some(factor) = row.get(&p).cloned() {
                    for (c, v) in &pivot {
                        let entry = row.entry(*c).or_insert_with(BigRational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                }
            }
        }
    }

    /// A basis of `{x : row·x = 0 for every row}` in `n` unknowns.
    pub fn kernel(mut self, n: usize) -> Vec<Vec<BigRational>> {
        self.reduce();
        (0..n)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut v = vec![BigRational::zero(); n];
                v[free] = BigRational::one();
                for (&p, row) in &self.rows {
                    if let Some(x) = row.get(&free) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// The reduced rows as dense vectors of length `n`.
    pub fn basis(mut self, n: usize) -> Vec<Vec<BigRational>> {
        self.reduce();
        self.rows
            .into_values()
            .map(|row| {
                let mut v = vec![BigRational::zero(); n];
                for (c, x) in row {
                    v[c] = x;
                }
                v
            })
            .collect()
    }
}

pub fn sparse(v: &[BigRational]) -> Row {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}
