//! Groupoid *-algebras with exact structure constants, their block
//! decompositions and the K₀ maps between them.
//!
//! For a finite groupoid the complex groupoid algebra is already its full
//! C*-algebra, so no completion is taken.

mod blocks;
mod corner;
pub mod exact;
mod k0;
mod map;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

pub use blocks::{block_decomposition, Block, BlockDecomposition, DEFAULT_SEED, DEFAULT_TOL};
pub use corner::{corner_algebra, find_basis_isomorphism, is_full_projection, Corner};
pub use k0::{k0_map, morita_check, CornerWitness, K0Map, MoritaReport};
pub use map::{induced_map, AlgebraMap};

/// An algebra with a basis closed under multiplication up to zero: every
/// product of basis elements is a basis element or `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantAlgebra {
    basis: Vec<String>,
    product: Vec<Vec<Option<usize>>>,
    star: Vec<usize>,
    unit: Vec<usize>,
    groupoid: Option<Arc<Groupoid>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub associative: bool,
    pub unital: bool,
    pub star_involutive: bool,
    pub star_antimultiplicative: bool,
}

impl AxiomCheck {
    pub fn holds(&self) -> bool {
        self.associative && self.unital && self.star_involutive && self.star_antimultiplicative
    }
}

/// `f·g = f∘g` when composable and `0` otherwise; `f* = f⁻¹`; unit `Σ id_x`.
pub fn groupoid_algebra(g: &Arc<Groupoid>) -> StructureConstantAlgebra {
    let n = g.morphism_count();
    let product = (0..n).map(|f| (0..n).map(|h| g.compose(f, h)).collect()).collect();
    StructureConstantAlgebra {
        basis: g.morphisms().iter().map(|m| m.id.clone()).collect(),
        product,
        star: (0..n).map(|f| g.inverse(f)).collect(),
        unit: (0..g.object_count()).map(|x| g.identity(x)).collect(),
        groupoid: Some(g.clone()),
    }
}

impl StructureConstantAlgebra {
    /// An algebra given by its product table, involution and the basis
    /// elements summing to the unit. Axioms are not checked here.
    pub fn from_table(basis: Vec<String>, product: Vec<Vec<Option<usize>>>, star: Vec<usize>, unit: Vec<usize>) -> Result<Self> {
        let n = basis.len();
        let square = product.len() == n && product.iter().all(|r| r.len() == n);
        let in_range = product.iter().flatten().flatten().chain(&star).chain(&unit).all(|&i| i < n);
        if !square || star.len() != n || !in_range {
            return Err(Error::Precondition("product table, star or unit does not fit the basis".into()));
        }
        Ok(StructureConstantAlgebra { basis, product, star, unit, groupoid: None })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// The groupoid this is the algebra of, if any.
    pub fn groupoid(&self) -> Option<&Arc<Groupoid>> {
        self.groupoid.as_ref()
    }

    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a][b]
    }

    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    /// Basis elements whose sum is the unit.
    pub fn unit_support(&self) -> &[usize] {
        &self.unit
    }

    pub fn unit(&self) -> Vec<BigRational> {
        let mut u = vec![BigRational::zero(); self.dim()];
        for &i in &self.unit {
            u[i] = BigRational::one();
        }
        u
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim()];
        v[i] = BigRational::one();
        v
    }

    pub fn multiply(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if let Some(c) = self.product[a][b] {
                    out[c] += xa * yb;
                }
            }
        }
        out
    }

    /// Coefficients are real, so the involution only permutes them.
    pub fn star_element(&self, x: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            out[self.star[a]] = xa.clone();
        }
        out
    }

    /// Trace of left multiplication by basis element `a`: the number of `b`
    /// with `a·b = b`.
    pub fn left_trace(&self, a: usize) -> usize {
        (0..self.dim()).filter(|&b| self.product[a][b] == Some(b)).count()
    }

    /// Exhaustive check over basis triples; no tolerance involved.
    pub fn check_axioms(&self) -> AxiomCheck {
        let n = self.dim();
        let p = &self.product;
        let associative = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let left = p[a][b].and_then(|ab| p[ab][c]);
                    let right = p[b][c].and_then(|bc| p[a][bc]);
                    left == right
                })
            })
        });
        let unit = self.unit();
        let unital = (0..n).all(|a| {
            let e = self.basis_vector(a);
            self.multiply(&unit, &e) == e && self.multiply(&e, &unit) == e
        });
        let star_involutive = (0..n).all(|a| self.star[self.star[a]] == a);
        let star_antimultiplicative =
            (0..n).all(|a| (0..n).all(|b| p[a][b].map(|c| self.star[c]) == p[self.star[b]][self.star[a]]));
        AxiomCheck { associative, unital, star_involutive, star_antimultiplicative }
    }
}

/// A self-adjoint idempotent with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    coefficients: Vec<BigRational>,
}

impl Projection {
    /// Checks `p·p = p` and `p* = p` exactly.
    pub fn new(algebra: &StructureConstantAlgebra, coefficients: Vec<BigRational>) -> Result<Self> {
        if coefficients.len() != algebra.dim() {
            return Err(Error::Precondition("coefficient vector does not fit the basis".into()));
        }
        if algebra.multiply(&coefficients, &coefficients) != coefficients {
            return Err(Error::Precondition("p·p ≠ p".into()));
        }
        if algebra.star_element(&coefficients) != coefficients {
            return Err(Error::Precondition("p* ≠ p".into()));
        }
        Ok(Projection { coefficients })
    }

    /// `id_x` for the object named `object`.
    pub fn identity_at(algebra: &StructureConstantAlgebra, object: &str) -> Result<Self> {
        let g = algebra.groupoid().ok_or_else(|| Error::Precondition("not a groupoid algebra".into()))?;
        let x = g.object_index(object).ok_or_else(|| Error::UnknownObject(object.into()))?;
        Ok(Projection { coefficients: algebra.basis_vector(g.identity(x)) })
    }

    /// `Σ_{x ∈ objects} id_x`.
    pub fn identities(algebra: &StructureConstantAlgebra, objects: &[usize]) -> Result<Self> {
        let g = algebra.groupoid().ok_or_else(|| Error::Precondition("not a groupoid algebra".into()))?;
        let mut c = vec![BigRational::zero(); algebra.dim()];
        for &x in objects {
            c[g.identity(x)] = BigRational::one();
        }
        Projection::new(algebra, c)
    }

    pub fn unit(algebra: &StructureConstantAlgebra) -> Self {
        Projection { coefficients: algebra.unit() }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }
}

pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
