use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::exact::{Echelon, Row};
use super::StructureConstantAlgebra;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0;

/// One simple summand `M_size(ℂ)`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    /// Connected component of the groupoid, numbered by least object.
    pub component: usize,
    /// Objects in that component.
    pub component_objects: usize,
    /// Matrix size of the block.
    pub size: usize,
    /// Degree of the matching irreducible of the vertex group, `size / component_objects`.
    pub degree: usize,
    /// Minimal central idempotent, as `[re, im]` per basis element.
    #[serde(serialize_with = "as_pairs")]
    pub idempotent: Vec<Complex64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Largest violation of idempotence, orthogonality, self-adjointness and
    /// summing to the unit.
    pub residual: f64,
    pub center_dimension: usize,
    pub seed: u64,
    pub tol: f64,
}

impl BlockDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }
}

fn as_pairs<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

/// The center, exactly: `z` with `z·b = b·z` for every basis element `b`.
pub fn center(a: &StructureConstantAlgebra) -> Vec<Vec<BigRational>> {
    let n = a.dim();
    let mut constraints = Echelon::new();
    for b in 0..n {
        // coefficient of c in z·b - b·z
        let mut rows: Vec<Row> = vec![Row::new(); n];
        for x in 0..n {
            if let Some(c) = a.product(x, b) {
                *rows[c].entry(x).or_insert_with(BigRational::zero) += super::rational(1);
            }
            if let Some(c) = a.product(b, x) {
                *rows[c].entry(x).or_insert_with(BigRational::zero) -= super::rational(1);
            }
        }
        for row in rows {
            constraints.insert(row);
        }
    }
    constraints.kernel(n)
}

/// Splits the algebra into matrix blocks.
///
/// The exact center is orthonormalized and a random central element `h`
/// with complex coefficients (seeded) is drawn. Multiplication by `h + h*`
/// on the center is Hermitian, and its eigenvectors are the minimal central
/// idempotents up to scale. Coinciding or nearly coinciding eigenvalues
/// are reported as a resolution failure rather than guessed apart.
pub fn block_decomposition(a: &StructureConstantAlgebra, tol: f64, seed: u64) -> Result<BlockDecomposition> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let n = a.dim();
    let z = center(a);
    let r = z.len();
    let zero = Complex64::new(0.0, 0.0);

    // orthonormal basis of the center
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    for v in &z {
        let mut w: Vec<Complex64> = v.iter().map(|x| Complex64::new(x.to_f64().unwrap_or(0.0), 0.0)).collect();
        for _ in 0..2 {
            for u in &q {
                let c = inner(&w, u);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= c * ui;
                }
            }
        }
        let norm = inner(&w, &w).re.sqrt();
        w.iter_mut().for_each(|x| *x /= norm);
        q.push(w);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = vec![zero; n];
    for u in &q {
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        for (hi, ui) in h.iter_mut().zip(u) {
            *hi += c * ui;
        }
    }
    let h_star = star(a, &h);
    let hs: Vec<Complex64> = h.iter().zip(&h_star).map(|(x, y)| x + y).collect();

    let images: Vec<Vec<Complex64>> = q.iter().map(|u| multiply(a, &hs, u)).collect();
    let mut m = DMatrix::from_fn(r, r, |i, j| inner(&images[j], &q[i]));
    m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = m.symmetric_eigen();

    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let scale = eig.eigenvalues.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let threshold = tol.sqrt() * scale;
    for w in order.windows(2) {
        let gap = eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]];
        if gap < threshold {
            return Err(Error::Resolution(format!(
                "central eigenvalues {:.3e} and {:.3e} are closer than {threshold:.1e}",
                eig.eigenvalues[w[0]], eig.eigenvalues[w[1]]
            )));
        }
    }

    let labels = a.groupoid().map(|g| g.component_labels());
    let mut blocks = Vec::with_capacity(r);
    for k in 0..r {
        let col = eig.eigenvectors.column(k);
        let mut e = vec![zero; n];
        for (i, u) in q.iter().enumerate() {
            for (ei, ui) in e.iter_mut().zip(u) {
                *ei += col[i] * ui;
            }
        }
        let sq = multiply(a, &e, &e);
        let beta = inner(&sq, &e) / inner(&e, &e);
        if beta.norm() < threshold {
            return Err(Error::Resolution("an eigenvector of the center is nilpotent".into()));
        }
        e.iter_mut().for_each(|x| *x /= beta);

        let trace: Complex64 = e.iter().enumerate().map(|(i, x)| x * a.left_trace(i) as f64).sum();
        let size_f = trace.re.max(0.0).sqrt();
        let size = size_f.round() as usize;
        if (size_f - size as f64).abs() > 0.01 || trace.im.abs() > 0.01 || size == 0 {
            return Err(Error::Rounding { value: size_f });
        }
        let (component, component_objects) = match (&labels, a.groupoid()) {
            (Some(labels), Some(g)) => {
                let x = (0..g.object_count())
                    .max_by(|&x, &y| e[g.identity(x)].norm().total_cmp(&e[g.identity(y)].norm()))
                    .expect("nonempty");
                (labels[x], labels.iter().filter(|&&l| l == labels[x]).count())
            }
            _ => (0, 1),
        };
        blocks.push(Block { component, component_objects, size, degree: size / component_objects.max(1), idempotent: e });
    }
    blocks.sort_by(|x, y| {
        (x.component, x.size).cmp(&(y.component, y.size)).then_with(|| {
            for (u, v) in x.idempotent.iter().zip(&y.idempotent) {
                let c = v.re.total_cmp(&u.re).then(v.im.total_cmp(&u.im));
                if (u - v).norm() > threshold && c.is_ne() {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let mut residual = 0.0f64;
    let unit = a.unit();
    let mut total = vec![zero; n];
    for (i, b) in blocks.iter().enumerate() {
        for (t, x) in total.iter_mut().zip(&b.idempotent) {
            *t += x;
        }
        residual = residual.max(distance(&multiply(a, &b.idempotent, &b.idempotent), &b.idempotent));
        residual = residual.max(distance(&star(a, &b.idempotent), &b.idempotent));
        for c in &blocks[i + 1..] {
            residual = residual.max(distance(&multiply(a, &b.idempotent, &c.idempotent), &vec![zero; n]));
        }
    }
    let unit_c: Vec<Complex64> = unit.iter().map(|x| Complex64::new(x.to_f64().unwrap_or(0.0), 0.0)).collect();
    residual = residual.max(distance(&total, &unit_c));
    if residual > tol.sqrt() {
        return Err(Error::Resolution(format!("idempotent residual {residual:.2e}")));
    }
    Ok(BlockDecomposition { blocks, residual, center_dimension: r, seed, tol })
}

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

fn distance(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

pub(crate) fn multiply(a: &StructureConstantAlgebra, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.dim()];
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| v.norm() > 0.0) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| v.norm() > 0.0) {
            if let Some(k) = a.product(i, j) {
                out[k] += xi * yj;
            }
        }
    }
    out
}

fn star(a: &StructureConstantAlgebra, x: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.dim()];
    for (i, xi) in x.iter().enumerate() {
        out[a.star(i)] = xi.conj();
    }
    out
}

/// Trace of left multiplication by `x`.
pub(crate) fn left_trace(a: &StructureConstantAlgebra, x: &[Complex64]) -> Complex64 {
    x.iter().enumerate().filter(|(_, v)| v.norm() > 0.0).map(|(i, v)| v * a.left_trace(i) as f64).sum()
}
