//! Independent reference computations for the integration and acceptance
//! suites. Nothing here calls the library's algorithms, only its data.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use gpdkit::groupoid::{FiniteGroup, Groupoid, GroupoidFunctor};
use gpdkit::nerve::{HomologyProfile, TruncatedSimplicialSet};
use gpdkit::presentation::pushout_along_cofibration;

/// (object map, morphism map)
pub type RawFunctor = (Vec<usize>, Vec<usize>);

/// Every functor `a → b`, by plain backtracking: objects first, then
/// morphisms in index order, checking each composite as soon as all three
/// of its arrows are assigned.
pub fn functors(a: &Groupoid, b: &Groupoid) -> Vec<RawFunctor> {
    let (na, ma) = (a.object_count(), a.morphism_count());
    let mut out = Vec::new();
    if na > 0 && b.object_count() == 0 {
        return out;
    }
    // composable triples (g, f, g∘f) indexed by their largest member
    let mut triples = vec![Vec::new(); ma];
    for f in 0..ma {
        for g in 0..ma {
            if let Some(h) = a.compose(g, f) {
                triples[f.max(g).max(h)].push((g, f, h));
            }
        }
    }
    let mut objects = vec![0; na];
    loop {
        let mut morphisms = vec![usize::MAX; ma];
        assign(a, b, &objects, &triples, 0, &mut morphisms, &mut out);
        // next object map in lexicographic order
        let mut i = 0;
        while i < na {
            objects[i] += 1;
            if objects[i] < b.object_count() {
                break;
            }
            objects[i] = 0;
            i += 1;
        }
        if i == na {
            return out;
        }
    }
}

fn assign(
    a: &Groupoid,
    b: &Groupoid,
    objects: &[usize],
    triples: &[Vec<(usize, usize, usize)>],
    m: usize,
    morphisms: &mut Vec<usize>,
    out: &mut Vec<RawFunctor>,
) {
    if m == a.morphism_count() {
        out.push((objects.to_vec(), morphisms.clone()));
        return;
    }
    let (x, y) = (objects[a.src(m)], objects[a.dst(m)]);
    for &candidate in b.hom(x, y) {
        if a.is_identity(m) && !b.is_identity(candidate) {
            continue;
        }
        morphisms[m] = candidate;
        let ok = triples[m].iter().all(|&(g, f, h)| b.compose(morphisms[g], morphisms[f]) == Some(morphisms[h]));
        if ok {
            assign(a, b, objects, triples, m + 1, morphisms, out);
        }
    }
    morphisms[m] = usize::MAX;
}

pub fn raw(f: &GroupoidFunctor) -> RawFunctor {
    (f.object_map().to_vec(), f.morphism_map().to_vec())
}

/// `second ∘ first`.
pub fn compose(first: &RawFunctor, second: &RawFunctor) -> RawFunctor {
    (first.0.iter().map(|&x| second.0[x]).collect(), first.1.iter().map(|&m| second.1[m]).collect())
}

/// Outcome of checking a pushout square against every groupoid in a list.
#[derive(Debug, Default)]
pub struct UniversalPropertyCheck {
    pub targets: usize,
    pub cocones: usize,
    pub square_commutes: bool,
    /// Every cocone has exactly one factorization through the pushout.
    pub unique_factorization: bool,
    /// The library's induced map is that factorization.
    pub induced_map_agrees: bool,
}

impl UniversalPropertyCheck {
    pub fn holds(&self) -> bool {
        self.square_commutes && self.unique_factorization && self.induced_map_agrees
    }
}

/// Concretizes `B ⊔_A C` and compares functors out of it with cocones
/// under `B ← A → C`, for every target.
pub fn pushout_universal_property(i: &GroupoidFunctor, f: &GroupoidFunctor, targets: &[Groupoid]) -> UniversalPropertyCheck {
    let pushout = pushout_along_cofibration(i, f).expect("pushout");
    let realization = pushout.presentation.concretize(10_000).expect("concretize").realization().expect("finite pushout");
    let (b, c) = (i.target(), f.target());
    let to_b = raw(&realization.pull(b, &pushout.from_left));
    let to_c = raw(&realization.pull(c, &pushout.from_right));
    let p = realization.groupoid();
    let mut check = UniversalPropertyCheck {
        square_commutes: compose(&raw(i), &to_b) == compose(&raw(f), &to_c),
        unique_factorization: true,
        induced_map_agrees: true,
        ..Default::default()
    };
    let (ri, rf) = (raw(i), raw(f));
    for t in targets {
        let t = Arc::new(t.clone());
        check.targets += 1;
        let from_b = functors(b, &t);
        let from_c = functors(c, &t);
        let cocones: HashSet<(RawFunctor, RawFunctor)> = from_b
            .iter()
            .flat_map(|l| from_c.iter().map(move |r| (l.clone(), r.clone())))
            .filter(|(l, r)| compose(&ri, l) == compose(&rf, r))
            .collect();
        check.cocones += cocones.len();
        let mut hit = HashSet::new();
        for u in functors(p, &t) {
            let cocone = (compose(&to_b, &u), compose(&to_c, &u));
            if !cocones.contains(&cocone) || !hit.insert(cocone.clone()) {
                check.unique_factorization = false;
            }
            let (l, r) = &cocone;
            let l = GroupoidFunctor::new(b.clone(), t.clone(), l.0.clone(), l.1.clone()).expect("functor");
            let r = GroupoidFunctor::new(c.clone(), t.clone(), r.0.clone(), r.1.clone()).expect("functor");
            let induced = pushout.induced(&l, &r).and_then(|m| realization.extend(&m)).expect("induced map");
            if raw(&induced) != u {
                check.induced_map_agrees = false;
            }
        }
        if hit.len() != cocones.len() {
            check.unique_factorization = false;
        }
    }
    check
}

/// Ten pushouts along cofibrations with finite results.
pub fn pushout_instances() -> Vec<(&'static str, GroupoidFunctor, GroupoidFunctor)> {
    use gpdkit::fixtures::groupoid;
    let g = |name: &str| Arc::new(groupoid(name).unwrap());
    let faithful = |f: &RawFunctor| f.1.iter().collect::<HashSet<_>>().len() == f.1.len();
    let any = |_: &RawFunctor| true;
    let nontrivial = |f: &RawFunctor| f.1.iter().collect::<HashSet<_>>().len() > 1;
    // the first functor with the given object map and property
    let pick = |a: &Arc<Groupoid>, b: &Arc<Groupoid>, objects: &[usize], keep: &dyn Fn(&RawFunctor) -> bool| -> GroupoidFunctor {
        let found = functors(a, b).into_iter().find(|f| f.0 == objects && keep(f)).expect("a functor with this object map");
        GroupoidFunctor::new(a.clone(), b.clone(), found.0, found.1).unwrap()
    };
    let (b1, bz2, bz3, bz4, bs3) = (g("B1"), g("BZ2"), g("BZ3"), g("BZ4"), g("BS3"));
    let (cd2, cd3, d2, d3) = (g("codiscrete2"), g("codiscrete3"), g("discrete2"), g("discrete3"));
    let cd2z2 = g("codiscrete2xZ2");
    let two_points = g("B1+B1");
    vec![
        ("end of an interval, glued to BZ2", pick(&b1, &cd2, &[0], &faithful), pick(&b1, &bz2, &[0], &faithful)),
        ("end of an interval, glued to BS3", pick(&b1, &cd2, &[0], &faithful), pick(&b1, &bs3, &[0], &faithful)),
        ("vertex group into codiscrete2xZ2, along the identity", pick(&bz2, &cd2z2, &[0], &faithful), pick(&bz2, &bz2, &[0], &faithful)),
        ("one of two points, glued to BZ2", pick(&b1, &two_points, &[0], &faithful), pick(&b1, &bz2, &[0], &faithful)),
        ("discrete2 into codiscrete2, along discrete2 into discrete3", pick(&d2, &cd2, &[0, 1], &faithful), pick(&d2, &d3, &[0, 1], &faithful)),
        ("vertex of codiscrete3, glued to codiscrete2", pick(&b1, &cd3, &[0], &faithful), pick(&b1, &cd2, &[1], &faithful)),
        ("Z2 in Z4, collapsed", pick(&bz2, &bz4, &[0], &faithful), pick(&bz2, &b1, &[0], &any)),
        ("transposition in S3, collapsed", pick(&bz2, &bs3, &[0], &faithful), pick(&bz2, &b1, &[0], &any)),
        ("A3 in S3, collapsed", pick(&bz3, &bs3, &[0], &faithful), pick(&bz3, &b1, &[0], &any)),
        ("codiscrete2 into codiscrete3, onto BZ2", pick(&cd2, &cd3, &[0, 1], &faithful), pick(&cd2, &bz2, &[0, 0], &nontrivial)),
    ]
}

/// Irreducible degrees of a group from its order, class count and
/// abelianization alone: the linear characters number `|G/[G,G]|`, and
/// the remaining degrees divide `|G|`, are at least 2 and have squares
/// summing to what is left. Panics if that does not pin them down.
pub fn irreducible_degrees(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    // commutator subgroup by closure
    let mut derived: BTreeSet<usize> = BTreeSet::from([g.identity()]);
    for a in 0..n {
        for b in 0..n {
            derived.insert(g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)));
        }
    }
    loop {
        let grown: BTreeSet<usize> = derived.iter().flat_map(|&x| derived.iter().map(move |&y| (x, y))).map(|(x, y)| g.mul(x, y)).collect();
        if grown.len() == derived.len() {
            break;
        }
        derived = grown;
    }
    let linear = n / derived.len();
    // conjugacy classes by orbit
    let mut seen = vec![false; n];
    let mut classes = 0;
    for x in 0..n {
        if !seen[x] {
            classes += 1;
            for a in 0..n {
                seen[g.mul(g.mul(a, x), g.inverse(a))] = true;
            }
        }
    }
    let mut solutions = Vec::new();
    fn search(left: usize, slots: usize, min: usize, order: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for d in min..=left {
            if d * d > left {
                break;
            }
            if order.is_multiple_of(d) {
                acc.push(d);
                search(left - d * d, slots - 1, d, order, acc, out);
                acc.pop();
            }
        }
    }
    search(n - linear, classes - linear, 2, n, &mut Vec::new(), &mut solutions);
    assert_eq!(solutions.len(), 1, "degrees of a group of order {n} are not determined by counting");
    let mut degrees = vec![1; linear];
    degrees.extend(&solutions[0]);
    degrees
}

/// Expected block sizes of a groupoid algebra: `n·d` for each component
/// with `n` objects and each irreducible degree `d` of its vertex group.
pub fn block_sizes(g: &Groupoid) -> Vec<usize> {
    let mut sizes: Vec<usize> = g
        .components()
        .iter()
        .flat_map(|c| {
            let n = c.objects.len();
            irreducible_degrees(&g.vertex_group(c.base).as_group(g)).into_iter().map(move |d| n * d)
        })
        .collect();
    sizes.sort();
    sizes
}

const LARGE_PRIMES: [u64; 2] = [2_147_483_647, 2_305_843_009_213_693_951];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Rank over `F_p` by row reduction.
pub fn rank_mod(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let factor = m[r][c];
                for j in c..cols {
                    let sub = mul_mod(factor, m[rank][j], p);
                    m[r][j] = (m[r][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the rationals, as the common rank modulo two large primes.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let ranks: Vec<usize> = LARGE_PRIMES.iter().map(|&p| rank_mod(rows, p)).collect();
    assert_eq!(ranks[0], ranks[1], "ranks modulo the two large primes differ");
    ranks[0]
}

/// Boundary `C_k → C_{k-1}` on nondegenerate simplices, rows indexed by
/// `k`-simplices, built from the face tables.
pub fn boundary(x: &TruncatedSimplicialSet, k: usize) -> Vec<Vec<i64>> {
    let nondegenerate = |level: usize| -> Vec<usize> { (0..x.count(level)).filter(|&s| !x.is_degenerate(level, s)).collect() };
    let columns = nondegenerate(k - 1);
    nondegenerate(k)
        .into_iter()
        .map(|s| {
            let mut row = vec![0i64; columns.len()];
            for i in 0..=k {
                let face = x.face(k, s, i);
                if let Some(c) = columns.iter().position(|&t| t == face) {
                    row[c] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
            row
        })
        .collect()
}

/// Betti numbers in degrees below the cutoff, over `F_p` or (with `None`)
/// over the rationals.
pub fn betti(x: &TruncatedSimplicialSet, p: Option<u64>) -> Vec<usize> {
    let rank = |rows: &[Vec<i64>]| match p {
        Some(p) => rank_mod(rows, p),
        None => rank_rational(rows),
    };
    let chains: Vec<usize> = (0..=x.cutoff()).map(|k| (0..x.count(k)).filter(|&s| !x.is_degenerate(k, s)).count()).collect();
    let ranks: Vec<usize> = (0..=x.cutoff()).map(|k| if k == 0 { 0 } else { rank(&boundary(x, k)) }).collect();
    (0..x.cutoff()).map(|k| chains[k] - ranks[k] - ranks[k + 1]).collect()
}

/// Whether an integral profile is consistent with Betti numbers over the
/// rationals and over `F_p` for small primes, via universal coefficients.
pub fn agrees_with_row_reduction(x: &TruncatedSimplicialSet, profile: &HomologyProfile) -> bool {
    let rational = betti(x, None);
    let ranks_agree = profile.groups.iter().zip(&rational).all(|(g, &b)| g.rank == b);
    let torsion_agrees = [2u64, 3, 5, 7].iter().all(|&p| {
        let mod_p = betti(x, Some(p));
        let t = |k: usize| profile.groups[k].torsion.iter().filter(|&&q| q % p == 0).count();
        (0..profile.groups.len()).all(|k| mod_p[k] == profile.groups[k].rank + t(k) + if k > 0 { t(k - 1) } else { 0 })
    });
    profile.groups.len() == rational.len() && ranks_agree && torsion_agrees
}
