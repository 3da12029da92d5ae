//! Named groupoids for the command line, the guide and the test suites.
//!
//! Names: `B<G>` for a one-object groupoid, `codiscrete<n>`, `discrete<n>`,
//! an optional `x<G>` suffix for the product with a group, and `+` for
//! disjoint unions. Groups: `1`, `Z<n>`, `S<n>`, `A<n>`, `D<n>` (order 2n),
//! `Dic<n>` (order 4n), `Q8`, `V4`.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::groupoid::{enumerate_functors, FiniteGroup, FunctorFilter, Groupoid, GroupoidFunctor};

/// The fixtures the property suites run over.
pub const STANDARD: &[&str] = &[
    "B1",
    "BZ2",
    "BZ3",
    "BS3",
    "codiscrete2",
    "codiscrete3",
    "discrete2",
    "discrete3",
    "B1+B1",
    "BZ2+B1",
    "BZ2+BZ3",
    "codiscrete2+B1",
    "codiscrete2+BZ2",
    "codiscrete2xZ2",
    "codiscrete2xZ3",
    "codiscrete3xZ2",
    "codiscrete2xS3",
    "BZ2xZ2",
    "BZ4",
    "codiscrete2+codiscrete2",
];

pub fn group(name: &str) -> Result<FiniteGroup> {
    let bad = || Error::Precondition(format!("unknown group `{name}`"));
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(bad);
    Ok(match name {
        "1" => FiniteGroup::trivial(),
        "Q8" => FiniteGroup::quaternion(),
        "V4" => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        _ => {
            if let Some(n) = name.strip_prefix("Dic") {
                FiniteGroup::dicyclic(num(n)?)
            } else if let Some(n) = name.strip_prefix('Z') {
                FiniteGroup::cyclic(num(n)?)
            } else if let Some(n) = name.strip_prefix('S') {
                FiniteGroup::symmetric(num(n)?)
            } else if let Some(n) = name.strip_prefix('A') {
                FiniteGroup::alternating(num(n)?)
            } else if let Some(n) = name.strip_prefix('D') {
                FiniteGroup::dihedral(num(n)?)
            } else {
                return Err(bad());
            }
        }
    })
}

pub fn groupoid(name: &str) -> Result<Groupoid> {
    let parts: Vec<&str> = name.split('+').collect();
    if parts.len() > 1 {
        let gs = parts.iter().map(|p| groupoid(p)).collect::<Result<Vec<_>>>()?;
        return Ok(Groupoid::disjoint_union(&gs.iter().collect::<Vec<_>>()));
    }
    let bad = || Error::Precondition(format!("unknown fixture `{name}`"));
    let (base, with) = match name.split_once('x') {
        Some((b, g)) => (b, Some(group(g)?)),
        None => (name, None),
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let g = if let Some(g) = base.strip_prefix('B') {
        Groupoid::classifying(&group(g)?)
    } else if let Some(n) = base.strip_prefix("codiscrete") {
        Groupoid::codiscrete(num(n)?)
    } else if let Some(n) = base.strip_prefix("discrete") {
        Groupoid::discrete(num(n)?)
    } else {
        return Err(bad());
    };
    Ok(match with {
        Some(k) => Groupoid::with_group(&g, &k),
        None => g,
    })
}

/// Every group of order at most 12, up to isomorphism.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    let z = FiniteGroup::cyclic;
    let x = FiniteGroup::direct_product;
    vec![
        ("1", FiniteGroup::trivial()),
        ("Z2", z(2)),
        ("Z3", z(3)),
        ("Z4", z(4)),
        ("V4", x(&z(2), &z(2))),
        ("Z5", z(5)),
        ("Z6", z(6)),
        ("S3", FiniteGroup::symmetric(3)),
        ("Z7", z(7)),
        ("Z8", z(8)),
        ("Z2xZ4", x(&z(2), &z(4))),
        ("Z2^3", x(&z(2), &x(&z(2), &z(2)))),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
        ("Z9", z(9)),
        ("Z3xZ3", x(&z(3), &z(3))),
        ("Z10", z(10)),
        ("D5", FiniteGroup::dihedral(5)),
        ("Z11", z(11)),
        ("Z12", z(12)),
        ("Z2xZ6", x(&z(2), &z(6))),
        ("D6", FiniteGroup::dihedral(6)),
        ("A4", FiniteGroup::alternating(4)),
        ("Dic3", FiniteGroup::dicyclic(3)),
    ]
}

/// Every groupoid with at most `max_objects` objects and `max_morphisms`
/// morphisms, up to isomorphism (components drawn from [`small_groups`]).
pub fn small_groupoids(max_objects: usize, max_morphisms: usize) -> Vec<Groupoid> {
    let groups = small_groups();
    // (objects, group) pairs in a fixed order
    let mut kinds = Vec::new();
    for n in 1..=max_objects {
        for (i, (_, g)) in groups.iter().enumerate() {
            if n * n * g.order() <= max_morphisms {
                kinds.push((n, i));
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn extend(
        start: usize,
        objects: usize,
        morphisms: usize,
        limits: (usize, usize),
        kinds: &[(usize, usize)],
        groups: &[(&str, FiniteGroup)],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Groupoid>,
    ) {
        if !chosen.is_empty() {
            let parts: Vec<Groupoid> = chosen
                .iter()
                .map(|&k| {
                    let (n, g) = kinds[k];
                    Groupoid::with_group(&Groupoid::codiscrete(n), &groups[g].1)
                })
                .collect();
            out.push(Groupoid::disjoint_union(&parts.iter().collect::<Vec<_>>()));
        }
        for k in start..kinds.len() {
            let (n, g) = kinds[k];
            let m = n * n * groups[g].1.order();
            if objects + n <= limits.0 && morphisms + m <= limits.1 {
                chosen.push(k);
                extend(k, objects + n, morphisms + m, limits, kinds, groups, chosen, out);
                chosen.pop();
            }
        }
    }
    extend(0, 0, 0, (max_objects, max_morphisms), &kinds, &groups, &mut chosen, &mut out);
    out
}

/// The inclusion of one object's vertex group into `codiscrete(n) × G`,
/// with `n ≤ 4` and `|G| ≤ 12` drawn at random. Always an acyclic
/// cofibration.
pub fn random_skeleton_inclusion(rng: &mut impl Rng) -> GroupoidFunctor {
    let groups = small_groups();
    let (_, group) = groups.choose(rng).expect("nonempty");
    let n = rng.random_range(1..=4);
    let g = Arc::new(Groupoid::with_group(&Groupoid::codiscrete(n), group));
    let x = rng.random_range(0..n);
    g.full_subgroupoid(&[x]).1
}

/// A cofibration whose two K₀ groups have different ranks: a summand
/// inclusion with a nonempty complement, `discrete(n) → codiscrete(n)` for
/// `n ≥ 2`, or `B1 → B G` for nontrivial `G`.
pub fn random_rank_changing_cofibration(rng: &mut impl Rng) -> GroupoidFunctor {
    let groups = small_groups();
    let group = |rng: &mut dyn rand::RngCore| groups[1 + rng.random_range(0..groups.len() - 1)].1.clone();
    match rng.random_range(0..3) {
        0 => {
            let n = rng.random_range(1..=3);
            let a = Groupoid::with_group(&Groupoid::codiscrete(n), &group(rng));
            let extra = Groupoid::with_group(&Groupoid::codiscrete(rng.random_range(1..=2)), &group(rng));
            let b = Arc::new(Groupoid::disjoint_union(&[&a, &extra]));
            b.full_subgroupoid(&(0..n).collect::<Vec<_>>()).1
        }
        1 => {
            let n = rng.random_range(2..=4);
            let a = Arc::new(Groupoid::discrete(n));
            let b = Arc::new(Groupoid::codiscrete(n));
            let morphisms = (0..n).map(|x| b.identity(x)).collect();
            GroupoidFunctor::new(a, b, (0..n).collect(), morphisms).expect("identity on objects")
        }
        _ => {
            let b = Arc::new(Groupoid::classifying(&group(rng)));
            let e = b.identity(0);
            GroupoidFunctor::new(Arc::new(Groupoid::point()), b, vec![0], vec![e]).expect("unit")
        }
    }
}

/// A functor injective on objects between two of the named fixtures,
/// uniformly among all such functors for a uniformly chosen pair that has
/// one.
pub fn random_cofibration(rng: &mut impl Rng, names: &[&str]) -> Result<GroupoidFunctor> {
    let gs = names.iter().map(|n| groupoid(n).map(Arc::new)).collect::<Result<Vec<_>>>()?;
    let filter = FunctorFilter { injective_on_objects: true, ..Default::default() };
    for _ in 0..1000 {
        let (a, b) = (gs.choose(rng).expect("nonempty"), gs.choose(rng).expect("nonempty"));
        if a.object_count() > b.object_count() {
            continue;
        }
        if let Some(f) = enumerate_functors(a, b, filter).choose(rng) {
            return Ok(f.clone());
        }
    }
    Err(Error::Precondition("no cofibration among the given fixtures".into()))
}
