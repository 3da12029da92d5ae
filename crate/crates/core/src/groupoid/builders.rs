use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Groupoid, GroupoidFunctor, Morphism};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Object names of the interval groupoid used by the cylinder functor.
pub const INTERVAL_OBJECTS: [&str; 2] = ["0", "1"];

/// A finite group given by its multiplication table.
///
/// `table[a][b]` is the product `a·b`, read as composition `a∘b` when the group
/// is viewed as a one-object groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty carrier".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not a square table over the carrier".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|x| !seen.insert(x.as_str())) {
            return Err(Error::NotAGroup(format!("duplicate element name `{dup}`")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("`{}` has no inverse", names[a])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table, identity, inverses })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` with elements `e, r, r^2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_owned(),
                1 => "r".to_owned(),
                _ => format!("r^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(names, table).expect("cyclic group")
    }

    /// Dihedral group of order `2n`, elements `r^i` and `r^i s`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        // (i, j) ↔ r^i s^j, with s r = r^{-1} s.
        let idx = |i: usize, j: usize| j * n + i;
        let mut names = vec![String::new(); 2 * n];
        for j in 0..2 {
            for i in 0..n {
                names[idx(i, j)] = match (i, j) {
                    (0, 0) => "e".into(),
                    (0, 1) => "s".into(),
                    (1, 0) => "r".into(),
                    (1, 1) => "rs".into(),
                    (_, 0) => format!("r^{i}"),
                    _ => format!("r^{i}s"),
                };
            }
        }
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for j1 in 0..2 {
            for i1 in 0..n {
                for j2 in 0..2 {
                    for i2 in 0..n {
                        let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
                        table[idx(i1, j1)][idx(i2, j2)] = idx(i, (j1 + j2) % 2);
                    }
                }
            }
        }
        Self::from_table(names, table).expect("dihedral group")
    }

    /// Closure of a set of permutations of `0..degree`; elements are named by
    /// one-line notation with 1-based entries. `perm[i]` is the image of `i`,
    /// and products compose right-to-left.
    pub fn generated_by(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != degree || sorted != (0..degree).collect::<Vec<_>>() {
                return Err(Error::NotAGroup(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for g in generators {
                let p: Vec<usize> = (0..degree).map(|i| elements[a][g[i]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..degree).map(|i| a[b[i]]).collect() };
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let names = elements
            .iter()
            .map(|p| {
                if degree < 10 {
                    p.iter().map(|&i| char::from(b'1' + i as u8)).collect()
                } else {
                    format!("{:?}", p.iter().map(|i| i + 1).collect::<Vec<_>>())
                }
            })
            .collect();
        Self::from_table(names, table)
    }

    pub fn symmetric(k: usize) -> Self {
        assert!(k >= 1);
        if k == 1 {
            return Self::trivial();
        }
        let mut swap: Vec<usize> = (0..k).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        Self::generated_by(k, &[swap, cycle]).expect("symmetric group")
    }

    pub fn alternating(k: usize) -> Self {
        assert!(k >= 3);
        let gens: Vec<Vec<usize>> = (2..k)
            .map(|j| {
                let mut p: Vec<usize> = (0..k).collect();
                // 3-cycle (0 1 j)
                p[0] = 1;
                p[1] = j;
                p[j] = 0;
                p
            })
            .collect();
        Self::generated_by(k, &gens).expect("alternating group")
    }

    /// Quaternion group of order 8, as permutations of its regular action.
    pub fn quaternion() -> Self {
        // Elements 1,i,j,k,-1,-i,-j,-k indexed 0..8; left multiplication by i and j.
        let i = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let j = vec![2, 7, 4, 1, 6, 3, 0, 5];
        Self::generated_by(8, &[i, j]).expect("quaternion group")
    }

    /// Dicyclic group of order `4n`: ⟨a, x | a^{2n} = 1, x² = aⁿ, x a x⁻¹ = a⁻¹⟩,
    /// realized on its regular representation.
    pub fn dicyclic(n: usize) -> Self {
        assert!(n >= 2);
        let m = 2 * n;
        // element a^p x^q (q ∈ {0,1}) at index q*m + p.
        let idx = |p: usize, q: usize| q * m + p;
        let mul = |(p1, q1): (usize, usize), (p2, q2): (usize, usize)| -> (usize, usize) {
            // x a^p = a^{-p} x, x² = a^n
            let p2 = if q1 == 1 { (m - p2) % m } else { p2 };
            let mut p = (p1 + p2) % m;
            let q = q1 + q2;
            if q == 2 {
                p = (p + n) % m;
            }
            (p, q % 2)
        };
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|q| (0..m).map(move |p| (p, q))).collect();
        let perm = |g: (usize, usize)| -> Vec<usize> {
            elems
                .iter()
                .map(|&h| {
                    let (p, q) = mul(g, h);
                    idx(p, q)
                })
                .collect()
        };
        Self::generated_by(2 * m, &[perm((1, 0)), perm((0, 1))]).expect("dicyclic group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let names = (0..na)
            .flat_map(|x| (0..nb).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", a.names[x], b.names[y]))
            .collect();
        let table = (0..na * nb)
            .map(|u| {
                (0..na * nb)
                    .map(|v| a.table[u / nb][v / nb] * nb + b.table[u % nb][v % nb])
                    .collect()
            })
            .collect();
        Self::from_table(names, table).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Number of conjugacy classes, by brute force.
    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order();
        let mut class = vec![usize::MAX; n];
        let mut count = 0;
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            for g in 0..n {
                class[self.mul(self.mul(g, a), self.inverse(g))] = count;
            }
            count += 1;
        }
        count
    }
}

fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i < 26 { char::from(b'a' + i as u8).to_string() } else { format!("x{i}") })
        .collect()
}

impl Groupoid {
    /// `n` objects with identities only.
    pub fn discrete(n: usize) -> Self {
        let objects = letters(n);
        let morphisms = (0..n).map(|x| Morphism { id: format!("id_{}", objects[x]), src: x, dst: x }).collect();
        Groupoid::assemble(objects, morphisms, (0..n).collect(), (0..n).collect(), |g, _| g).expect("discrete")
    }

    /// `n` objects with exactly one morphism between any two of them.
    pub fn codiscrete(n: usize) -> Self {
        Self::codiscrete_on(letters(n))
    }

    pub fn codiscrete_on(objects: Vec<String>) -> Self {
        let n = objects.len();
        let morphisms = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| Morphism { id: format!("{}>{}", objects[x], objects[y]), src: x, dst: y })
            .collect();
        let idx = move |x: usize, y: usize| x * n + y;
        Groupoid::assemble(
            objects,
            morphisms,
            (0..n).map(|x| idx(x, x)).collect(),
            (0..n * n).map(|m| idx(m % n, m / n)).collect(),
            |g, f| idx(f / n, g % n),
        )
        .expect("codiscrete")
    }

    /// The interval groupoid `0 ⇄ 1`.
    pub fn interval() -> Self {
        Self::codiscrete_on(INTERVAL_OBJECTS.iter().map(|s| s.to_string()).collect())
    }

    /// The one-object groupoid `B G` with object `*`.
    pub fn classifying(group: &FiniteGroup) -> Self {
        let morphisms = group.names().iter().map(|n| Morphism { id: n.clone(), src: 0, dst: 0 }).collect();
        Groupoid::assemble(
            vec!["*".into()],
            morphisms,
            vec![group.identity()],
            (0..group.order()).map(|a| group.inverse(a)).collect(),
            |g, f| group.mul(g, f),
        )
        .expect("classifying groupoid")
    }

    /// `B1`, the terminal groupoid.
    pub fn point() -> Self {
        Self::classifying(&FiniteGroup::trivial())
    }

    /// Product groupoid; objects `(x,y)` and morphisms `(f,g)`.
    pub fn product(a: &Groupoid, b: &Groupoid) -> Self {
        let (na, nb) = (a.object_count(), b.object_count());
        let mb = b.morphism_count();
        let objects = (0..na * nb)
            .map(|i| format!("({},{})", a.object_name(i / nb), b.object_name(i % nb)))
            .collect();
        let morphisms = (0..a.morphism_count() * mb)
            .map(|i| {
                let (f, g) = (i / mb, i % mb);
                Morphism {
                    id: format!("({},{})", a.morphism_name(f), b.morphism_name(g)),
                    src: a.src(f) * nb + b.src(g),
                    dst: a.dst(f) * nb + b.dst(g),
                }
            })
            .collect();
        Groupoid::assemble(
            objects,
            morphisms,
            (0..na * nb).map(|i| a.identity(i / nb) * mb + b.identity(i % nb)).collect(),
            (0..a.morphism_count() * mb).map(|i| a.inverse(i / mb) * mb + b.inverse(i % mb)).collect(),
            |g, f| {
                a.compose(g / mb, f / mb).expect("composable") * mb + b.compose(g % mb, f % mb).expect("composable")
            },
        )
        .expect("product")
    }

    /// Product of a groupoid with a finite group, `g × B K`.
    pub fn with_group(g: &Groupoid, group: &FiniteGroup) -> Self {
        Self::product(g, &Self::classifying(group))
    }

    /// Disjoint union; the `i`-th summand's identifiers are prefixed `i:`.
    pub fn disjoint_union(parts: &[&Groupoid]) -> Self {
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        let mut identities = Vec::new();
        let mut inverses = Vec::new();
        let mut offsets = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            let (oo, mo) = (objects.len(), morphisms.len());
            offsets.push(mo);
            objects.extend(p.objects().iter().map(|o| format!("{i}:{o}")));
            morphisms.extend(p.morphisms().iter().map(|m| Morphism {
                id: format!("{i}:{}", m.id),
                src: m.src + oo,
                dst: m.dst + oo,
            }));
            identities.extend((0..p.object_count()).map(|x| p.identity(x) + mo));
            inverses.extend((0..p.morphism_count()).map(|f| p.inverse(f) + mo));
        }
        let part_of = |m: usize| offsets.partition_point(|&o| o <= m) - 1;
        Groupoid::assemble(objects, morphisms, identities, inverses, |g, f| {
            let i = part_of(g);
            parts[i].compose(g - offsets[i], f - offsets[i]).expect("composable") + offsets[i]
        })
        .expect("disjoint union")
    }

    /// Full subgroupoid on the given objects (kept in the given order), with
    /// its inclusion functor.
    pub fn full_subgroupoid(self: &Arc<Self>, objects: &[usize]) -> (Arc<Groupoid>, GroupoidFunctor) {
        let pos: BTreeMap<usize, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut kept = Vec::new();
        for &x in objects {
            for &y in objects {
                kept.extend_from_slice(self.hom(x, y));
            }
        }
        let new_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let sub = Groupoid::assemble(
            objects.iter().map(|&x| self.object_name(x).to_owned()).collect(),
            kept.iter()
                .map(|&f| Morphism { id: self.morphism_name(f).to_owned(), src: pos[&self.src(f)], dst: pos[&self.dst(f)] })
                .collect(),
            objects.iter().map(|&x| new_index[&self.identity(x)]).collect(),
            kept.iter().map(|&f| new_index[&self.inverse(f)]).collect(),
            |g, f| new_index[&self.compose(kept[g], kept[f]).expect("composable")],
        )
        .expect("full subgroupoid");
        let sub = Arc::new(sub);
        let inclusion = GroupoidFunctor::new_unchecked(sub.clone(), self.clone(), objects.to_vec(), kept);
        (sub, inclusion)
    }
}
