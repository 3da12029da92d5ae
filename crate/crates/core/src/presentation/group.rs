//! Finitely presented groups: Tietze elimination and Todd–Coxeter coset
//! enumeration over the trivial subgroup.

use std::collections::HashSet;

use serde::Serialize;

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

pub fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(word: &[Letter]) -> Vec<Letter> {
    let w = free_reduce(word);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

/// Least rotation of the relator or of its inverse, so that conjugate
/// relators compare equal.
fn canonical(r: &[Letter]) -> Vec<Letter> {
    if r.len() > 64 {
        return r.to_vec();
    }
    let inv = invert(r);
    let mut best = r.to_vec();
    for w in [r, &inv[..]] {
        for k in 0..w.len() {
            let rot: Vec<Letter> = w[k..].iter().chain(&w[..k]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<Letter>>,
}

/// Result of Tietze elimination: a smaller presentation of the same group and,
/// for every original generator, an equal word in the surviving generators.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// Original index of each surviving generator.
    pub survivors: Vec<usize>,
    pub expressions: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    /// Repeatedly solves a relator for a generator occurring in it exactly
    /// once and substitutes the solution everywhere. Stops when no such
    /// relator is left or when a substitution would push the total relator
    /// length past `length_cap`.
    pub fn simplify(&self, length_cap: usize) -> Simplified {
        let n = self.generators;
        let mut rels = dedup(self.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()));
        let mut value: Vec<Option<Vec<Letter>>> = vec![None; n];
        let mut occurrences = vec![0usize; n];

        loop {
            occurrences.iter_mut().for_each(|c| *c = 0);
            for r in &rels {
                for l in r {
                    occurrences[l.generator] += 1;
                }
            }
            let total: usize = rels.iter().map(Vec::len).sum();
            let mut order: Vec<usize> = (0..rels.len()).collect();
            order.sort_by_key(|&i| rels[i].len());

            let mut pick = None;
            'search: for &ri in &order {
                let r = &rels[ri];
                for (pos, l) in r.iter().enumerate() {
                    if r.iter().filter(|m| m.generator == l.generator).count() != 1 {
                        continue;
                    }
                    let growth = (occurrences[l.generator] - 1) * (r.len().saturating_sub(2));
                    if total + growth <= length_cap.max(total) {
                        pick = Some((ri, pos));
                        break 'search;
                    }
                }
            }
            let Some((ri, pos)) = pick else { break };

            let r = rels.swap_remove(ri);
            let x = r[pos];
            let solution = if x.inverse {
                free_reduce(&[&r[pos + 1..], &r[..pos]].concat())
            } else {
                free_reduce(&[invert(&r[..pos]), invert(&r[pos + 1..])].concat())
            };
            let g = x.generator;
            let substitute = |w: &[Letter]| -> Vec<Letter> {
                let mut out = Vec::with_capacity(w.len());
                for &l in w {
                    if l.generator != g {
                        out.push(l);
                    } else if l.inverse {
                        out.extend(invert(&solution));
                    } else {
                        out.extend_from_slice(&solution);
                    }
                }
                free_reduce(&out)
            };
            rels = dedup(rels.iter().map(|r| cyclic_reduce(&substitute(r))).filter(|r| !r.is_empty()));
            for v in value.iter_mut().flatten() {
                *v = substitute(v);
            }
            value[g] = Some(solution);
        }

        let survivors: Vec<usize> = (0..n).filter(|&g| value[g].is_none()).collect();
        let mut renumber = vec![usize::MAX; n];
        for (i, &g) in survivors.iter().enumerate() {
            renumber[g] = i;
        }
        let rename = |w: &[Letter]| -> Vec<Letter> {
            w.iter().map(|l| Letter { generator: renumber[l.generator], inverse: l.inverse }).collect()
        };
        let expressions = (0..n)
            .map(|g| match &value[g] {
                Some(v) => rename(v),
                None => vec![Letter::new(renumber[g])],
            })
            .collect();
        let mut relators: Vec<Vec<Letter>> = rels.iter().map(|r| rename(r)).collect();
        relators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Simplified { presentation: GroupPresentation { generators: survivors.len(), relators }, survivors, expressions }
    }

    /// Enumerates the group, giving up once more than `coset_limit` cosets
    /// have been defined.
    pub fn enumerate(&self, coset_limit: usize) -> Option<EnumeratedGroup> {
        let relators: Vec<Vec<usize>> =
            self.relators.iter().map(|r| r.iter().map(|l| l.column()).collect()).collect();
        let mut e = Enumerator {
            width: 2 * self.generators,
            table: vec![NONE; 2 * self.generators],
            parent: vec![0],
            queue: Vec::new(),
            limit: coset_limit.max(1),
        };
        let mut c = 0;
        while c < e.parent.len() {
            if e.live(c) {
                for r in &relators {
                    if !e.live(c) {
                        break;
                    }
                    if !e.scan_and_fill(c, r) {
                        return None;
                    }
                }
                for x in 0..e.width {
                    if !e.live(c) {
                        break;
                    }
                    if e.get(c, x) == NONE && !e.define(c, x) {
                        return None;
                    }
                }
            }
            c += 1;
        }
        Some(e.finish(self.generators))
    }
}

fn dedup(rels: impl Iterator<Item = Vec<Letter>>) -> Vec<Vec<Letter>> {
    let mut seen = HashSet::new();
    rels.filter(|r| seen.insert(canonical(r))).collect()
}

const NONE: usize = usize::MAX;

struct Enumerator {
    width: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    limit: usize,
}

impl Enumerator {
    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.width + x]
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.width + x] = d;
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        let n = self.parent.len();
        if n >= self.limit {
            return false;
        }
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(NONE, self.width));
        self.set(c, x, n);
        self.set(n, x ^ 1, c);
        true
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let (mu, nu) = (self.rep(g), self.rep(d));
                if self.get(mu, x) != NONE {
                    let t = self.get(mu, x);
                    self.merge(nu, t);
                } else if self.get(nu, x ^ 1) != NONE {
                    let t = self.get(nu, x ^ 1);
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, r: &[usize]) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, r.len() as isize - 1);
        loop {
            while i <= j && self.get(f, r[i as usize]) != NONE {
                f = self.get(f, r[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i && self.get(b, r[j as usize] ^ 1) != NONE {
                b = self.get(b, r[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return true;
            }
            if i == j {
                let x = r[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return true;
            }
            if !self.define(f, r[i as usize]) {
                return false;
            }
        }
    }

    fn finish(self, generators: usize) -> EnumeratedGroup {
        let w = self.width;
        let mut number = vec![NONE; self.parent.len()];
        let mut order = vec![0usize];
        let mut parent = vec![None];
        number[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for x in 0..w {
                let d = self.get(c, x);
                if number[d] == NONE {
                    number[d] = order.len();
                    order.push(d);
                    parent.push(Some((k, Letter { generator: x / 2, inverse: x % 2 == 1 })));
                }
            }
            k += 1;
        }
        let action = order.iter().map(|&c| (0..w).map(|x| number[self.get(c, x)]).collect()).collect();
        EnumeratedGroup { generators, action, parent }
    }
}

/// A finite group found by coset enumeration. Element 0 is the identity and
/// elements are numbered breadth-first from it.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    generators: usize,
    /// `action[a][2g + inv]` is `a·g` or `a·g⁻¹`.
    action: Vec<Vec<usize>>,
    /// Breadth-first tree: element = parent · letter.
    parent: Vec<Option<(usize, Letter)>>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.action.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn times_letter(&self, a: usize, l: Letter) -> usize {
        self.action[a][l.column()]
    }

    pub fn evaluate(&self, word: &[Letter]) -> usize {
        word.iter().fold(0, |a, &l| self.times_letter(a, l))
    }

    /// Shortest-first word for an element, as a product read left to right.
    pub fn word(&self, mut a: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        while let Some((p, l)) = self.parent[a] {
            out.push(l);
            a = p;
        }
        out.reverse();
        out
    }

    pub fn tree(&self) -> &[Option<(usize, Letter)>] {
        &self.parent
    }

    /// `table[a][b] = a·b`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut table = vec![vec![0; n]; n];
        for (a, row) in table.iter_mut().enumerate() {
            row[0] = a;
            for b in 1..n {
                let (p, l) = self.parent[b].expect("non-identity element has a parent");
                row[b] = self.times_letter(row[p], l);
            }
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(exponents: &[i64]) -> Vec<Letter> {
        exponents.iter()
            .map(|&s| Letter { generator: (s.unsigned_abs() - 1) as usize, inverse: s < 0 })
            .collect()
    }

    fn order(gens: usize, rels: &[&[i64]]) -> Option<usize> {
        let p = GroupPresentation { generators: gens, relators: rels.iter().map(|r| w(r)).collect() };
        p.enumerate(10_000).map(|g| g.order())
    }

    #[test]
    fn known_orders() {
        assert_eq!(order(0, &[]), Some(1));
        assert_eq!(order(1, &[&[1, 1]]), Some(2));
        assert_eq!(order(1, &[&[1, 1, 1, 1, 1, 1, 1]]), Some(7));
        // S3 = <a, b | a², b³, (ab)²>
        assert_eq!(order(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]), Some(6));
        // Q8 = <i, j | i⁴, i²j⁻², j i j⁻¹ i>
        assert_eq!(order(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[2, 1, -2, 1]]), Some(8));
        // A5 = <a, b | a², b³, (ab)⁵>
        assert_eq!(order(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]]), Some(60));
        // a trivial group in disguise: <a, b | a b a⁻¹ b⁻², b a b⁻¹ a⁻²>
        assert_eq!(order(2, &[&[1, 2, -1, -2, -2], &[2, 1, -2, -1, -1]]), Some(1));
    }

    #[test]
    fn infinite_groups_hit_the_limit() {
        assert_eq!(order(1, &[]), None);
        assert_eq!(order(2, &[&[1, 2, -1, -2]]), None);
    }

    #[test]
    fn multiplication_table_is_a_group_table() {
        let p = GroupPresentation { generators: 2, relators: vec![w(&[1, 1]), w(&[2, 2, 2]), w(&[1, 2, 1, 2])] };
        let g = p.enumerate(1000).unwrap();
        let t = g.multiplication_table();
        let names = (0..6).map(|i| i.to_string()).collect();
        crate::groupoid::FiniteGroup::from_table(names, t.clone()).unwrap();
        for a in 0..6 {
            assert_eq!(g.evaluate(&g.word(a)), a);
            for b in 0..6 {
                assert_eq!(g.evaluate(&[g.word(a), g.word(b)].concat()), t[a][b]);
            }
        }
    }

    #[test]
    fn tietze_eliminates_tree_like_generators() {
        // <a, b, c | b, c a⁻¹, a a>
        let p = GroupPresentation { generators: 3, relators: vec![w(&[2]), w(&[3, -1]), w(&[1, 1])] };
        let s = p.simplify(1000);
        assert_eq!(s.presentation.generators, 1);
        assert_eq!(s.presentation.relators.len(), 1);
        let g = s.presentation.enumerate(100).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.evaluate(&s.expressions[1]), 0);
        assert_eq!(g.evaluate(&s.expressions[0]), g.evaluate(&s.expressions[2]));
    }

    #[test]
    fn tietze_preserves_the_group() {
        // D4 on generators r, s, t with t = r s
        let rels = vec![w(&[1, 1, 1, 1]), w(&[2, 2]), w(&[3, 3]), w(&[3, -2, -1])];
        let p = GroupPresentation { generators: 3, relators: rels };
        let s = p.simplify(1000);
        assert!(s.presentation.generators < 3);
        assert_eq!(s.presentation.enumerate(1000).unwrap().order(), 8);
        assert_eq!(p.enumerate(1000).unwrap().order(), 8);
    }
}
