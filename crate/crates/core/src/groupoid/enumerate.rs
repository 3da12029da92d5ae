//! Exhaustive enumeration of functors between finite groupoids.
//!
//! A functor out of a connected groupoid is determined by the image of a base
//! object, a homomorphism on its vertex group, and the images of one chosen
//! arrow from the base to every other object. Enumerating those choices visits
//! every functor exactly once.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{Groupoid, GroupoidFunctor};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FunctorFilter {
    pub injective_on_objects: bool,
    pub injective_on_morphisms: bool,
}

struct Plan {
    base: usize,
    others: Vec<usize>,
    loops: Vec<usize>,
    /// Positions in `loops` of a generating set.
    gens: Vec<usize>,
    /// Breadth-first construction of every loop: (position, parent, generator slot).
    build: Vec<(usize, usize, usize)>,
    identity_pos: usize,
    /// (morphism, source, target, loop position of t_dst⁻¹ ∘ f ∘ t_src).
    morphisms: Vec<(usize, usize, usize, usize)>,
}

fn plan(g: &Groupoid) -> Vec<Plan> {
    g.components()
        .into_iter()
        .map(|c| {
            let base = c.base;
            let tree: Vec<(usize, usize)> = c.objects.iter().map(|&y| (y, g.hom(base, y)[0])).collect();
            let t = |y: usize| tree.iter().find(|(o, _)| *o == y).expect("object in component").1;
            let loops = g.hom(base, base).to_vec();
            let pos = |f: usize| loops.iter().position(|&l| l == f).expect("loop");
            let identity_pos = pos(g.identity(base));

            // Greedy generating set, and a construction order for every element.
            let mut reached = vec![false; loops.len()];
            reached[identity_pos] = true;
            let mut gens = Vec::new();
            let mut build = Vec::new();
            loop {
                let mut queue: VecDeque<usize> = (0..loops.len()).filter(|&i| reached[i]).collect();
                while let Some(a) = queue.pop_front() {
                    for (slot, &s) in gens.iter().enumerate() {
                        let b = pos(g.compose(loops[a], loops[s]).expect("loops"));
                        if !reached[b] {
                            reached[b] = true;
                            build.push((b, a, slot));
                            queue.push_back(b);
                        }
                    }
                }
                match reached.iter().position(|r| !r) {
                    Some(next) => {
                        gens.push(next);
                        reached[next] = true;
                        build.push((next, identity_pos, gens.len() - 1));
                    }
                    None => break,
                }
            }

            let mut morphisms = Vec::new();
            for &y in &c.objects {
                for &z in &c.objects {
                    for &f in g.hom(y, z) {
                        let through = g.compose(f, t(y)).expect("composable");
                        let l = g.compose(g.inverse(t(z)), through).expect("composable");
                        morphisms.push((f, y, z, pos(l)));
                    }
                }
            }
            Plan {
                base,
                others: c.objects.iter().copied().filter(|&y| y != base).collect(),
                loops,
                gens,
                build,
                identity_pos,
                morphisms,
            }
        })
        .collect()
}

/// Homomorphisms from the plan's vertex group into the loops at `x` in `target`,
/// as maps loop position → target morphism.
fn group_homs(g: &Groupoid, p: &Plan, target: &Groupoid, x: usize, injective: bool) -> Vec<Vec<usize>> {
    let images = target.hom(x, x);
    let n = p.loops.len();
    let mut out = Vec::new();
    let mut choice = vec![0usize; p.gens.len()];
    loop {
        let mut phi = vec![usize::MAX; n];
        phi[p.identity_pos] = target.identity(x);
        for &(b, a, slot) in &p.build {
            phi[b] = target.compose(phi[a], images[choice[slot]]).expect("loops");
        }
        let hom = (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = g.compose(p.loops[a], p.loops[b]).expect("loops");
                let ab = p.loops.iter().position(|&l| l == ab).expect("loop");
                target.compose(phi[a], phi[b]) == Some(phi[ab])
            })
        });
        let inj = !injective || {
            let mut s = phi.clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if hom && inj {
            out.push(phi);
        }
        // odometer over generator images
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < images.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

struct Search<'a, F: FnMut(GroupoidFunctor) -> bool> {
    source: &'a Arc<Groupoid>,
    target: &'a Arc<Groupoid>,
    plans: Vec<Plan>,
    filter: FunctorFilter,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
    used: Vec<bool>,
    visit: F,
}

impl<F: FnMut(GroupoidFunctor) -> bool> Search<'_, F> {
    /// Returns false once the visitor asks to stop.
    fn component(&mut self, c: usize) -> bool {
        if c == self.plans.len() {
            if self.filter.injective_on_morphisms {
                let mut seen = vec![false; self.target.morphism_count()];
                if self.morphism_map.iter().any(|&f| std::mem::replace(&mut seen[f], true)) {
                    return true;
                }
            }
            let f = GroupoidFunctor::new_unchecked(
                self.source.clone(),
                self.target.clone(),
                self.object_map.clone(),
                self.morphism_map.clone(),
            );
            return (self.visit)(f);
        }
        for x in 0..self.target.object_count() {
            if self.filter.injective_on_objects && self.used[x] {
                continue;
            }
            let homs = group_homs(self.source, &self.plans[c], self.target, x, self.filter.injective_on_morphisms);
            if homs.is_empty() {
                continue;
            }
            let base = self.plans[c].base;
            self.object_map[base] = x;
            self.used[x] = true;
            let mut tree_images = vec![usize::MAX; self.source.object_count()];
            tree_images[base] = self.target.identity(x);
            for phi in &homs {
                if !self.tree(c, 0, phi, &mut tree_images) {
                    self.used[x] = false;
                    return false;
                }
            }
            self.used[x] = false;
        }
        true
    }

    fn tree(&mut self, c: usize, k: usize, phi: &[usize], tree_images: &mut Vec<usize>) -> bool {
        if k == self.plans[c].others.len() {
            let t = &self.target;
            for &(f, y, z, l) in &self.plans[c].morphisms {
                let a = t.compose(phi[l], t.inverse(tree_images[y])).expect("composable");
                self.morphism_map[f] = t.compose(tree_images[z], a).expect("composable");
            }
            return self.component(c + 1);
        }
        let p = &self.plans[c];
        let (y, x) = (p.others[k], self.object_map[p.base]);
        for z in 0..self.target.object_count() {
            if self.filter.injective_on_objects && self.used[z] {
                continue;
            }
            let candidates = self.target.hom(x, z).to_vec();
            if candidates.is_empty() {
                continue;
            }
            self.object_map[y] = z;
            self.used[z] = true;
            for m in candidates {
                tree_images[y] = m;
                if !self.tree(c, k + 1, phi, tree_images) {
                    self.used[z] = false;
                    return false;
                }
            }
            self.used[z] = false;
        }
        true
    }
}

/// Visits every functor `source → target` passing the filter, in a fixed
/// order, until `visit` returns false.
pub fn for_each_functor(
    source: &Arc<Groupoid>,
    target: &Arc<Groupoid>,
    filter: FunctorFilter,
    visit: impl FnMut(GroupoidFunctor) -> bool,
) {
    let mut search = Search {
        source,
        target,
        plans: plan(source),
        filter,
        object_map: vec![0; source.object_count()],
        morphism_map: vec![0; source.morphism_count()],
        used: vec![false; target.object_count()],
        visit,
    };
    search.component(0);
}

pub fn enumerate_functors(source: &Arc<Groupoid>, target: &Arc<Groupoid>, filter: FunctorFilter) -> Vec<GroupoidFunctor> {
    let mut out = Vec::new();
    for_each_functor(source, target, filter, |f| {
        out.push(f);
        true
    });
    out
}

/// An isomorphism `a → b`, found by backtracking over object bijections and
/// then over morphism bijections.
pub fn find_isomorphism(a: &Arc<Groupoid>, b: &Arc<Groupoid>) -> Option<GroupoidFunctor> {
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return None;
    }
    let mut found = None;
    let filter = FunctorFilter { injective_on_objects: true, injective_on_morphisms: true };
    for_each_functor(a, b, filter, |f| {
        found = Some(f);
        false
    });
    found
}
