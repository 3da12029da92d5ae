use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::group::{free_reduce, invert, EnumeratedGroup, GroupPresentation, Letter};
use super::{GeneratorMap, PresentedFunctor, PresentedGroupoid};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidFunctor, Morphism};

#[derive(Clone, Debug)]
pub enum Concretized {
    Concrete(Realization),
    /// No finite table within the bound was found. Says nothing about
    /// finiteness beyond that.
    Unknown { reason: String },
}

impl Concretized {
    pub fn realization(self) -> Option<Realization> {
        match self {
            Concretized::Concrete(r) => Some(r),
            Concretized::Unknown { .. } => None,
        }
    }

    pub fn is_concrete(&self) -> bool {
        matches!(self, Concretized::Concrete(_))
    }
}

/// A presentation together with a concrete groupoid realizing it.
///
/// Within a component with base object `b`, a spanning tree of generators
/// gives paths `t_x: b → x`; morphism `(x, y, g)` is `t_y ∘ g ∘ t_x⁻¹` for `g`
/// in the vertex group at `b`.
#[derive(Clone, Debug)]
pub struct Realization {
    presentation: Arc<PresentedGroupoid>,
    groupoid: Arc<Groupoid>,
    generator_images: Vec<usize>,
    components: Vec<Part>,
    /// Object → (component, position in it).
    place: Vec<(usize, usize)>,
    /// Morphism → (source, target, group element).
    decode: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
struct Part {
    objects: Vec<usize>,
    /// Tree path from the base to each object, outermost first.
    paths: Vec<Vec<Letter>>,
    /// Surviving group generator → loop at the base in presentation letters.
    symbols: Vec<Vec<Letter>>,
    group: EnumeratedGroup,
    /// First morphism index with source `objects[i]`.
    offsets: Vec<usize>,
}

impl PresentedGroupoid {
    /// Finds the finite groupoid presented by `self`, or reports `Unknown`
    /// when its morphism count would exceed `bound` or coset enumeration runs
    /// out of room. A concrete answer is always correct.
    pub fn concretize(self: &Arc<Self>, bound: usize) -> Result<Concretized> {
        if bound == 0 {
            return Err(Error::InvalidBound);
        }
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut members = vec![Vec::new(); count];
        for (x, &c) in labels.iter().enumerate() {
            members[c].push(x);
        }

        let mut parts = Vec::with_capacity(count);
        let mut total = 0usize;
        for objects in members {
            let n = objects.len();
            let cap = bound / (n * n);
            if cap == 0 {
                return Ok(Concretized::Unknown { reason: format!("a component with {n} objects exceeds the bound") });
            }
            let (paths, group_presentation, symbol_of) = self.vertex_group(&objects);
            let simplified = group_presentation.simplify(16 * group_presentation.relators.len() + 4096);
            let Some(group) = simplified.presentation.enumerate(16 * cap + 2048) else {
                return Ok(Concretized::Unknown {
                    reason: format!("coset enumeration for the component of `{}` did not close", self.objects[objects[0]]),
                });
            };
            if group.order() > cap {
                return Ok(Concretized::Unknown {
                    reason: format!("the component of `{}` has more than {cap} loops per object", self.objects[objects[0]]),
                });
            }
            total += n * n * group.order();
            if total > bound {
                return Ok(Concretized::Unknown { reason: format!("more than {bound} morphisms") });
            }
            let survivors = simplified.survivors.iter().map(|&s| symbol_of[s].clone()).collect();
            let part = Part { objects, paths, symbols: survivors, group, offsets: Vec::new() };
            parts.push((part, simplified.expressions));
        }

        let mut place = vec![(0, 0); self.object_count()];
        for (c, (p, _)) in parts.iter().enumerate() {
            for (i, &x) in p.objects.iter().enumerate() {
                place[x] = (c, i);
            }
        }
        // Morphisms grouped by source object in input order.
        let mut decode = Vec::with_capacity(total);
        for x in 0..self.object_count() {
            let p = &mut parts[place[x].0].0;
            p.offsets.push(decode.len());
            for &y in &p.objects {
                decode.extend((0..p.group.order()).map(|g| (x, y, g)));
            }
        }

        let tables: Vec<Vec<Vec<usize>>> = parts.iter().map(|(p, _)| p.group.multiplication_table()).collect();
        let index = |x: usize, y: usize, g: usize| -> usize {
            let (c, _) = place[x];
            let p = &parts[c].0;
            p.offsets[place[x].1] + place[y].1 * p.group.order() + g
        };

        // Generator images: e: x → y is (x, y, γ_e).
        let mut generator_images = vec![0; self.generators.len()];
        for (p, expressions) in &parts {
            let local: Vec<usize> = self.generators_in(&p.objects);
            for (s, &e) in local.iter().enumerate() {
                let g = p.group.evaluate(&expressions[s]);
                let gen = &self.generators[e];
                generator_images[e] = index(gen.src, gen.dst, g);
            }
        }

        let names = self.morphism_names(&decode, &generator_images);
        let morphisms: Vec<Morphism> =
            decode.iter().zip(names).map(|(&(x, y, _), id)| Morphism { id, src: x, dst: y }).collect();
        let identities = (0..self.object_count()).map(|x| index(x, x, 0)).collect();
        let inverses = decode
            .iter()
            .map(|&(x, y, g)| {
                let t = &tables[place[x].0];
                let inv = (0..t.len()).find(|&h| t[g][h] == 0).expect("group inverse");
                index(y, x, inv)
            })
            .collect();
        let groupoid = Groupoid::assemble(self.objects.clone(), morphisms, identities, inverses, |g, f| {
            let (x, _, a) = decode[f];
            let (_, z, b) = decode[g];
            index(x, z, tables[place[x].0][b][a])
        })?;

        Ok(Concretized::Concrete(Realization {
            presentation: self.clone(),
            groupoid: Arc::new(groupoid),
            generator_images,
            components: parts.into_iter().map(|(p, _)| p).collect(),
            place,
            decode,
        }))
    }

    /// Tietze-simplified presentation of the vertex group at the base of
    /// each component.
    pub fn vertex_group_presentations(&self) -> Vec<GroupPresentation> {
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        (0..count)
            .map(|c| {
                let objects: Vec<usize> = (0..labels.len()).filter(|&x| labels[x] == c).collect();
                let (_, p, _) = self.vertex_group(&objects);
                p.simplify(16 * p.relators.len() + 4096).presentation
            })
            .collect()
    }

    fn generators_in(&self, objects: &[usize]) -> Vec<usize> {
        let inside: HashSet<usize> = objects.iter().copied().collect();
        (0..self.generators.len()).filter(|&e| inside.contains(&self.generators[e].src)).collect()
    }

    /// Spanning-tree paths, the vertex-group presentation at the base, and
    /// for each group symbol its loop `t_y⁻¹ ∘ e ∘ t_x` in presentation letters.
    fn vertex_group(&self, objects: &[usize]) -> (Vec<Vec<Letter>>, GroupPresentation, Vec<Vec<Letter>>) {
        let local = self.generators_in(objects);
        let mut symbol = vec![usize::MAX; self.generators.len()];
        for (s, &e) in local.iter().enumerate() {
            symbol[e] = s;
        }
        let mut pos = vec![usize::MAX; self.object_count()];
        for (i, &x) in objects.iter().enumerate() {
            pos[x] = i;
        }
        let mut incident = vec![Vec::new(); objects.len()];
        for &e in &local {
            let g = &self.generators[e];
            incident[pos[g.src]].push((e, false));
            incident[pos[g.dst]].push((e, true));
        }

        let mut paths: Vec<Option<Vec<Letter>>> = vec![None; objects.len()];
        let mut tree_edges = Vec::new();
        paths[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let here = paths[i].clone().expect("visited");
            for &(e, backwards) in &incident[i] {
                let g = &self.generators[e];
                let other = pos[if backwards { g.src } else { g.dst }];
                if paths[other].is_none() {
                    let step = Letter { generator: e, inverse: backwards };
                    paths[other] = Some([vec![step], here.clone()].concat());
                    tree_edges.push(e);
                    queue.push_back(other);
                }
            }
        }
        let paths: Vec<Vec<Letter>> = paths.into_iter().map(|p| p.expect("component is connected")).collect();

        let sym = |e: usize| Letter::new(symbol[e]);
        let mut relators: Vec<Vec<Letter>> = tree_edges.iter().map(|&e| vec![sym(e)]).collect();
        for (a, b) in &self.relations {
            let first = a.first().or(b.first());
            let Some(&g) = first else { continue };
            if symbol[g] == usize::MAX {
                continue;
            }
            let wa: Vec<Letter> = a.iter().map(|&e| sym(e)).collect();
            let wb: Vec<Letter> = b.iter().map(|&e| sym(e)).collect();
            relators.push(free_reduce(&[wa, invert(&wb)].concat()));
        }
        let loops = local
            .iter()
            .map(|&e| {
                let g = &self.generators[e];
                free_reduce(&[invert(&paths[pos[g.dst]]), vec![Letter::new(e)], paths[pos[g.src]].clone()].concat())
            })
            .collect();
        (paths, GroupPresentation { generators: local.len(), relators }, loops)
    }

    fn morphism_names(
        &self,
        decode: &[(usize, usize, usize)],
        generator_images: &[usize],
    ) -> Vec<String> {
        let mut name: Vec<Option<String>> = vec![None; decode.len()];
        let mut taken = HashSet::new();
        for x in 0..self.object_count() {
            let id = decode.iter().position(|&(a, b, g)| a == x && b == x && g == 0).expect("identity");
            let n = format!("id_{}", self.objects[x]);
            if taken.insert(n.clone()) {
                name[id] = Some(n);
            }
        }
        for (e, &m) in generator_images.iter().enumerate() {
            if name[m].is_none() && taken.insert(self.generators[e].id.clone()) {
                name[m] = Some(self.generators[e].id.clone());
            }
        }
        name.into_iter()
            .enumerate()
            .map(|(m, n)| {
                n.unwrap_or_else(|| {
                    let (x, y, g) = decode[m];
                    let mut s = format!("{}>{}#{g}", self.objects[x], self.objects[y]);
                    while !taken.insert(s.clone()) {
                        s.push('\'');
                    }
                    s
                })
            })
            .collect()
    }
}

impl Realization {
    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn presentation(&self) -> &Arc<PresentedGroupoid> {
        &self.presentation
    }

    /// Generator → the morphism it names.
    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    /// Order of the vertex group of each component of the presentation.
    pub fn vertex_group_orders(&self) -> Vec<usize> {
        self.components.iter().map(|p| p.group.order()).collect()
    }

    /// The functor `B → realization` for a generator map out of `B`.
    pub fn pull(&self, source: &Arc<Groupoid>, map: &GeneratorMap) -> GroupoidFunctor {
        GroupoidFunctor::new_unchecked(
            source.clone(),
            self.groupoid.clone(),
            map.object_map.clone(),
            map.generator_map.iter().map(|&g| self.generator_images[g]).collect(),
        )
    }

    /// A word in generators and their inverses naming morphism `m`.
    pub fn representative(&self, m: usize) -> Vec<Letter> {
        let (x, y, g) = self.decode[m];
        let p = &self.components[self.place[x].0];
        let middle: Vec<Letter> = p
            .group
            .word(g)
            .iter()
            .flat_map(|l| if l.inverse { invert(&p.symbols[l.generator]) } else { p.symbols[l.generator].clone() })
            .collect();
        free_reduce(&[p.paths[self.place[y].1].clone(), middle, invert(&p.paths[self.place[x].1])].concat())
    }

    /// Extends a functor out of the presentation to the realization.
    pub fn extend(&self, f: &PresentedFunctor) -> Result<GroupoidFunctor> {
        if !Arc::ptr_eq(f.source(), &self.presentation) && **f.source() != *self.presentation {
            return Err(Error::Precondition("functor is defined on a different presentation".into()));
        }
        let t = f.target();
        let mut morphism_map = vec![0; self.decode.len()];
        for p in &self.components {
            let base = p.objects[0];
            let path: Vec<usize> = p.paths.iter().map(|w| f.evaluate_letters(w, base)).collect();
            let symbols: Vec<usize> = p.symbols.iter().map(|w| f.evaluate_letters(w, base)).collect();
            let mut element = vec![t.identity(f.object_map()[base]); p.group.order()];
            for (g, parent) in p.group.tree().iter().enumerate() {
                if let Some((q, l)) = *parent {
                    let s = if l.inverse { t.inverse(symbols[l.generator]) } else { symbols[l.generator] };
                    element[g] = t.compose(element[q], s).expect("loops compose");
                }
            }
            for i in 0..p.objects.len() {
                let out = t.inverse(path[i]);
                for j in 0..p.objects.len() {
                    for (g, &e) in element.iter().enumerate() {
                        let m = p.offsets[i] + j * p.group.order() + g;
                        morphism_map[m] = t.compose(path[j], t.compose(e, out).expect("composable")).expect("composable");
                    }
                }
            }
        }
        GroupoidFunctor::new(self.groupoid.clone(), t.clone(), f.object_map().to_vec(), morphism_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groupoid::{find_isomorphism, FiniteGroup};
    use crate::presentation::Generator;

    fn one_object(generators: usize, relations: Vec<(Vec<usize>, Vec<usize>)>) -> Arc<PresentedGroupoid> {
        let gens = (0..generators).map(|i| Generator { id: format!("s{i}"), src: 0, dst: 0 }).collect();
        Arc::new(PresentedGroupoid::new(vec!["*".into()], gens, relations).unwrap())
    }

    #[test]
    fn involution_has_two_morphisms() {
        let p = one_object(1, vec![(vec![0, 0], vec![])]);
        let r = p.concretize(10).unwrap().realization().unwrap();
        assert_eq!(r.groupoid().morphism_count(), 2);
        assert!(!r.groupoid().is_identity(r.generator_images()[0]));
        let z2 = Arc::new(Groupoid::classifying(&FiniteGroup::cyclic(2)));
        assert!(find_isomorphism(r.groupoid(), &z2).is_some());
    }

    #[test]
    fn free_generator_is_unknown() {
        let p = one_object(1, vec![]);
        assert!(matches!(p.concretize(100).unwrap(), Concretized::Unknown { .. }));
        assert!(matches!(p.concretize(0), Err(Error::InvalidBound)));
    }

    #[test]
    fn empty_presentation_is_the_point() {
        let p = one_object(0, vec![]);
        let r = p.concretize(1).unwrap().realization().unwrap();
        assert_eq!((r.groupoid().object_count(), r.groupoid().morphism_count()), (1, 1));
    }

    #[test]
    fn bound_is_respected() {
        let p = one_object(1, vec![(vec![0, 0, 0, 0, 0], vec![])]);
        assert!(p.concretize(5).unwrap().is_concrete());
        assert!(!p.concretize(4).unwrap().is_concrete());
    }

    #[test]
    fn concrete_tables_come_back_unchanged() {
        for name in fixtures::STANDARD {
            let g = Arc::new(fixtures::groupoid(name).unwrap());
            let p = Arc::new(PresentedGroupoid::from_groupoid(&g));
            let r = p.concretize(10_000).unwrap().realization().unwrap();
            let map = GeneratorMap {
                object_map: (0..g.object_count()).collect(),
                generator_map: (0..g.morphism_count()).collect(),
            };
            let f = GroupoidFunctor::new(
                g.clone(),
                r.groupoid().clone(),
                map.object_map.clone(),
                map.generator_map.iter().map(|&m| r.generator_images()[m]).collect(),
            )
            .unwrap();
            assert!(f.is_injective_on_morphisms() && r.groupoid().morphism_count() == g.morphism_count(), "{name}");
            assert_eq!(r.pull(&g, &map), f);
        }
    }

    #[test]
    fn representatives_evaluate_to_their_morphism() {
        let g = fixtures::groupoid("codiscrete3xZ2+BS3").unwrap();
        let p = Arc::new(PresentedGroupoid::from_groupoid(&g));
        let r = p.concretize(1000).unwrap().realization().unwrap();
        let into_self =
            PresentedFunctor::new(p.clone(), r.groupoid().clone(), (0..g.object_count()).collect(), r.generator_images().to_vec())
                .unwrap();
        for m in 0..r.groupoid().morphism_count() {
            let src = r.groupoid().src(m);
            assert_eq!(into_self.evaluate_letters(&r.representative(m), src), m);
        }
        assert_eq!(r.extend(&into_self).unwrap(), GroupoidFunctor::identity(r.groupoid()));
    }
}
