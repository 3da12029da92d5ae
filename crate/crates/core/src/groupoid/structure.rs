use serde::Serialize;

use super::{FiniteGroup, Groupoid, Morphism};
use crate::error::{Error, Result};

/// A connected component; `base` is its least object in input order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub objects: Vec<usize>,
    pub base: usize,
}

/// The loops at one object with their induced multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexGroup {
    pub base: usize,
    /// Morphism indices of the loops at `base`, in input order.
    pub elements: Vec<usize>,
    /// `table[i][j]` is the position of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
}

impl VertexGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn as_group(&self, g: &Groupoid) -> FiniteGroup {
        let names = self.elements.iter().map(|&f| g.morphism_name(f).to_owned()).collect();
        FiniteGroup::from_table(names, self.table.clone()).expect("vertex group is a group")
    }

    /// The one-object groupoid on these loops, keeping the morphism names.
    pub fn to_groupoid(&self, g: &Groupoid) -> Groupoid {
        let pos = |f: usize| self.elements.iter().position(|&e| e == f).expect("loop");
        Groupoid::assemble(
            vec![g.object_name(self.base).to_owned()],
            self.elements
                .iter()
                .map(|&f| Morphism { id: g.morphism_name(f).to_owned(), src: 0, dst: 0 })
                .collect(),
            vec![pos(g.identity(self.base))],
            self.elements.iter().map(|&f| pos(g.inverse(f))).collect(),
            |a, b| self.table[a][b],
        )
        .expect("vertex group groupoid")
    }
}

impl Groupoid {
    /// Object → component index, components numbered by their least object.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.object_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            if label[x] != usize::MAX {
                continue;
            }
            for y in 0..n {
                if !self.hom(x, y).is_empty() {
                    label[y] = next;
                }
            }
            next += 1;
        }
        label
    }

    pub fn components(&self) -> Vec<Component> {
        let label = self.component_labels();
        let count = label.iter().copied().max().map_or(0, |m| m + 1);
        let mut comps: Vec<Component> = (0..count).map(|_| Component { objects: Vec::new(), base: 0 }).collect();
        for (x, &c) in label.iter().enumerate() {
            if comps[c].objects.is_empty() {
                comps[c].base = x;
            }
            comps[c].objects.push(x);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.object_count() > 0 && self.components().len() == 1
    }

    pub fn vertex_group(&self, x: usize) -> VertexGroup {
        let elements = self.hom(x, x).to_vec();
        let pos = |f: usize| elements.iter().position(|&e| e == f).expect("loop");
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(self.compose(a, b).expect("loops compose"))).collect())
            .collect();
        VertexGroup { base: x, elements, table }
    }

    pub fn vertex_group_at(&self, object: &str) -> Result<VertexGroup> {
        let x = self.object_index(object).ok_or_else(|| Error::UnknownObject(object.to_owned()))?;
        Ok(self.vertex_group(x))
    }
}
