use super::hom::GroupHom;
use super::table::{closure, FiniteGroup, GroupRef};
use crate::error::{Error, Result};

/// A subgroup, stored as the sorted element list of its parent.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: GroupRef,
    elements: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && super::same_group(&self.parent, &other.parent)
    }
}

impl Subgroup {
    pub fn new(parent: GroupRef, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        let n = parent.order();
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        if *elements.last().unwrap() >= n {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        let mut mask = vec![false; n];
        for &e in &elements {
            mask[e] = true;
        }
        for &a in &elements {
            if !mask[parent.inv(a)] {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elements {
                if !mask[parent.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("product of {a} and {b} missing")));
                }
            }
        }
        debug_assert_eq!(n % elements.len(), 0);
        Ok(Subgroup { parent, elements })
    }

    pub(crate) fn from_sorted_unchecked(parent: GroupRef, elements: Vec<usize>) -> Subgroup {
        Subgroup { parent, elements }
    }

    pub fn generated(parent: &GroupRef, gens: &[usize]) -> Subgroup {
        let elements = closure(parent, gens);
        Subgroup {
            parent: parent.clone(),
            elements,
        }
    }

    pub fn trivial(parent: &GroupRef) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            elements: vec![0],
        }
    }

    pub fn whole(parent: &GroupRef) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            elements: parent.elements().collect(),
        }
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.parent.order()];
        for &e in &self.elements {
            mask[e] = true;
        }
        mask
    }

    /// Position of `x` in the sorted element list, which is also its index
    /// in [`Subgroup::to_group`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_normal(&self) -> bool {
        let g = &*self.parent;
        let mask = self.mask();
        g.generators()
            .iter()
            .all(|&s| self.elements.iter().all(|&x| mask[g.conj(s, x)]))
    }

    /// Induced group on the sorted element list, with its inclusion.
    pub fn to_group(&self) -> (GroupRef, GroupHom) {
        let n = self.order();
        let p = &*self.parent;
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(self.position(p.mul(a, b)).unwrap() as u32);
            }
        }
        let name = format!("sub({})[{}]", p.name(), n);
        let group = FiniteGroup::from_flat(n, table, Some(name)).into_ref();
        let incl = GroupHom::new_unchecked(group.clone(), self.parent.clone(), self.elements.clone());
        (group, incl)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}
