use std::sync::Arc;

use super::table::{FiniteGroup, GroupRef};
use super::Subgroup;
use crate::error::{Error, Result};

/// A homomorphism recorded element by element: `image[i] = f(i)`.
#[derive(Debug, Clone)]
pub struct GroupHom {
    domain: GroupRef,
    codomain: GroupRef,
    image: Vec<usize>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
            && same_group(&self.domain, &other.domain)
            && same_group(&self.codomain, &other.codomain)
    }
}

/// Pointer identity, falling back to table equality.
pub fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupHom {
    /// Validates the homomorphism law on every pair.
    pub fn new(domain: GroupRef, codomain: GroupRef, image: Vec<usize>) -> Result<GroupHom> {
        let hom = GroupHom {
            domain,
            codomain,
            image,
        };
        hom.check()?;
        Ok(hom)
    }

    pub(crate) fn new_unchecked(domain: GroupRef, codomain: GroupRef, image: Vec<usize>) -> GroupHom {
        let hom = GroupHom {
            domain,
            codomain,
            image,
        };
        debug_assert!(hom.check().is_ok());
        hom
    }

    pub fn check(&self) -> Result<()> {
        let (g, h) = (&*self.domain, &*self.codomain);
        if self.image.len() != g.order() {
            return Err(Error::TableInvalid(format!(
                "map has {} images for a domain of order {}",
                self.image.len(),
                g.order()
            )));
        }
        if self.image.iter().any(|&x| x >= h.order()) {
            return Err(Error::TableInvalid("image index out of range".into()));
        }
        if self.image[0] != 0 {
            return Err(Error::TableInvalid("identity is not preserved".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.image[g.mul(a, b)] != h.mul(self.image[a], self.image[b]) {
                    return Err(Error::TableInvalid(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    pub fn identity(g: &GroupRef) -> GroupHom {
        GroupHom::new_unchecked(g.clone(), g.clone(), g.elements().collect())
    }

    pub fn zero(g: &GroupRef, h: &GroupRef) -> GroupHom {
        GroupHom::new_unchecked(g.clone(), h.clone(), vec![0; g.order()])
    }

    pub fn domain(&self) -> &GroupRef {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &GroupHom) -> Result<GroupHom> {
        if !same_group(inner.codomain(), &self.domain) {
            return Err(Error::CodomainMismatch);
        }
        let image = inner.image.iter().map(|&x| self.image[x]).collect();
        Ok(GroupHom::new_unchecked(
            inner.domain.clone(),
            self.codomain.clone(),
            image,
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        for &y in &self.image {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_zero(&self) -> bool {
        self.image.iter().all(|&x| x == 0)
    }

    pub fn kernel(&self) -> Subgroup {
        let elems = self
            .image
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| (x == 0).then_some(i))
            .collect();
        Subgroup::from_sorted_unchecked(self.domain.clone(), elems)
    }

    pub fn image_subgroup(&self) -> Subgroup {
        let mut elems = self.image.clone();
        elems.sort_unstable();
        elems.dedup();
        Subgroup::from_sorted_unchecked(self.codomain.clone(), elems)
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Some(GroupHom::new_unchecked(self.codomain.clone(), self.domain.clone(), inv))
    }
}

/// Pairing `⟨f, g⟩: X → A × B` into a product laid out lexicographically.
pub fn pairing(f: &GroupHom, g: &GroupHom, product: &GroupRef) -> Result<GroupHom> {
    if !same_group(f.domain(), g.domain()) {
        return Err(Error::CodomainMismatch);
    }
    let nb = g.codomain().order();
    if f.codomain().order() * nb != product.order() {
        return Err(Error::CodomainMismatch);
    }
    let image = (0..f.domain().order()).map(|x| f.apply(x) * nb + g.apply(x)).collect();
    GroupHom::new(f.domain().clone(), product.clone(), image)
}

impl FiniteGroup {
    pub fn into_ref(self) -> GroupRef {
        Arc::new(self)
    }
}
