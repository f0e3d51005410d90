//! `Aut(G)`, the conjugation morphism `c_G`, `Out(G)` and the relative
//! classifier `[S, G, m]` of a normal inclusion.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use crate::commutator::{centralizer, conjugacy_classes};
use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, GroupHom, GroupOps, GroupRef, HomSearch, Subgroup};
use crate::limits::Limits;

/// Automorphisms of `base` as permutation arrays, sorted lexicographically
/// so that the identity is index 0. The Cayley table of the composition
/// (`carrier`) is only built on request and only below the element cap.
pub struct AutomorphismGroup {
    base: GroupRef,
    elems: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    orders: Vec<u32>,
    carrier: OnceLock<GroupRef>,
}

impl std::fmt::Debug for AutomorphismGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AutomorphismGroup")
            .field("base", &self.base.name())
            .field("order", &self.elems.len())
            .finish()
    }
}

/// Backtracks over generator images constrained by element order and
/// conjugacy class size, keeping only injective partial maps.
pub fn automorphism_group(g: &GroupRef, limits: &Limits) -> Result<Arc<AutomorphismGroup>> {
    let n = g.order();
    let mut class_size = vec![0usize; n];
    for class in conjugacy_classes(g) {
        for &x in &class {
            class_size[x] = class.len();
        }
    }
    let mut search = HomSearch::standard(g, &**g, true);
    for (gen, cands) in search.gens.iter().zip(search.candidates.iter_mut()) {
        cands.retain(|&t| class_size[t] == class_size[*gen]);
    }
    let mut elems: Vec<Vec<u32>> = Vec::new();
    let mut overflow = false;
    search.run(limits, |img| {
        if elems.len() >= limits.automorphism_cap {
            overflow = true;
            return ControlFlow::Break(());
        }
        elems.push(img.iter().map(|&x| x as u32).collect());
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::SizeCap {
            order: elems.len() + 1,
            cap: limits.automorphism_cap,
        });
    }
    elems.sort_unstable();
    Ok(Arc::new(AutomorphismGroup::from_sorted(g.clone(), elems)))
}

impl AutomorphismGroup {
    fn from_sorted(base: GroupRef, elems: Vec<Vec<u32>>) -> AutomorphismGroup {
        let gens = base.generators();
        let index: HashMap<Vec<u32>, usize> = elems
            .iter()
            .enumerate()
            .map(|(i, a)| (gens.iter().map(|&s| a[s]).collect(), i))
            .collect();
        let mut aut = AutomorphismGroup {
            base,
            elems,
            index,
            orders: Vec::new(),
            carrier: OnceLock::new(),
        };
        aut.orders = (0..aut.elems.len())
            .map(|i| {
                let mut k = 1;
                let mut x = i;
                while x != 0 {
                    x = aut.compose(x, i);
                    k += 1;
                }
                k
            })
            .collect();
        aut
    }

    pub fn base(&self) -> &GroupRef {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, i: usize) -> &[u32] {
        &self.elems[i]
    }

    #[inline]
    pub fn apply(&self, i: usize, x: usize) -> usize {
        self.elems[i][x] as usize
    }

    /// Index of a bijective endomorphism given as an image array.
    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        let key: Vec<u32> = self.base.generators().iter().map(|&s| perm[s] as u32).collect();
        self.index
            .get(&key)
            .copied()
            .filter(|&i| self.elems[i].iter().zip(perm).all(|(&a, &b)| a as usize == b))
    }

    /// Index of `elem(i) ∘ elem(j)`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let key: Vec<u32> = self.base.generators().iter().map(|&s| a[b[s] as usize]).collect();
        self.index[&key]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let mut inv = vec![0usize; self.base.order()];
        for (x, &y) in self.elems[i].iter().enumerate() {
            inv[y as usize] = x;
        }
        self.index_of(&inv).expect("inverse of an automorphism")
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.orders[i] as usize
    }

    /// `c_G` as indices into this automorphism list.
    pub fn conjugation_indices(&self) -> Vec<usize> {
        let g = &*self.base;
        g.elements()
            .map(|h| {
                let perm: Vec<usize> = g.elements().map(|x| g.conj(h, x)).collect();
                self.index_of(&perm).expect("inner automorphism")
            })
            .collect()
    }

    /// Sorted indices of `Inn(G) = im(c_G)`.
    pub fn inner_indices(&self) -> Vec<usize> {
        let mut inn = self.conjugation_indices();
        inn.sort_unstable();
        inn.dedup();
        inn
    }

    /// Cayley table of the composition, `table[i][j] = elem(i) ∘ elem(j)`.
    pub fn carrier(&self, limits: &Limits) -> Result<GroupRef> {
        if let Some(c) = self.carrier.get() {
            return Ok(c.clone());
        }
        let n = self.order();
        limits.check_order(n)?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.compose(i, j) as u32);
            }
        }
        let name = format!("Aut({})", self.base.name());
        let group = FiniteGroup::from_flat(n, table, Some(name)).into_ref();
        Ok(self.carrier.get_or_init(|| group).clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }
}

impl GroupOps for AutomorphismGroup {
    fn order(&self) -> usize {
        self.elems.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.compose(a, b)
    }
    fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }
}

/// `c_G: G → Aut(G)`, `g ↦ (x ↦ g x g⁻¹)`.
pub fn conjugation_morphism(aut: &AutomorphismGroup, limits: &Limits) -> Result<GroupHom> {
    let carrier = aut.carrier(limits)?;
    Ok(GroupHom::new_unchecked(
        aut.base().clone(),
        carrier,
        aut.conjugation_indices(),
    ))
}

/// `Inn(G)` as a subgroup of the tabulated `Aut(G)`.
pub fn inner_subgroup(aut: &AutomorphismGroup, limits: &Limits) -> Result<Subgroup> {
    Ok(conjugation_morphism(aut, limits)?.image_subgroup())
}

/// `Out(G) = Aut(G)/Inn(G)` with the projection.
pub fn outer_quotient(aut: &AutomorphismGroup, limits: &Limits) -> Result<(GroupRef, GroupHom)> {
    let inn = inner_subgroup(aut, limits)?;
    let (q, proj) = quotient(inn.parent(), &inn)?;
    let q = Arc::new(FiniteGroup::from_flat(
        q.order(),
        q.flat_table().to_vec(),
        Some(format!("Out({})", aut.base().name())),
    ));
    let proj = GroupHom::new_unchecked(proj.domain().clone(), q.clone(), proj.images().to_vec());
    Ok((q, proj))
}

/// Pairs `(θ, φ) ∈ Aut(S) × Aut(G)` with `φ ∘ m = m ∘ θ` for the inclusion
/// `m` of a normal subgroup, with both projections.
#[derive(Debug, Clone)]
pub struct RelativeClassifier {
    pub sub: GroupRef,
    pub ambient: GroupRef,
    pub inclusion: GroupHom,
    pub carrier: GroupRef,
    pub q1: GroupHom,
    pub q2: GroupHom,
}

pub fn relative_classifier(g: &GroupRef, s: &Subgroup, limits: &Limits) -> Result<RelativeClassifier> {
    if !s.is_normal() {
        return Err(Error::NotNormal);
    }
    let (sub, inclusion) = s.to_group();
    let aut_s = automorphism_group(&sub, limits)?;
    let aut_g = automorphism_group(g, limits)?;
    let mask = s.mask();
    let mut pairs = Vec::new();
    for phi in 0..aut_g.order() {
        let a = aut_g.elem(phi);
        if s.elements().iter().all(|&x| mask[a[x] as usize]) {
            let theta: Vec<usize> = s
                .elements()
                .iter()
                .map(|&x| s.position(a[x] as usize).unwrap())
                .collect();
            pairs.push((aut_s.index_of(&theta).expect("restriction is an automorphism"), phi));
        }
    }
    let n = pairs.len();
    limits.check_order(n)?;
    let slot: HashMap<usize, usize> = pairs.iter().enumerate().map(|(i, &(_, phi))| (phi, i)).collect();
    let mut table = Vec::with_capacity(n * n);
    for &(_, a) in &pairs {
        for &(_, b) in &pairs {
            table.push(slot[&aut_g.compose(a, b)] as u32);
        }
    }
    let name = format!("[{},{}]", sub.name(), g.name());
    let carrier = FiniteGroup::from_flat(n, table, Some(name)).into_ref();
    let q1 = GroupHom::new_unchecked(
        carrier.clone(),
        aut_s.carrier(limits)?,
        pairs.iter().map(|&(t, _)| t).collect(),
    );
    let q2 = GroupHom::new_unchecked(
        carrier.clone(),
        aut_g.carrier(limits)?,
        pairs.iter().map(|&(_, p)| p).collect(),
    );
    if centralizer(g, s)?.is_trivial() && !q1.is_injective() {
        return Err(Error::Violation(format!(
            "trivial centralizer of {} in {} but q1 is not injective",
            sub.name(),
            g.name()
        )));
    }
    Ok(RelativeClassifier {
        sub,
        ambient: g.clone(),
        inclusion,
        carrier,
        q1,
        q2,
    })
}
