//! Commutation, centers, centralizers and the normal / characteristic /
//! split predicates on subgroups.
//!
//! In groups a Bourn-normal monomorphism is the same thing as the inclusion
//! of a normal subgroup, so only normality is exposed. Two maps into `X`
//! Huq-commute exactly when their images commute elementwise.

use std::collections::BTreeSet;

use crate::automorphism::{automorphism_group, AutomorphismGroup};
use crate::error::{Error, Result};
use crate::group::{closure, left_inverses, same_group, FiniteGroup, GroupHom, GroupRef, Subgroup};
use crate::limits::Limits;

/// True iff the images of `f` and `g` commute elementwise.
pub fn commutes(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if !same_group(f.codomain(), g.codomain()) {
        return Err(Error::CodomainMismatch);
    }
    let x = f.codomain();
    let a = f.image_subgroup();
    let b = g.image_subgroup();
    Ok(a.elements()
        .iter()
        .all(|&p| b.elements().iter().all(|&q| x.mul(p, q) == x.mul(q, p))))
}

pub fn center(g: &GroupRef) -> Subgroup {
    let gens = g.generators();
    let elems = g
        .elements()
        .filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)))
        .collect();
    Subgroup::new(g.clone(), elems).expect("center is a subgroup")
}

/// `C_G(S)`.
pub fn centralizer(g: &GroupRef, s: &Subgroup) -> Result<Subgroup> {
    if !same_group(s.parent(), g) {
        return Err(Error::NotASubgroup("subgroup belongs to another group".into()));
    }
    let elems = g
        .elements()
        .filter(|&x| s.elements().iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Subgroup::new(g.clone(), elems)
}

/// Conjugacy classes, each sorted, ordered by smallest element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = g.elements().map(|h| g.conj(h, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class);
    }
    classes
}

/// All normal subgroups ordered by (order, elements).
pub fn normal_subgroups(g: &GroupRef) -> Vec<Subgroup> {
    let classes = conjugacy_classes(g);
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    found.insert((1, vec![0]));
    let mut frontier = vec![vec![0usize]];
    while let Some(n) = frontier.pop() {
        for class in &classes {
            if n.binary_search(&class[0]).is_ok() {
                continue;
            }
            let mut gens = n.clone();
            gens.extend_from_slice(class);
            let m = closure(g, &gens);
            if found.insert((m.len(), m.clone())) {
                frontier.push(m);
            }
        }
    }
    found
        .into_iter()
        .map(|(_, elems)| Subgroup::from_sorted_unchecked(g.clone(), elems))
        .collect()
}

/// `α(S) = S` for every automorphism `α` of the parent.
pub fn is_characteristic(s: &Subgroup, aut: &AutomorphismGroup) -> bool {
    let mask = s.mask();
    (0..aut.order()).all(|i| {
        let a = aut.elem(i);
        s.elements().iter().all(|&x| mask[a[x] as usize])
    })
}

/// A homomorphism `r: G → S` with `r ∘ incl = id`, if one exists.
pub fn split_retraction(s: &Subgroup, limits: &Limits) -> Result<Option<GroupHom>> {
    let (_, incl) = s.to_group();
    Ok(left_inverses(&incl, 1, limits)?.into_iter().next())
}

#[derive(Debug, Clone)]
pub struct SubgroupVerdict {
    pub is_normal: bool,
    pub is_characteristic: bool,
    pub split_retraction: Option<GroupHom>,
}

pub fn subgroup_verdict(g: &GroupRef, s: &Subgroup, limits: &Limits) -> Result<SubgroupVerdict> {
    let aut = automorphism_group(g, limits)?;
    subgroup_verdict_with(g, s, &aut, limits)
}

pub fn subgroup_verdict_with(
    g: &GroupRef,
    s: &Subgroup,
    aut: &AutomorphismGroup,
    limits: &Limits,
) -> Result<SubgroupVerdict> {
    if !same_group(s.parent(), g) || !same_group(aut.base(), g) {
        return Err(Error::NotASubgroup("subgroup belongs to another group".into()));
    }
    let is_normal = s.is_normal();
    let is_characteristic = is_characteristic(s, aut);
    debug_assert!(!is_characteristic || is_normal);
    Ok(SubgroupVerdict {
        is_normal,
        is_characteristic,
        split_retraction: split_retraction(s, limits)?,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{direct_product, is_isomorphic, quotient, symmetric};

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn sym(n: usize) -> GroupRef {
        Arc::new(symmetric(n, &Limits::default()).unwrap())
    }

    fn first_of_order(g: &FiniteGroup, k: usize) -> usize {
        g.elements().find(|&x| g.element_order(x) == k).unwrap()
    }

    fn transpositions(g: &FiniteGroup) -> Vec<usize> {
        g.elements().filter(|&x| g.element_order(x) == 2).collect()
    }

    /// Brute-force commuting set, independent of generators.
    fn brute_center(g: &FiniteGroup) -> Vec<usize> {
        g.elements()
            .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
            .collect()
    }

    #[test]
    fn product_injections_commute() {
        let p = direct_product(&z(2), &z(3), &Limits::default()).unwrap();
        assert!(commutes(&p.inj1, &p.inj2).unwrap());
    }

    #[test]
    fn a3_commutes_with_itself_but_transpositions_do_not() {
        let g = sym(3);
        let a3 = Subgroup::generated(&g, &[first_of_order(&g, 3)]);
        let (_, i) = a3.to_group();
        assert!(commutes(&i, &i).unwrap());
        let t = transpositions(&g);
        let (_, i1) = Subgroup::generated(&g, &[t[0]]).to_group();
        let (_, i2) = Subgroup::generated(&g, &[t[1]]).to_group();
        assert!(!commutes(&i1, &i2).unwrap());
    }

    #[test]
    fn codomain_mismatch() {
        let f = GroupHom::identity(&z(2));
        let g = GroupHom::identity(&z(3));
        assert_eq!(commutes(&f, &g).unwrap_err(), Error::CodomainMismatch);
    }

    #[test]
    fn centers() {
        assert_eq!(center(&z(4)).order(), 4);
        let s3 = sym(3);
        assert_eq!(center(&s3).elements(), brute_center(&s3).as_slice());
        assert!(center(&s3).is_trivial());
        let p = direct_product(&z(2), &s3, &Limits::default()).unwrap();
        assert_eq!(center(&p.group).order(), 2);
        assert_eq!(center(&p.group).elements(), brute_center(&p.group).as_slice());
    }

    #[test]
    fn centralizers() {
        let s3 = sym(3);
        let a3 = Subgroup::generated(&s3, &[first_of_order(&s3, 3)]);
        assert_eq!(centralizer(&s3, &a3).unwrap(), a3);
        let s4 = sym(4);
        let a4 = normal_subgroups(&s4).into_iter().find(|n| n.order() == 12).unwrap();
        assert!(centralizer(&s4, &a4).unwrap().is_trivial());
        assert_eq!(centralizer(&s4, &Subgroup::whole(&s4)).unwrap(), center(&s4));
        let other = Subgroup::whole(&z(3));
        assert!(centralizer(&s4, &other).is_err());
    }

    #[test]
    fn normal_subgroup_lattices() {
        let counts: Vec<usize> = normal_subgroups(&sym(4)).iter().map(|n| n.order()).collect();
        assert_eq!(counts, vec![1, 4, 12, 24]);
        assert_eq!(normal_subgroups(&sym(3)).len(), 3);
        // every subgroup of an abelian group is normal: Z2×Z2 has five
        let v = direct_product(&z(2), &z(2), &Limits::default()).unwrap().group;
        assert_eq!(normal_subgroups(&v).len(), 5);
    }

    #[test]
    fn z2_in_z4_is_normal_characteristic_not_split() {
        let g = z(4);
        let s = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let v = subgroup_verdict(&g, &s, &Limits::default()).unwrap();
        assert!(v.is_normal && v.is_characteristic);
        assert!(v.split_retraction.is_none());
    }

    #[test]
    fn factor_of_klein_four_is_split_not_characteristic() {
        let l = Limits::default();
        let p = direct_product(&z(2), &z(2), &l).unwrap();
        let s = p.inj1.image_subgroup();
        let v = subgroup_verdict(&p.group, &s, &l).unwrap();
        assert!(v.is_normal);
        assert!(!v.is_characteristic);
        let r = v.split_retraction.unwrap();
        let (_, incl) = s.to_group();
        assert!(r.after(&incl).unwrap().is_identity());
    }

    #[test]
    fn centers_are_characteristic() {
        let l = Limits::default();
        let z2 = z(2);
        for g in [sym(3), sym(4), z(6), direct_product(&z2, &sym(3), &l).unwrap().group] {
            let v = subgroup_verdict(&g, &center(&g), &l).unwrap();
            assert!(v.is_characteristic, "{}", g.name());
        }
    }

    #[test]
    fn split_normal_subgroup_is_a_product_factor() {
        let l = Limits::default();
        let p = direct_product(&z(2), &sym(3), &l).unwrap();
        let s = center(&p.group);
        let r = split_retraction(&s, &l).unwrap().expect("center of Z2×S3 splits");
        let k = r.kernel();
        let (kg, _) = k.to_group();
        let (sg, _) = s.to_group();
        let prod = direct_product(&sg, &kg, &l).unwrap();
        assert!(is_isomorphic(&p.group, &prod.group, &l).unwrap().is_some());
        let (q, _) = quotient(&p.group, &s).unwrap();
        assert!(is_isomorphic(&q, &kg, &l).unwrap().is_some());
    }
}
