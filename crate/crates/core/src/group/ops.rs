use super::hom::GroupHom;
use super::subgroup::Subgroup;
use super::table::{FiniteGroup, GroupRef};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// `G × H` with its projections and the injections `⟨1,0⟩`, `⟨0,1⟩`.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: GroupRef,
    pub proj1: GroupHom,
    pub proj2: GroupHom,
    pub inj1: GroupHom,
    pub inj2: GroupHom,
}

/// Pairs are indexed lexicographically: `(g, h) ↦ g·|H| + h`.
pub fn direct_product(g: &GroupRef, h: &GroupRef, limits: &Limits) -> Result<DirectProduct> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng * nh;
    limits.check_order(n)?;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (a1, a2) = (a / nh, a % nh);
        for b in 0..n {
            let (b1, b2) = (b / nh, b % nh);
            table.push((g.mul(a1, b1) * nh + h.mul(a2, b2)) as u32);
        }
    }
    let name = format!("{}x{}", g.name(), h.name());
    let group = FiniteGroup::from_flat(n, table, Some(name)).into_ref();
    let proj1 = GroupHom::new_unchecked(group.clone(), g.clone(), (0..n).map(|a| a / nh).collect());
    let proj2 = GroupHom::new_unchecked(group.clone(), h.clone(), (0..n).map(|a| a % nh).collect());
    let inj1 = GroupHom::new_unchecked(g.clone(), group.clone(), (0..ng).map(|a| a * nh).collect());
    let inj2 = GroupHom::new_unchecked(h.clone(), group.clone(), (0..nh).collect());
    Ok(DirectProduct {
        group,
        proj1,
        proj2,
        inj1,
        inj2,
    })
}

/// `G/N` with the canonical surjection. Cosets are ordered by their
/// smallest element, so the identity coset is 0.
pub fn quotient(g: &GroupRef, n: &Subgroup) -> Result<(GroupRef, GroupHom)> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset[x] == usize::MAX {
            let idx = reps.len();
            reps.push(x);
            for &k in n.elements() {
                coset[g.mul(x, k)] = idx;
            }
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)] as u32);
        }
    }
    let name = format!("{}/[{}]", g.name(), n.order());
    let group = FiniteGroup::from_flat(q, table, Some(name)).into_ref();
    let proj = GroupHom::new_unchecked(g.clone(), group.clone(), coset);
    Ok((group, proj))
}

/// Group generated by permutations of `0..degree`, elements indexed in
/// breadth-first discovery order with the identity first. The product is
/// composition, `(a·b)(x) = a(b(x))`.
pub fn permutation_closure(
    degree: usize,
    generators: &[Vec<usize>],
    name: Option<String>,
    limits: &Limits,
) -> Result<FiniteGroup> {
    use std::collections::HashMap;
    for (i, p) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::TableInvalid(format!(
                "generator {i} is not a permutation of 0..{degree}"
            )));
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elems.len() {
        for s in generators {
            let composed: Vec<usize> = s.iter().map(|&x| elems[head][x]).collect();
            if !index.contains_key(&composed) {
                if elems.len() >= limits.element_cap {
                    return Err(Error::ClosureTooLarge {
                        cap: limits.element_cap,
                    });
                }
                index.insert(composed.clone(), elems.len());
                elems.push(composed);
            }
        }
        head += 1;
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
            table.push(index[&ab] as u32);
        }
    }
    Ok(FiniteGroup::from_flat(n, table, name))
}

/// Element of a dihedral or dicyclic family written as `r^i s^j`.
fn metacyclic(n: usize, name: String, twist: impl Fn(usize, usize, usize, usize) -> (usize, usize)) -> FiniteGroup {
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let (i, j) = twist(a % n, a / n, b % n, b / n);
            table.push((j * n + i) as u32);
        }
    }
    FiniteGroup::from_flat(order, table, Some(name))
}

/// Dihedral group of order `2n`: `r^n = s^2 = 1`, `s r s = r^{-1}`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    metacyclic(n, format!("D{n}"), |i, j, k, l| {
        let k = if j == 1 { (n - k) % n } else { k };
        ((i + k) % n, (j + l) % 2)
    })
}

/// Dicyclic group of order `4m`: `a^{2m} = 1`, `x^2 = a^m`, `x a x^{-1} = a^{-1}`.
/// `m = 2` is the quaternion group, `m = 4` the generalized quaternion group of order 16.
pub fn dicyclic(m: usize) -> FiniteGroup {
    assert!(m >= 1);
    let n = 2 * m;
    let name = match m {
        2 => "Q8".to_string(),
        4 => "Q16".to_string(),
        _ => format!("Dic{}", 4 * m),
    };
    metacyclic(n, name, |i, j, k, l| {
        // (a^i x^j)(a^k x^l)
        let k = if j == 1 { (n - k) % n } else { k };
        let mut e = (i + k) % n;
        let mut s = j + l;
        if s == 2 {
            e = (e + m) % n;
            s = 0;
        }
        (e, s)
    })
}

pub fn symmetric(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    if n <= 1 {
        return Ok(FiniteGroup::trivial().named(format!("S{n}")));
    }
    let transposition: Vec<usize> = (0..n)
        .map(|i| match i {
            0 => 1,
            1 => 0,
            _ => i,
        })
        .collect();
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    permutation_closure(n, &[transposition, cycle], Some(format!("S{n}")), limits)
}

/// Generated by the 3-cycles `(0 1 k)`.
pub fn alternating(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    if n <= 2 {
        return Ok(FiniteGroup::trivial().named(format!("A{n}")));
    }
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            (0..n)
                .map(|i| match i {
                    0 => 1,
                    1 => k,
                    _ if i == k => 0,
                    _ => i,
                })
                .collect()
        })
        .collect();
    permutation_closure(n, &gens, Some(format!("A{n}")), limits)
}
