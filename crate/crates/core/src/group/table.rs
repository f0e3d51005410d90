use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Shared handle to an immutable group.
pub type GroupRef = Arc<FiniteGroup>;

/// Minimal interface the homomorphism search needs from a target group.
///
/// Implemented by tabulated groups and by automorphism groups, which may be
/// too large to tabulate.
pub trait GroupOps: Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn element_order(&self, a: usize) -> usize;
}

/// A finite group presented by its Cayley table on `0..order`, identity 0.
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    name: Option<String>,
    generators: OnceLock<Vec<usize>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a user supplied table.
    pub fn from_rows(rows: &[Vec<usize>], name: Option<String>) -> Result<FiniteGroup> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::TableInvalid("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::TableInvalid(format!(
                    "row {i} has length {} but the table has {order} rows",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::TableInvalid(format!("entry {v} in row {i} is out of range")));
                }
                table.push(v as u32);
            }
        }
        validate_table(order, &table)?;
        Ok(FiniteGroup::from_flat(order, table, name))
    }

    /// Builds a group from a table known to satisfy the group axioms.
    pub(crate) fn from_flat(order: usize, table: Vec<u32>, name: Option<String>) -> FiniteGroup {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x == 0).expect("row without identity");
            inverse[a] = b as u32;
        }
        let mut orders = vec![0u32; order];
        for a in 0..order {
            let mut k = 1u32;
            let mut x = a;
            while x != 0 {
                x = table[x * order + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        FiniteGroup {
            order,
            table,
            inverse,
            orders,
            name,
            generators: OnceLock::new(),
        }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_flat(1, vec![0], Some("1".into()))
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0);
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        FiniteGroup::from_flat(n, table, Some(format!("Z{n}")))
    }

    pub fn named(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("?")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.row(a).iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub(crate) fn flat_table(&self) -> &[u32] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Re-checks identity, Latin-square and associativity laws.
    pub fn validate(&self) -> Result<()> {
        validate_table(self.order, &self.table)
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut p = self.orders.clone();
        p.sort_unstable();
        p
    }

    /// Greedily chosen generating set: each step adds the element whose
    /// adjunction yields the largest subgroup, smallest index on ties.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| extend_generators(self, Vec::new()))
    }
}

impl GroupOps for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        FiniteGroup::mul(self, a, b)
    }
    fn element_order(&self, a: usize) -> usize {
        FiniteGroup::element_order(self, a)
    }
}

fn validate_table(order: usize, table: &[u32]) -> Result<()> {
    let at = |i: usize, j: usize| table[i * order + j] as usize;
    for j in 0..order {
        if at(0, j) != j || at(j, 0) != j {
            return Err(Error::TableInvalid(format!("identity law fails at element {j}")));
        }
    }
    let mut seen = vec![usize::MAX; order];
    for i in 0..order {
        for j in 0..order {
            let v = at(i, j);
            if seen[v] == i {
                return Err(Error::TableInvalid(format!(
                    "row {i} repeats entry {v}, so it is not invertible"
                )));
            }
            seen[v] = i;
        }
    }
    seen.fill(usize::MAX);
    for j in 0..order {
        for i in 0..order {
            let v = at(i, j);
            if seen[v] == j {
                return Err(Error::TableInvalid(format!(
                    "column {j} repeats entry {v}, so it is not invertible"
                )));
            }
            seen[v] = j;
        }
    }
    for i in 0..order {
        for j in 0..order {
            let ij = at(i, j);
            for k in 0..order {
                if at(ij, k) != at(i, at(j, k)) {
                    return Err(Error::TableInvalid(format!("associativity fails for ({i}, {j}, {k})")));
                }
            }
        }
    }
    Ok(())
}

/// Elements of the subgroup generated by `gens`, as a membership mask.
pub fn closure_mask(g: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                queue.push(y);
            }
        }
    }
    mask
}

/// Sorted elements of the subgroup generated by `gens`.
pub fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    closure_mask(g, gens)
        .into_iter()
        .enumerate()
        .filter_map(|(i, m)| m.then_some(i))
        .collect()
}

/// Extends `start` greedily until it generates `g`.
pub fn extend_generators(g: &FiniteGroup, mut gens: Vec<usize>) -> Vec<usize> {
    let n = g.order();
    let mut mask = closure_mask(g, &gens);
    let mut size = mask.iter().filter(|&&m| m).count();
    while size < n {
        // adjoining any element of the coset xH gives the same subgroup
        let mut covered = mask.clone();
        let (mut best, mut best_size) = (usize::MAX, 0);
        for x in 0..n {
            if covered[x] {
                continue;
            }
            for h in 0..n {
                if mask[h] {
                    covered[g.mul(x, h)] = true;
                }
            }
            gens.push(x);
            let s = closure_mask(g, &gens).iter().filter(|&&m| m).count();
            gens.pop();
            if s > best_size {
                best = x;
                best_size = s;
                if s == n {
                    break;
                }
            }
        }
        gens.push(best);
        mask = closure_mask(g, &gens);
        size = best_size;
    }
    gens
}
