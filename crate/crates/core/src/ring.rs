//! Finite, not necessarily unital rings.
//!
//! A ring is complete (in any of the four senses) exactly when it is unital.
//! The refutation for a non-unital `R` is the kernel inclusion of the
//! unitalization `R → Z_m ⋉ R`, `m` the additive exponent, which is split
//! as a sequence of rings but has no multiplicative retraction.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub struct FiniteRing {
    add: Arc<FiniteGroup>,
    mul: Vec<u32>,
    name: String,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteRing {
    /// Validates the additive group, associativity and both distributive laws.
    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>], name: impl Into<String>) -> Result<FiniteRing> {
        let name = name.into();
        let add = FiniteGroup::from_rows(add, None).map_err(|e| Error::RingInvalid(format!("{name}: {e}")))?;
        if !add.is_abelian() {
            return Err(Error::RingInvalid(format!("{name}: addition is not commutative")));
        }
        let n = add.order();
        if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::RingInvalid(format!(
                "{name}: multiplication table has the wrong shape"
            )));
        }
        let mul = mul.iter().flatten().map(|&v| v as u32).collect();
        let r = FiniteRing {
            add: Arc::new(add),
            mul,
            name,
        };
        r.validate()?;
        Ok(r)
    }

    fn from_parts(add: FiniteGroup, mul: Vec<u32>, name: String) -> FiniteRing {
        FiniteRing {
            add: Arc::new(add),
            mul,
            name,
        }
    }

    /// `Z/n` with its usual product.
    pub fn integers_mod(n: usize) -> FiniteRing {
        let mul = (0..n * n).map(|k| ((k / n) * (k % n) % n) as u32).collect();
        FiniteRing::from_parts(FiniteGroup::cyclic(n), mul, format!("Z/{n}"))
    }

    /// The additive group `Z_n` with `xy = 0`.
    pub fn zero_ring(n: usize) -> FiniteRing {
        FiniteRing::from_parts(FiniteGroup::cyclic(n), vec![0; n * n], format!("zero ring on Z{n}"))
    }

    /// The ideal `gZ/nZ` of `Z/n` with inherited operations, where `g | n`.
    pub fn ideal(n: usize, g: usize) -> Result<FiniteRing> {
        if g == 0 || !n.is_multiple_of(g) {
            return Err(Error::RingInvalid(format!("{g} does not divide {n}")));
        }
        let k = n / g;
        // element i stands for g·i mod n
        let add: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
        let mul: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| (g * i * g * j % n) / g).collect())
            .collect();
        FiniteRing::from_tables(&add, &mul, format!("{g}Z/{n}Z"))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive_group(&self) -> &Arc<FiniteGroup> {
        &self.add
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.mul(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// `k·x` in the additive group.
    pub fn scale(&self, k: usize, x: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, x))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::RingInvalid(format!(
                            "{}: associativity fails for ({a}, {b}, {c})",
                            self.name
                        )));
                    }
                    let left = self.mul(a, self.add(b, c)) == self.add(ab, self.mul(a, c));
                    let right = self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c));
                    if !left || !right {
                        return Err(Error::RingInvalid(format!(
                            "{}: distributivity fails for ({a}, {b}, {c})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A two-sided multiplicative identity, by exhaustive search.
    pub fn unit(&self) -> Option<usize> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn additive_exponent(&self) -> usize {
        (0..self.order()).fold(1, |m, x| lcm(m, self.add.element_order(x)))
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|a| (0..self.order()).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// `Z_m ⋉ R` on pairs `(n, r)`, indexed `n·|R| + r`, with
/// `(n, r)(n', r') = (nn', n·r' + n'·r + rr')`.
#[derive(Debug)]
pub struct Unitalization {
    pub ring: FiniteRing,
    pub exponent: usize,
    /// `r ↦ (0, r)`.
    pub inclusion: Vec<usize>,
}

pub fn unitalization(r: &FiniteRing) -> Unitalization {
    let m = r.additive_exponent();
    let k = r.order();
    let n = m * k;
    let scaled: Vec<Vec<usize>> = (0..m).map(|c| r.elements().map(|x| r.scale(c, x)).collect()).collect();
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    for p in 0..n {
        let (a, x) = (p / k, p % k);
        for q in 0..n {
            let (b, y) = (q / k, q % k);
            add[p * n + q] = (((a + b) % m) * k + r.add(x, y)) as u32;
            let s = r.add(r.add(scaled[a][y], scaled[b][x]), r.mul(x, y));
            mul[p * n + q] = ((a * b % m) * k + s) as u32;
        }
    }
    let group = FiniteGroup::from_flat(n, add, None);
    let ring = FiniteRing::from_parts(group, mul, format!("Z{m} ⋉ {}", r.name()));
    Unitalization {
        ring,
        exponent: m,
        inclusion: (0..k).collect(),
    }
}

/// Ring retractions `l` of the inclusion, via `l(n, r) = n·e' + r`.
pub fn unitalization_retractions(r: &FiniteRing, u: &Unitalization) -> Vec<usize> {
    let k = r.order();
    let big = &u.ring;
    r.elements()
        .filter(|&e| {
            let l = |p: usize| r.add(r.scale(p / k, e), p % k);
            big.elements()
                .all(|p| big.elements().all(|q| l(big.mul(p, q)) == r.mul(l(p), l(q))))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub object: String,
    pub order: usize,
    pub has_unit: bool,
    pub unit: Option<usize>,
    pub unitalization_order: usize,
    /// Values `e' = l(1, 0)` of the ring retractions of `R → Z_m ⋉ R`.
    pub retractions: Vec<usize>,
    pub proto_complete: bool,
    pub complete: bool,
    pub strong_complete: bool,
}

pub fn ring_classify(r: &FiniteRing) -> Result<RingReport> {
    let unit = r.unit();
    let u = unitalization(r);
    let retractions = unitalization_retractions(r, &u);
    let split = !retractions.is_empty();
    let report = RingReport {
        object: r.name().to_string(),
        order: r.order(),
        has_unit: unit.is_some(),
        unit,
        unitalization_order: u.ring.order(),
        proto_complete: split,
        complete: split,
        strong_complete: retractions.len() == 1,
        retractions,
    };
    let h = report.has_unit;
    if report.proto_complete != h || report.complete != h || report.strong_complete != h {
        return Err(Error::Violation(format!(
            "{}: completeness flags disagree with unitality",
            r.name()
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingSource {
    Tables { add: Vec<Vec<usize>>, mul: Vec<Vec<usize>> },
    IntegersMod { n: usize },
    Zero { n: usize },
    Ideal { n: usize, generator: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub name: Option<String>,
    #[serde(flatten)]
    pub source: RingSource,
}

impl RingFile {
    pub fn load(&self) -> Result<FiniteRing> {
        let mut r = match &self.source {
            RingSource::Tables { add, mul } => {
                FiniteRing::from_tables(add, mul, self.name.clone().unwrap_or_else(|| "?".into()))?
            }
            RingSource::IntegersMod { n } => FiniteRing::integers_mod(nonzero(*n)?),
            RingSource::Zero { n } => FiniteRing::zero_ring(nonzero(*n)?),
            RingSource::Ideal { n, generator } => FiniteRing::ideal(*n, *generator)?,
        };
        if let Some(name) = &self.name {
            r.name = name.clone();
        }
        Ok(r)
    }
}

fn nonzero(n: usize) -> Result<usize> {
    if n == 0 {
        Err(Error::RingInvalid("order must be positive".into()))
    } else {
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_homs, GroupRef};
    use crate::limits::Limits;

    /// Ring retractions found among all additive homomorphisms.
    fn brute_retractions(r: &FiniteRing, u: &Unitalization) -> usize {
        let big: GroupRef = u.ring.additive_group().clone();
        let small: GroupRef = r.additive_group().clone();
        enumerate_homs(&big, &small, &Limits::default())
            .unwrap()
            .into_iter()
            .filter(|l| u.inclusion.iter().enumerate().all(|(x, &p)| l.apply(p) == x))
            .filter(|l| {
                u.ring.elements().all(|p| {
                    u.ring
                        .elements()
                        .all(|q| l.apply(u.ring.mul(p, q)) == r.mul(l.apply(p), l.apply(q)))
                })
            })
            .count()
    }

    #[test]
    fn integers_mod_n_are_complete() {
        for n in 1..=12 {
            let r = FiniteRing::integers_mod(n);
            r.validate().unwrap();
            let rep = ring_classify(&r).unwrap();
            assert!(rep.has_unit && rep.complete && rep.strong_complete, "Z/{n}");
            let u = unitalization(&r);
            assert_eq!(brute_retractions(&r, &u), rep.retractions.len());
        }
    }

    #[test]
    fn zero_ring_is_refuted() {
        let r = FiniteRing::zero_ring(2);
        let rep = ring_classify(&r).unwrap();
        assert!(!rep.has_unit && !rep.proto_complete);
        assert!(rep.retractions.is_empty());
        assert_eq!(rep.unitalization_order, 4);
        assert_eq!(brute_retractions(&r, &unitalization(&r)), 0);
    }

    #[test]
    fn even_residues_mod_8_are_refuted() {
        let r = FiniteRing::ideal(8, 2).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.additive_exponent(), 4);
        let rep = ring_classify(&r).unwrap();
        assert!(!rep.has_unit && !rep.complete);
        assert_eq!(rep.unitalization_order, 16);
        assert_eq!(brute_retractions(&r, &unitalization(&r)), 0);
    }

    #[test]
    fn unitalization_is_a_unital_ring() {
        for r in [
            FiniteRing::zero_ring(3),
            FiniteRing::ideal(8, 2).unwrap(),
            FiniteRing::integers_mod(6),
        ] {
            let u = unitalization(&r);
            u.ring.validate().unwrap();
            assert_eq!(u.ring.unit(), Some(r.order()));
        }
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![1, 1]];
        assert!(matches!(
            FiniteRing::from_tables(&add, &mul, "bad"),
            Err(Error::RingInvalid(_))
        ));
        assert!(FiniteRing::ideal(8, 3).is_err());
    }

    #[test]
    fn ring_files() {
        let f: RingFile = serde_json::from_str(r#"{"name":"E","ideal":{"n":8,"generator":2}}"#).unwrap();
        assert_eq!(f.load().unwrap().name(), "E");
        let f: RingFile = serde_json::from_str(r#"{"tables":{"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]]}}"#).unwrap();
        assert!(ring_classify(&f.load().unwrap()).unwrap().has_unit);
    }
}
