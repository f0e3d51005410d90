//! Catalogs of groups, rings and Lie algebras, and the closure builder for
//! the shipped catalog of all groups of order at most 24.
//!
//! Entries are recipes that refer only to earlier entries, so a catalog
//! file resolves in a single pass.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::automorphism::automorphism_group;
use crate::error::{Error, Result};
use crate::extension::{semidirect_product, GroupAction};
use crate::group::{
    alternating, dicyclic, dihedral, direct_product, for_each_hom, is_isomorphic, iso_invariants_match, load_group,
    quotient, symmetric, FiniteGroup, GroupRef, GroupSource, PermutationSource, Subgroup,
};
use crate::lie::{LieAlgebra, LieFile};
use crate::limits::Limits;
use crate::ring::{FiniteRing, RingFile};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipe {
    Cayley(Vec<Vec<usize>>),
    Permutations(PermutationSource),
    Cyclic(usize),
    /// Order `2n`.
    Dihedral(usize),
    /// Order `4m`.
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Product(String, String),
    /// `action[b]` is the index in the canonical `Aut(kernel)` list of the
    /// automorphism by which element `b` of `acting` acts.
    Semidirect {
        kernel: String,
        acting: String,
        action: Vec<usize>,
    },
    Quotient {
        of: String,
        normal: Vec<usize>,
    },
}

/// Facts pinned for regression.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proto_complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strong_complete: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(flatten)]
    pub recipe: Recipe,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub schema: u32,
    #[serde(default)]
    pub groups: Vec<CatalogEntry>,
    #[serde(default)]
    pub rings: Vec<RingFile>,
    #[serde(default)]
    pub lie: Vec<LieFile>,
}

#[derive(Debug, Clone)]
pub struct ResolvedGroup {
    pub entry: CatalogEntry,
    pub group: GroupRef,
}

impl ResolvedGroup {
    /// The two factors, for entries built as direct products.
    pub fn factors<'a>(&self, catalog: &'a Catalog) -> Vec<&'a GroupRef> {
        match &self.entry.recipe {
            Recipe::Product(a, b) => [a, b].into_iter().filter_map(|n| catalog.group(n)).collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug)]
pub struct Catalog {
    pub groups: Vec<ResolvedGroup>,
    pub rings: Vec<FiniteRing>,
    pub lie: Vec<LieAlgebra>,
    by_name: HashMap<String, usize>,
}

fn renamed(g: &FiniteGroup, name: &str) -> GroupRef {
    Arc::new(FiniteGroup::from_flat(
        g.order(),
        g.flat_table().to_vec(),
        Some(name.to_string()),
    ))
}

impl Catalog {
    pub fn load(file: &CatalogFile, limits: &Limits) -> Result<Catalog> {
        if file.schema != SCHEMA {
            return Err(Error::ConfigInvalid(format!(
                "catalog schema {} is not supported (expected {SCHEMA})",
                file.schema
            )));
        }
        let mut cat = Catalog {
            groups: Vec::new(),
            rings: Vec::new(),
            lie: Vec::new(),
            by_name: HashMap::new(),
        };
        for entry in &file.groups {
            if cat.by_name.contains_key(&entry.name) {
                return Err(Error::ConfigInvalid(format!("duplicate catalog name {}", entry.name)));
            }
            let group = cat.resolve(entry, limits).map_err(|e| e.within(&entry.name))?;
            cat.by_name.insert(entry.name.clone(), cat.groups.len());
            cat.groups.push(ResolvedGroup {
                entry: entry.clone(),
                group,
            });
        }
        for r in &file.rings {
            cat.rings.push(r.load()?);
        }
        for l in &file.lie {
            cat.lie.push(l.load()?);
        }
        Ok(cat)
    }

    pub fn from_json(text: &str, limits: &Limits) -> Result<Catalog> {
        let file: CatalogFile =
            serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(format!("catalog: {e}")))?;
        Catalog::load(&file, limits)
    }

    pub fn group(&self, name: &str) -> Option<&GroupRef> {
        self.by_name.get(name).map(|&i| &self.groups[i].group)
    }

    pub fn group_refs(&self) -> Vec<GroupRef> {
        self.groups.iter().map(|r| r.group.clone()).collect()
    }

    fn lookup(&self, name: &str) -> Result<&GroupRef> {
        self.group(name)
            .ok_or_else(|| Error::ConfigInvalid(format!("recipe refers to unknown entry {name}")))
    }

    fn resolve(&self, entry: &CatalogEntry, limits: &Limits) -> Result<GroupRef> {
        let name = entry.name.as_str();
        let g: GroupRef = match &entry.recipe {
            Recipe::Cayley(rows) => Arc::new(load_group(
                &GroupSource::Cayley(rows.clone()),
                Some(name.into()),
                limits,
            )?),
            Recipe::Permutations(p) => Arc::new(load_group(
                &GroupSource::Permutations(p.clone()),
                Some(name.into()),
                limits,
            )?),
            Recipe::Cyclic(n) => {
                positive(*n)?;
                limits.check_order(*n)?;
                Arc::new(FiniteGroup::cyclic(*n).named(name))
            }
            Recipe::Dihedral(n) => {
                positive(*n)?;
                limits.check_order(2 * n)?;
                Arc::new(dihedral(*n).named(name))
            }
            Recipe::Dicyclic(m) => {
                positive(*m)?;
                limits.check_order(4 * m)?;
                Arc::new(dicyclic(*m).named(name))
            }
            Recipe::Symmetric(n) => Arc::new(symmetric(*n, limits)?.named(name)),
            Recipe::Alternating(n) => Arc::new(alternating(*n, limits)?.named(name)),
            Recipe::Product(a, b) => {
                let p = direct_product(self.lookup(a)?, self.lookup(b)?, limits)?;
                renamed(&p.group, name)
            }
            Recipe::Semidirect { kernel, acting, action } => {
                let x = self.lookup(kernel)?;
                let aut = automorphism_group(x, limits)?;
                let a = GroupAction::new(self.lookup(acting)?.clone(), aut, action.clone())?;
                renamed(&semidirect_product(&a, limits)?.total, name)
            }
            Recipe::Quotient { of, normal } => {
                let g = self.lookup(of)?;
                let n = Subgroup::new(g.clone(), normal.clone())?;
                renamed(&quotient(g, &n)?.0, name)
            }
        };
        if let Some(order) = entry.expect.as_ref().and_then(|e| e.order) {
            if order != g.order() {
                return Err(Error::Violation(format!("expected order {order}, built {}", g.order())));
            }
        }
        Ok(g)
    }
}

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ConfigInvalid("family parameter must be positive".into()))
    } else {
        Ok(())
    }
}

const SHIPPED: &str = include_str!("../data/catalog24.json");

/// The shipped catalog: groups of order ≤ 24 plus the ring and Lie test sets.
pub fn shipped_catalog_file() -> CatalogFile {
    serde_json::from_str(SHIPPED).expect("shipped catalog parses")
}

pub fn shipped_catalog(limits: &Limits) -> Result<Catalog> {
    Catalog::load(&shipped_catalog_file(), limits)
}

fn seed_entries(max_order: usize) -> Vec<CatalogEntry> {
    let mut seeds = vec![("1".to_string(), Recipe::Cyclic(1))];
    for n in 2..=max_order {
        seeds.push((format!("Z{n}"), Recipe::Cyclic(n)));
    }
    seeds.push(("S3".into(), Recipe::Symmetric(3)));
    for n in 4..=max_order / 2 {
        seeds.push((format!("D{n}"), Recipe::Dihedral(n)));
    }
    seeds.push(("Q8".into(), Recipe::Dicyclic(2)));
    for m in 3..=max_order / 4 {
        seeds.push((format!("Dic{m}"), Recipe::Dicyclic(m)));
    }
    seeds.push(("A4".into(), Recipe::Alternating(4)));
    seeds.push(("S4".into(), Recipe::Symmetric(4)));
    seeds
        .into_iter()
        .map(|(name, recipe)| CatalogEntry {
            name,
            recipe,
            expect: None,
        })
        .collect()
}

struct Builder<'a> {
    limits: &'a Limits,
    entries: Vec<CatalogEntry>,
    groups: Vec<GroupRef>,
}

impl Builder<'_> {
    /// Adds `g` unless an isomorphic group is already present.
    fn offer(&mut self, name: String, recipe: Recipe, g: &FiniteGroup) -> Result<bool> {
        let candidate = renamed(g, &name);
        for h in &self.groups {
            if iso_invariants_match(h, &candidate) && is_isomorphic(&candidate, h, self.limits)?.is_some() {
                return Ok(false);
            }
        }
        self.entries.push(CatalogEntry {
            name,
            recipe,
            expect: None,
        });
        self.groups.push(candidate);
        Ok(true)
    }

    fn fresh_name(&self, base: String) -> String {
        if !self.entries.iter().any(|e| e.name == base) {
            return base;
        }
        (2..)
            .map(|k| format!("{base}#{k}"))
            .find(|n| !self.entries.iter().any(|e| &e.name == n))
            .unwrap()
    }
}

/// Closes the seed list (cyclic, dihedral, dicyclic, `A4`, `S4`) under
/// direct and semidirect products, deduplicating up to isomorphism, and
/// orders the result by group order then discovery.
pub fn build_closure(max_order: usize, limits: &Limits) -> Result<Vec<CatalogEntry>> {
    let mut b = Builder {
        limits,
        entries: Vec::new(),
        groups: Vec::new(),
    };
    let tmp = Catalog {
        groups: Vec::new(),
        rings: Vec::new(),
        lie: Vec::new(),
        by_name: HashMap::new(),
    };
    for entry in seed_entries(max_order) {
        let g = tmp.resolve(&entry, limits)?;
        if g.order() <= max_order {
            b.offer(entry.name, entry.recipe, &g)?;
        }
    }
    let mut done = 0usize;
    loop {
        let before = b.groups.len();
        // pairs with at least one member from the newest round
        let n = b.groups.len();
        for i in 0..n {
            for j in 0..n {
                if i.max(j) < done {
                    continue;
                }
                let (x, a) = (b.groups[i].clone(), b.groups[j].clone());
                if x.order() < 2 || a.order() < 2 || x.order() * a.order() > max_order {
                    continue;
                }
                let (xn, an) = (b.entries[i].name.clone(), b.entries[j].name.clone());
                let aut = automorphism_group(&x, limits)?;
                let mut actions = Vec::new();
                for_each_hom(&a, &*aut, limits, |img| {
                    actions.push(img.to_vec());
                    ControlFlow::Continue(())
                })?;
                for act in actions {
                    let action = GroupAction::new_unchecked(a.clone(), aut.clone(), act.clone());
                    let e = semidirect_product(&action, limits)?;
                    if action.is_trivial() {
                        let name = b.fresh_name(format!("{an}x{xn}"));
                        b.offer(name, Recipe::Product(an.clone(), xn.clone()), &e.total)?;
                    } else {
                        let name = b.fresh_name(format!("{xn}:{an}"));
                        let recipe = Recipe::Semidirect {
                            kernel: xn.clone(),
                            acting: an.clone(),
                            action: act,
                        };
                        b.offer(name, recipe, &e.total)?;
                    }
                }
            }
        }
        done = n;
        if b.groups.len() == before {
            break;
        }
    }
    let mut order: Vec<usize> = (0..b.entries.len()).collect();
    order.sort_by_key(|&i| (b.groups[i].order(), i));
    Ok(order
        .into_iter()
        .map(|i| {
            let mut e = b.entries[i].clone();
            e.expect = Some(Expect {
                order: Some(b.groups[i].order()),
                ..Expect::default()
            });
            e
        })
        .collect())
}

/// Ring test set: `Z/1 … Z/12`, two non-unital rings.
pub fn default_rings() -> Vec<RingFile> {
    use crate::ring::RingSource;
    let mut out: Vec<RingFile> = (1..=12)
        .map(|n| RingFile {
            name: Some(format!("Z/{n}")),
            source: RingSource::IntegersMod { n },
        })
        .collect();
    out.push(RingFile {
        name: Some("zero ring on Z2".into()),
        source: RingSource::Zero { n: 2 },
    });
    out.push(RingFile {
        name: Some("2Z/8Z".into()),
        source: RingSource::Ideal { n: 8, generator: 2 },
    });
    out
}

/// Lie test set: simple and solvable examples plus every abelian algebra
/// of dimension 1 to 3 over `F_2`, `F_3`, `F_5`.
pub fn default_lie() -> Vec<LieFile> {
    let sl2 = |p: u32| LieFile {
        name: Some(format!("sl2(F{p})")),
        p,
        dim: 3,
        brackets: vec![(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)],
    };
    let mut out = vec![
        sl2(5),
        sl2(3),
        sl2(7),
        LieFile {
            name: Some("aff1(F5)".into()),
            p: 5,
            dim: 2,
            brackets: vec![(0, 1, 1, 1)],
        },
        LieFile {
            name: Some("aff1+aff1(F3)".into()),
            p: 3,
            dim: 4,
            brackets: vec![(0, 1, 1, 1), (2, 3, 3, 1)],
        },
        LieFile {
            name: Some("heis(F3)".into()),
            p: 3,
            dim: 3,
            brackets: vec![(0, 1, 2, 1)],
        },
        LieFile {
            name: Some("aff1+ab1(F3)".into()),
            p: 3,
            dim: 3,
            brackets: vec![(0, 1, 1, 1)],
        },
    ];
    for p in [2, 3, 5] {
        for dim in 1..=3 {
            out.push(LieFile {
                name: Some(format!("ab{dim}(F{p})")),
                p,
                dim,
                brackets: Vec::new(),
            });
        }
    }
    out
}
