//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use std::sync::Arc;

use complete_core::automorphism::automorphism_group;
use complete_core::catalog::{shipped_catalog, Catalog};
use complete_core::commutator::{normal_subgroups, subgroup_verdict_with};
use complete_core::completeness::{classify_with, decompose_proto_complete, oracle_completeness, OracleMode, Universe};
use complete_core::group::{alternating, dicyclic, dihedral, symmetric, FiniteGroup, GroupRef};
use complete_core::lie::{lie_classify, LieAlgebra};
use complete_core::ring::{ring_classify, FiniteRing};
use complete_core::{Error, Limits, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest group the page will draw and analyse.
const DEMO_CAP: usize = 120;
/// Groups up to this order also get the bounded completeness oracle.
const ORACLE_ORDER: usize = 12;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn catalog() -> Result<Catalog> {
    shipped_catalog(&Limits::default())
}

/// `Z7`, `D5`, `Dic12`, `S4`, `A5`, or any name in the shipped catalog.
fn parse_group(name: &str, catalog: &Catalog) -> Result<GroupRef> {
    if let Some(g) = catalog.group(name) {
        return Ok(g.clone());
    }
    let bad = || Error::ConfigInvalid(format!("unknown group {name}"));
    let split = name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (family, n) = name.split_at(split);
    let n: usize = n.parse().map_err(|_| bad())?;
    let limits = Limits::default().with_cap(DEMO_CAP);
    let g = match family {
        "Z" if n >= 1 => FiniteGroup::cyclic(n),
        "D" if n >= 1 => dihedral(n),
        "Dic" if n >= 4 && n.is_multiple_of(4) => dicyclic(n / 4),
        "S" => symmetric(n, &limits)?,
        "A" => alternating(n, &limits)?,
        _ => return Err(bad()),
    };
    limits.check_order(g.order())?;
    Ok(Arc::new(g))
}

#[wasm_bindgen]
pub fn catalog_names() -> String {
    respond(catalog().map(|c| json!(c.groups.iter().map(|r| r.group.name().to_string()).collect::<Vec<_>>())))
}

/// Cayley table, completeness report and the normal subgroup lattice of a group.
#[wasm_bindgen]
pub fn classify_group(name: &str) -> String {
    respond(group_value(name.trim()))
}

fn group_value(name: &str) -> Result<Value> {
    let catalog = catalog()?;
    let g = parse_group(name, &catalog)?;
    let limits = Limits::default();
    let aut = automorphism_group(&g, &limits)?;
    let mut report = classify_with(&g, &aut, &limits)?;
    if report.proto_complete.holds {
        report.decomposition = Some(decompose_proto_complete(&g, &limits)?.record());
    }
    if g.order() <= ORACLE_ORDER {
        let universe = Universe::new("shipped-catalog-24", catalog.group_refs());
        report.complete_bounded = Some(oracle_completeness(&g, OracleMode::Complete, 2, &universe, &limits)?.verdict());
    }
    let subgroups = normal_subgroups(&g)
        .iter()
        .map(|s| {
            let v = subgroup_verdict_with(&g, s, &aut, &limits)?;
            Ok(json!({
                "elements": s.elements(),
                "characteristic": v.is_characteristic,
                "split": v.split_retraction.is_some(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "name": g.name(),
        "table": g.rows(),
        "report": report,
        "normal_subgroups": subgroups,
    }))
}

/// `kind` is `integers` (Z/n), `zero` (zero product on Z/n) or `ideal`
/// (the ideal generated by `generator` in Z/n).
#[wasm_bindgen]
pub fn classify_ring(kind: &str, n: u32, generator: u32) -> String {
    respond(ring_value(kind, n as usize, generator as usize))
}

fn ring_value(kind: &str, n: usize, generator: usize) -> Result<Value> {
    if n == 0 || n > DEMO_CAP {
        return Err(Error::RingInvalid(format!("order {n} outside 1..={DEMO_CAP}")));
    }
    let r = match kind {
        "integers" => FiniteRing::integers_mod(n),
        "zero" => FiniteRing::zero_ring(n),
        "ideal" => FiniteRing::ideal(n, generator)?,
        other => return Err(Error::RingInvalid(format!("unknown ring kind {other}"))),
    };
    Ok(json!({ "table": r.mul_table(), "report": ring_classify(&r)? }))
}

/// `brackets` is a JSON list of `[i, j, k, c]`, meaning `[e_i, e_j]` has
/// coefficient `c` on `e_k`.
#[wasm_bindgen]
pub fn classify_lie(p: u32, dim: u32, brackets: &str) -> String {
    respond(lie_value(p, dim as usize, brackets))
}

fn lie_value(p: u32, dim: usize, brackets: &str) -> Result<Value> {
    let list: Vec<(usize, usize, usize, i64)> =
        serde_json::from_str(brackets).map_err(|e| Error::LieInvalid(format!("brackets: {e}")))?;
    if dim == 0 || dim > 8 {
        return Err(Error::LieInvalid(format!("dimension {dim} outside 1..=8")));
    }
    let l = LieAlgebra::from_brackets(p, dim, &list, "custom")?;
    Ok(json!({ "report": lie_classify(&l, &Limits::default())? }))
}
