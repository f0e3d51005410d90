//! Batch driver behind the command line tool: loads a catalog, runs one of
//! the report modes per object and merges the results in catalog order.

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::automorphism::{automorphism_group, conjugation_morphism};
use crate::catalog::{
    build_closure, default_lie, default_rings, shipped_catalog_file, Catalog, CatalogFile, Expect, Recipe, SCHEMA,
};
use crate::commutator::{center, normal_subgroups, subgroup_verdict};
use crate::completeness::{
    centerless_char_criterion, char_simple_audit, classify_completeness, decompose_proto_complete, implication_audit,
    one_step_check, oracle_completeness, OracleMode, Universe, Witness,
};
use crate::error::{Error, Result};
use crate::group::{alternating, direct_product, FiniteGroup, GroupRef, Subgroup};
use crate::lie::{lie_classify, LieAlgebra};
use crate::limits::Limits;
use crate::ring::{ring_classify, FiniteRing};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Classify,
    Audit,
    OracleCrosscheck,
    #[serde(rename = "paper-examples")]
    NamedExamples,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "classify" => Ok(Mode::Classify),
            "audit" => Ok(Mode::Audit),
            "oracle-crosscheck" => Ok(Mode::OracleCrosscheck),
            "paper-examples" => Ok(Mode::NamedExamples),
            other => Err(Error::ConfigInvalid(format!("unknown mode {other}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    /// `None` selects the shipped catalog.
    pub catalog: Option<PathBuf>,
    pub mode: Mode,
    /// Oracle bound; defaults to `2·|G|` per group.
    pub bound: Option<usize>,
    /// Catalog file whose groups form the oracle universe; defaults to the
    /// catalog being reported on.
    pub universe: Option<PathBuf>,
    pub budget: Option<u64>,
    pub jobs: Option<usize>,
    pub cap: Option<usize>,
}

impl Config {
    pub fn new(mode: Mode) -> Config {
        Config {
            catalog: None,
            mode,
            bound: None,
            universe: None,
            budget: None,
            jobs: None,
            cap: None,
        }
    }

    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(c) = self.cap {
            l = l.with_cap(c);
        }
        if let Some(b) = self.budget {
            l = l.with_budget(b);
        }
        l
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub object: String,
    pub kind: String,
    pub passed: bool,
    pub detail: Value,
}

impl Entry {
    fn new(object: impl Into<String>, kind: &str, passed: bool, detail: Value) -> Entry {
        Entry {
            object: object.into(),
            kind: kind.into(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub mode: Mode,
    pub bound: Option<usize>,
    pub universe: String,
    pub element_cap: usize,
    pub search_budget: u64,
    pub entries: Vec<Entry>,
    pub failures: usize,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn read_catalog(path: &PathBuf) -> Result<CatalogFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ConfigInvalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::ConfigInvalid(format!("{}: {e}", path.display())))
}

/// Runs the configured mode; `failures > 0` means some asserted instance failed.
pub fn run_report(config: &Config) -> Result<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        if j == 0 {
            return Err(Error::ConfigInvalid("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::ConfigInvalid(format!("thread pool: {e}")))?;
    pool.install(|| run_inner(config))
}

fn run_inner(config: &Config) -> Result<Report> {
    let limits = config.limits();
    let (file, default_id) = match &config.catalog {
        Some(p) => (read_catalog(p)?, format!("catalog:{}", file_label(p))),
        None => (shipped_catalog_file(), "shipped-catalog-24".to_string()),
    };
    let catalog = Catalog::load(&file, &limits)?;
    let universe = match &config.universe {
        Some(p) => Universe::new(
            format!("catalog:{}", file_label(p)),
            Catalog::load(&read_catalog(p)?, &limits)?.group_refs(),
        ),
        None => Universe::new(default_id, catalog.group_refs()),
    };
    let entries = match config.mode {
        Mode::Classify => classify_mode(&catalog, &limits)?,
        Mode::Audit => audit_mode(&catalog, &universe, config.bound, &limits)?,
        Mode::OracleCrosscheck => crosscheck_mode(&catalog, &universe, config.bound, &limits)?,
        Mode::NamedExamples => named_examples(&limits)?,
    };
    let failures = entries.iter().filter(|e| !e.passed).count();
    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        mode: config.mode,
        bound: config.bound,
        universe: universe.id,
        element_cap: limits.element_cap,
        search_budget: limits.search_budget,
        entries,
        failures,
    })
}

fn file_label(p: &std::path::Path) -> String {
    p.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn classify_mode(catalog: &Catalog, limits: &Limits) -> Result<Vec<Entry>> {
    let mut out: Vec<Entry> = catalog
        .groups
        .par_iter()
        .map(|r| {
            let g = &r.group;
            let mut rep = classify_completeness(g, limits).map_err(|e| e.within(g.name()))?;
            if rep.proto_complete.holds {
                let d = decompose_proto_complete(g, limits).map_err(|e| e.within(g.name()))?;
                rep.decomposition = Some(d.record());
            }
            let mut mismatches = Vec::new();
            if let Some(e) = &r.entry.expect {
                let pins = [
                    ("center_order", e.center_order.map(|v| v == rep.center_order)),
                    (
                        "proto_complete",
                        e.proto_complete.map(|v| v == rep.proto_complete.holds),
                    ),
                    (
                        "strong_complete",
                        e.strong_complete.map(|v| v == rep.strong_complete.holds),
                    ),
                ];
                mismatches.extend(
                    pins.iter()
                        .filter(|(_, ok)| *ok == Some(false))
                        .map(|(k, _)| k.to_string()),
                );
            }
            let mut detail = to_value(&rep);
            detail["expect_mismatches"] = json!(mismatches);
            Ok(Entry::new(g.name(), "group", mismatches.is_empty(), detail))
        })
        .collect::<Result<_>>()?;
    out.extend(ring_entries(&catalog.rings)?);
    out.extend(lie_entries(&catalog.lie, limits)?);
    Ok(out)
}

fn ring_entries(rings: &[FiniteRing]) -> Result<Vec<Entry>> {
    rings
        .iter()
        .map(|r| {
            let rep = ring_classify(r).map_err(|e| e.within(r.name()))?;
            Ok(Entry::new(r.name(), "ring", true, to_value(&rep)))
        })
        .collect()
}

fn lie_entries(algebras: &[LieAlgebra], limits: &Limits) -> Result<Vec<Entry>> {
    algebras
        .iter()
        .map(|l| {
            let rep = lie_classify(l, limits).map_err(|e| e.within(l.name()))?;
            Ok(Entry::new(l.name(), "lie", true, to_value(&rep)))
        })
        .collect()
}

/// Baer at desk scale: for centerless `G` with `Out(G) ≠ 1`, the complete
/// oracle over `{Aut(G)}` must refute with image `Inn(G)`.
pub fn baer_check(g: &GroupRef, limits: &Limits) -> Result<(bool, Value)> {
    let aut = automorphism_group(g, limits)?;
    let c = conjugation_morphism(&aut, limits)?;
    let carrier = c.codomain().clone();
    let bound = carrier.order().div_ceil(g.order());
    let lim = limits.with_cap(limits.element_cap.max(bound * g.order()));
    let u = Universe::new(format!("{{{}}}", carrier.name()), vec![carrier.clone()]);
    let o = oracle_completeness(g, OracleMode::Complete, bound, &u, &lim)?;
    let inn = c.image_subgroup();
    let ok = match &o.witness {
        Some(w) => {
            matches!(w.record, Witness::Embedding { .. })
                && w.monomorphism.image_subgroup() == inn
                && crate::group::left_inverses(&w.monomorphism, 1, &lim)?.is_empty()
        }
        None => false,
    };
    Ok((!o.holds && ok, to_value(&o.verdict())))
}

fn audit_mode(catalog: &Catalog, universe: &Universe, bound: Option<usize>, limits: &Limits) -> Result<Vec<Entry>> {
    let mut out: Vec<Entry> = catalog
        .groups
        .par_iter()
        .map(|r| {
            audit_group(catalog, r, universe, bound.unwrap_or(2 * r.group.order()), limits)
                .map_err(|e| e.within(r.group.name()))
        })
        .collect::<Result<Vec<Vec<Entry>>>>()?
        .into_iter()
        .flatten()
        .collect();
    out.extend(ring_entries(&catalog.rings)?);
    out.extend(lie_entries(&catalog.lie, limits)?);
    Ok(out)
}

fn audit_group(
    catalog: &Catalog,
    r: &crate::catalog::ResolvedGroup,
    universe: &Universe,
    bound: usize,
    limits: &Limits,
) -> Result<Vec<Entry>> {
    let g = &r.group;
    let factors: Vec<GroupRef> = r.factors(catalog).into_iter().cloned().collect();
    let lim = limits.with_cap(limits.element_cap.max(bound * g.order()));
    let (rep, audit) = implication_audit(g, bound, universe, &factors, &lim)?;
    let mut out = vec![Entry::new(
        g.name(),
        "implication",
        audit.violations.is_empty(),
        to_value(&audit),
    )];
    if rep.proto_complete.holds {
        let d = decompose_proto_complete(g, limits)?;
        out.push(Entry::new(g.name(), "decomposition", true, to_value(&d.record())));
    }
    match one_step_check(g, limits) {
        Ok((lhs, rhs)) => out.push(Entry::new(
            g.name(),
            "one_step",
            lhs == rhs,
            json!({"lhs": lhs, "rhs": rhs}),
        )),
        Err(Error::SizeCap { order, cap }) => out.push(Entry::new(
            g.name(),
            "one_step",
            true,
            json!({"skipped": format!("order {order} exceeds cap {cap}")}),
        )),
        Err(e) => return Err(e),
    }
    if rep.center_order == 1 {
        let mut mismatched = Vec::new();
        for n in normal_subgroups(g) {
            let (direct, criterion) = centerless_char_criterion(g, &n, limits)?;
            if direct != criterion {
                mismatched.push(n.elements().to_vec());
            }
        }
        out.push(Entry::new(
            g.name(),
            "centerless_char",
            mismatched.is_empty(),
            json!({"mismatches": mismatched}),
        ));
        if rep.out_order > 1 {
            let (ok, v) = baer_check(g, limits)?;
            out.push(Entry::new(g.name(), "baer", ok, v));
        }
    }
    Ok(out)
}

/// Per group: theorem-side proto/strong against the oracles with cokernel
/// bound `bound` (default `2·|G|`), the element cap raised to `bound·|G|`.
fn crosscheck_mode(
    catalog: &Catalog,
    universe: &Universe,
    bound: Option<usize>,
    limits: &Limits,
) -> Result<Vec<Entry>> {
    catalog
        .groups
        .iter()
        .map(|r| {
            let g = &r.group;
            crosscheck_group(g, universe, bound.unwrap_or(2 * g.order()), limits).map_err(|e| e.within(g.name()))
        })
        .collect()
}

pub fn crosscheck_group(g: &GroupRef, universe: &Universe, bound: usize, limits: &Limits) -> Result<Entry> {
    let lim = limits.with_cap(limits.element_cap.max(bound * g.order()));
    let rep = classify_completeness(g, &lim)?;
    let proto = oracle_completeness(g, OracleMode::Proto, bound, universe, &lim)?;
    let strong = oracle_completeness(g, OracleMode::Strong, bound, universe, &lim)?;
    let agree = proto.holds == rep.proto_complete.holds && strong.holds == rep.strong_complete.holds;
    Ok(Entry::new(
        g.name(),
        "crosscheck",
        agree,
        json!({
            "bound": bound,
            "theorem": {"proto": rep.proto_complete.holds, "strong": rep.strong_complete.holds},
            "oracle": {"proto": to_value(&proto.verdict()), "strong": to_value(&strong.verdict())},
        }),
    ))
}

fn check(name: &str, passed: bool, detail: Value) -> Entry {
    Entry::new(name, "check", passed, detail)
}

/// The named group, ring and Lie examples.
pub fn named_examples(limits: &Limits) -> Result<Vec<Entry>> {
    let z = |n: usize| -> GroupRef { Arc::new(FiniteGroup::cyclic(n)) };
    let s3: GroupRef = Arc::new(crate::group::symmetric(3, limits)?.named("S3"));
    let z2s3 = direct_product(&z(2), &s3, limits)?.group;
    let mut out = Vec::new();

    let r = classify_completeness(&z(2), limits)?;
    let u = Universe::new("{Z4}", vec![z(4)]);
    let o = oracle_completeness(&z(2), OracleMode::Complete, 2, &u, limits)?;
    let witness_ok = matches!(
        &o.witness.as_ref().map(|w| &w.record),
        Some(Witness::Embedding { target, image }) if target == "Z4" && image == &vec![0, 2]
    );
    out.push(check(
        "Z2 is proto-complete but not complete",
        r.proto_complete.holds && !r.strong_complete.holds && !o.holds && witness_ok,
        json!({"proto": r.proto_complete.holds, "strong": r.strong_complete.holds, "complete_bounded": to_value(&o.verdict())}),
    ));

    let aut = automorphism_group(&z(2), limits)?;
    out.push(check(
        "Aut(Z2) is trivial",
        aut.is_trivial(),
        json!({"order": aut.order()}),
    ));

    let r = classify_completeness(&s3, limits)?;
    let c_bij = conjugation_morphism(&*automorphism_group(&s3, limits)?, limits)?.is_bijective();
    out.push(check(
        "S3 is strong-complete",
        r.strong_complete.holds && c_bij,
        json!({"c_bijective": c_bij, "report": to_value(&r)}),
    ));

    let r = classify_completeness(&z2s3, limits)?;
    let dec = decompose_proto_complete(&z2s3, limits);
    out.push(check(
        "Z2xS3 is not proto-complete",
        !r.proto_complete.holds && dec.as_ref().err() == Some(&Error::NotProtoComplete),
        json!({"center_order": r.center_order, "proto": r.proto_complete.holds}),
    ));

    let r = classify_completeness(&z(4), limits)?;
    out.push(check(
        "Z4 is not proto-complete",
        !r.proto_complete.holds,
        to_value(&r.proto_complete),
    ));

    let s = Subgroup::new(z(4), vec![0, 2])?;
    let v = subgroup_verdict(&z(4), &s, limits)?;
    out.push(check(
        "Z2 in Z4 is normal but not split",
        v.is_normal && v.is_characteristic && v.split_retraction.is_none(),
        json!({"normal": v.is_normal, "characteristic": v.is_characteristic, "split": v.split_retraction.is_some()}),
    ));

    let a5: GroupRef = Arc::new(alternating(5, limits)?.named("A5"));
    let rep = char_simple_audit(&a5, limits)?;
    out.push(check(
        "Aut(A5) is strong-complete",
        rep.strong_complete && rep.automorphisms == 120,
        to_value(&rep),
    ));

    for (name, ring, unital) in [
        ("Z/4 is complete", FiniteRing::integers_mod(4), true),
        ("zero ring on Z2 is not complete", FiniteRing::zero_ring(2), false),
        ("2Z/8Z is not complete", FiniteRing::ideal(8, 2)?, false),
    ] {
        let rep = ring_classify(&ring)?;
        out.push(check(
            name,
            rep.complete == unital && rep.has_unit == unital,
            to_value(&rep),
        ));
    }

    let rep = lie_classify(&LieAlgebra::sl2(5)?, limits)?;
    out.push(check(
        "sl2(F5) is strong-complete with strong-complete derivations",
        rep.strong_complete && rep.derivations_strong_complete == Some(true),
        to_value(&rep),
    ));
    let rep = lie_classify(&LieAlgebra::abelian(5, 1)?, limits)?;
    out.push(check(
        "abelian F5 is not proto-complete",
        !rep.proto_complete,
        to_value(&rep),
    ));

    let z2 = classify_completeness(&z(2), limits)?;
    let z1 = center(&z(1));
    out.push(check(
        "Z2 is the only nonzero abelian proto-complete group of order at most 8",
        {
            let mut ok = z2.proto_complete.holds && z1.is_trivial();
            let v = direct_product(&z(2), &z(2), limits)?.group;
            let z4z2 = direct_product(&z(4), &z(2), limits)?.group;
            let z2z2z2 = direct_product(&v, &z(2), limits)?.group;
            for g in [z(3), z(4), v, z(5), z(6), z(7), z(8), z4z2, z2z2z2] {
                ok &= !classify_completeness(&g, limits)?.proto_complete.holds;
            }
            ok
        },
        Value::Null,
    ));
    Ok(out)
}

const ALIASES: [(&str, &str); 3] = [("Dic4", "Q16"), ("Z5:Z4", "F20"), ("Q8:Z3", "SL(2,3)")];

/// Rebuilds the shipped catalog: closure to order 24 with pinned facts,
/// plus the ring and Lie test sets.
pub fn build_catalog_file(limits: &Limits) -> Result<CatalogFile> {
    let mut entries = build_closure(24, limits)?;
    let rename = |n: &str| {
        ALIASES
            .iter()
            .find(|(a, _)| *a == n)
            .map(|(_, b)| b.to_string())
            .unwrap_or(n.to_string())
    };
    for e in &mut entries {
        e.name = rename(&e.name);
        match &mut e.recipe {
            Recipe::Product(a, b) => {
                *a = rename(a);
                *b = rename(b);
            }
            Recipe::Semidirect { kernel, acting, .. } => {
                *kernel = rename(kernel);
                *acting = rename(acting);
            }
            _ => {}
        }
    }
    let mut file = CatalogFile {
        schema: SCHEMA,
        groups: entries,
        rings: default_rings(),
        lie: default_lie(),
    };
    let catalog = Catalog::load(&file, limits)?;
    let expects: Vec<Expect> = catalog
        .groups
        .par_iter()
        .map(|r| {
            let rep = classify_completeness(&r.group, limits)?;
            Ok(Expect {
                order: Some(rep.order),
                center_order: Some(rep.center_order),
                proto_complete: Some(rep.proto_complete.holds),
                strong_complete: Some(rep.strong_complete.holds),
            })
        })
        .collect::<Result<_>>()?;
    for (e, x) in file.groups.iter_mut().zip(expects) {
        e.expect = Some(x);
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_catalog_gives_empty_report() {
        let dir = std::env::temp_dir().join(format!("complete-empty-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.json");
        std::fs::write(&path, r#"{"schema":1}"#).unwrap();
        let mut cfg = Config::new(Mode::Classify);
        cfg.catalog = Some(path);
        let rep = run_report(&cfg).unwrap();
        assert!(rep.entries.is_empty());
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn bound_one_crosscheck_on_s3() {
        let s3: GroupRef = Arc::new(crate::group::symmetric(3, &Limits::default()).unwrap());
        let u = Universe::new(
            "tiny",
            vec![Arc::new(FiniteGroup::trivial()), Arc::new(FiniteGroup::cyclic(2))],
        );
        let e = crosscheck_group(&s3, &u, 1, &Limits::default()).unwrap();
        assert!(e.passed);
    }

    #[test]
    fn mode_names() {
        assert_eq!("paper-examples".parse::<Mode>().unwrap(), Mode::NamedExamples);
        assert!("nope".parse::<Mode>().is_err());
        assert_eq!(
            serde_json::to_string(&Mode::OracleCrosscheck).unwrap(),
            "\"oracle-crosscheck\""
        );
        assert_eq!(
            serde_json::to_string(&Mode::NamedExamples).unwrap(),
            "\"paper-examples\""
        );
    }

    #[test]
    fn shipped_catalog_matches_the_closure() {
        let l = Limits::default();
        let rebuilt = build_catalog_file(&l).unwrap();
        assert_eq!(rebuilt, shipped_catalog_file());
        let groups = Catalog::load(&rebuilt, &l).unwrap().group_refs();
        assert_eq!(groups.len(), 74);
        for (i, g) in groups.iter().enumerate() {
            for h in &groups[..i] {
                assert!(
                    crate::group::is_isomorphic(g, h, &l).unwrap().is_none(),
                    "{} ~ {}",
                    g.name(),
                    h.name()
                );
            }
        }
    }

    #[test]
    fn named_examples_pass() {
        let entries = named_examples(&Limits::default()).unwrap();
        for e in &entries {
            assert!(e.passed, "{}", e.object);
        }
    }
}
