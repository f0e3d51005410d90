//! Acceptance gate. Runs criteria 1 to 11 against the shipped catalog and
//! prints one PASS/FAIL line each; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use complete_core::automorphism::{automorphism_group, conjugation_morphism, relative_classifier};
use complete_core::catalog::{shipped_catalog, Catalog};
use complete_core::commutator::normal_subgroups;
use complete_core::completeness::{
    centerless_char_criterion, char_simple_audit, classify_completeness, decompose_proto_complete, implication_audit,
    one_step_check, Universe,
};
use complete_core::group::{alternating, symmetric, GroupHom, GroupRef, Subgroup};
use complete_core::harness::{baer_check, crosscheck_group, named_examples};
use complete_core::lie::{lie_classify, LieAlgebra};
use complete_core::ring::{ring_classify, unitalization, FiniteRing};
use complete_core::{Error, Limits, Result};
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            passed: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            self.notes.push(note());
        }
    }
}

fn universe(catalog: &Catalog) -> Universe {
    Universe::new("shipped-catalog-24", catalog.group_refs())
}

fn group<'a>(catalog: &'a Catalog, name: &str) -> &'a GroupRef {
    catalog
        .group(name)
        .unwrap_or_else(|| panic!("{name} missing from the catalog"))
}

fn named_suite(_: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let start = Instant::now();
    let entries = named_examples(&Limits::default())?;
    for name in [
        "Z2 is proto-complete but not complete",
        "S3 is strong-complete",
        "Z2xS3 is not proto-complete",
        "Z4 is not proto-complete",
    ] {
        o.require(entries.iter().any(|e| e.object == name), || {
            format!("missing check {name}")
        });
    }
    for e in &entries {
        o.require(e.passed, || format!("{}: {}", e.object, e.detail));
    }
    let t = start.elapsed();
    o.require(t < Duration::from_secs(10), || format!("took {t:?}"));
    Ok(o)
}

fn crosscheck(catalog: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let start = Instant::now();
    let u = universe(catalog);
    let limits = Limits::default();
    let entries: Vec<_> = catalog
        .groups
        .par_iter()
        .map(|r| crosscheck_group(&r.group, &u, 2 * r.group.order(), &limits))
        .collect::<Result<_>>()?;
    o.require(entries.len() == 74, || format!("{} groups checked", entries.len()));
    for e in &entries {
        o.require(e.passed, || format!("{}: {}", e.object, e.detail));
    }
    let t = start.elapsed();
    o.require(t <= Duration::from_secs(300), || format!("took {t:?}"));
    Ok(o)
}

fn baer(catalog: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let limits = Limits::default();
    let mut refuted = Vec::new();
    for r in &catalog.groups {
        let rep = classify_completeness(&r.group, &limits)?;
        if rep.center_order != 1 || rep.out_order == 1 {
            continue;
        }
        let (ok, detail) = baer_check(&r.group, &limits)?;
        o.require(ok, || format!("{} not refuted: {detail}", r.group.name()));
        refuted.push(r.group.name().to_string());
    }
    o.require(refuted.iter().any(|n| n == "D5"), || {
        "D5 not among the checked groups".into()
    });
    o.notes
        .push(format!("{} groups: {}", refuted.len(), refuted.join(", ")));
    Ok(o)
}

fn implications(catalog: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let u = universe(catalog);
    let audits: Vec<_> = catalog
        .groups
        .par_iter()
        .map(|r| {
            let factors: Vec<GroupRef> = r.factors(catalog).into_iter().cloned().collect();
            let bound = 2 * r.group.order();
            let limits = Limits::default().with_cap(512.max(bound * r.group.order()));
            implication_audit(&r.group, bound, &u, &factors, &limits).map(|(_, a)| a)
        })
        .collect::<Result<_>>()?;
    for a in &audits {
        o.require(a.violations.is_empty(), || format!("{}: {:?}", a.object, a.violations));
        o.require(!a.strong || a.complete_bounded, || {
            format!("{}: strong but refuted", a.object)
        });
        o.require(!a.complete_bounded || a.proto, || {
            format!("{}: complete but not proto", a.object)
        });
        o.require(a.strong == (a.proto && a.center_trivial), || {
            format!("{}: strong vs proto and centerless", a.object)
        });
    }
    Ok(o)
}

fn decomposition(catalog: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let limits = Limits::default();
    let mut names = Vec::new();
    for r in &catalog.groups {
        let g = &r.group;
        if !classify_completeness(g, &limits)?.proto_complete.holds {
            continue;
        }
        names.push(g.name().to_string());
        match decompose_proto_complete(g, &limits) {
            Ok(d) => {
                // rebuild through the validating constructor
                let hom = GroupHom::new(g.clone(), d.product.group.clone(), d.iso.images().to_vec());
                o.require(hom.map(|h| h.is_bijective()).unwrap_or(false), || {
                    format!("{}: iso check", g.name())
                });
                let q = classify_completeness(&d.quotient, &limits)?;
                o.require(q.strong_complete.holds, || {
                    format!("{}: quotient not strong-complete", g.name())
                });
                o.require(d.center.order() * d.quotient.order() == g.order(), || {
                    format!("{}: orders", g.name())
                });
            }
            Err(e) => o.require(false, || format!("{}: {e}", g.name())),
        }
    }
    o.notes.push(format!("proto-complete: {}", names.join(", ")));
    Ok(o)
}

fn one_step(catalog: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let limits = Limits::default();
    let mut checked = Vec::new();
    for r in &catalog.groups {
        match one_step_check(&r.group, &limits) {
            Ok((lhs, rhs)) => {
                o.require(lhs == rhs, || format!("{}: lhs {lhs} rhs {rhs}", r.group.name()));
                checked.push(r.group.name().to_string());
            }
            Err(Error::SizeCap { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    for need in ["S3", "S4", "D5", "Z4", "Z2xZ2"] {
        o.require(checked.iter().any(|n| n == need), || format!("{need} skipped"));
    }
    o.notes.push(format!(
        "{} of {} groups fit the cap",
        checked.len(),
        catalog.groups.len()
    ));
    Ok(o)
}

fn centerless_char(catalog: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let limits = Limits::default();
    let mut subgroups = 0;
    for r in &catalog.groups {
        let g = &r.group;
        if classify_completeness(g, &limits)?.center_order != 1 {
            continue;
        }
        for n in normal_subgroups(g) {
            let (direct, criterion) = centerless_char_criterion(g, &n, &limits)?;
            o.require(direct == criterion, || format!("{} {:?}", g.name(), n.elements()));
            subgroups += 1;
        }
    }
    o.notes.push(format!("{subgroups} normal subgroups"));
    Ok(o)
}

fn char_simple(_: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let start = Instant::now();
    let limits = Limits::default();
    let a5: GroupRef = Arc::new(alternating(5, &limits)?.named("A5"));
    match char_simple_audit(&a5, &limits) {
        Ok(rep) => {
            o.require(rep.automorphisms == 120, || {
                format!("|Aut(A5)| = {}", rep.automorphisms)
            });
            o.require(rep.strong_complete, || "Aut(A5) not strong-complete".into());
        }
        Err(e) => o.require(false, || e.to_string()),
    }
    let aut = automorphism_group(&a5, &limits)?;
    let carrier = aut.carrier(&limits)?;
    o.require(classify_completeness(&carrier, &limits)?.strong_complete.holds, || {
        "carrier classify".into()
    });
    let t = start.elapsed();
    o.require(t <= Duration::from_secs(600), || format!("took {t:?}"));
    Ok(o)
}

fn normal_of_order(g: &GroupRef, order: usize) -> Subgroup {
    let mut found: Vec<Subgroup> = normal_subgroups(g).into_iter().filter(|n| n.order() == order).collect();
    assert_eq!(
        found.len(),
        1,
        "{} has {} normal subgroups of order {order}",
        g.name(),
        found.len()
    );
    found.remove(0)
}

fn relative(catalog: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let limits = Limits::default();
    let s4 = group(catalog, "S4");
    let rc = relative_classifier(s4, &normal_of_order(s4, 12), &limits)?;
    o.require(rc.q1.is_injective(), || "[A4,S4]: q1 not injective".into());
    let s3: GroupRef = Arc::new(symmetric(3, &limits)?);
    let rc = relative_classifier(&s3, &normal_of_order(&s3, 3), &limits)?;
    o.require(!rc.q1.is_injective(), || "[A3,S3]: q1 injective".into());
    for name in ["S3", "S4", "D5"] {
        let g = group(catalog, name);
        let c = conjugation_morphism(&*automorphism_group(g, &limits)?, &limits)?;
        let rc = relative_classifier(c.codomain(), &c.image_subgroup(), &limits)?;
        o.require(rc.q1.is_bijective(), || {
            format!("[{name},Aut({name})]: q1 not bijective")
        });
    }
    Ok(o)
}

fn rings(_: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    for n in 1..=12 {
        let rep = ring_classify(&FiniteRing::integers_mod(n))?;
        o.require(rep.complete && rep.has_unit, || format!("Z/{n} not complete"));
    }
    for r in [FiniteRing::zero_ring(2), FiniteRing::ideal(8, 2)?] {
        let rep = ring_classify(&r)?;
        let u = unitalization(&r);
        o.require(!rep.complete && rep.retractions.is_empty(), || {
            format!("{} not refuted", r.name())
        });
        o.require(
            u.ring.order() == rep.unitalization_order && u.ring.unit().is_some(),
            || format!("{}: unitalization witness", r.name()),
        );
    }
    Ok(o)
}

fn lie(catalog: &Catalog) -> Result<Outcome> {
    let mut o = Outcome::new();
    let start = Instant::now();
    let limits = Limits::default();
    for l in [LieAlgebra::sl2(5)?, LieAlgebra::affine_line(5)?] {
        let rep = lie_classify(&l, &limits)?;
        o.require(rep.strong_complete, || format!("{} not strong-complete", l.name()));
    }
    for p in [2, 3, 5] {
        for d in 1..=3 {
            let rep = lie_classify(&LieAlgebra::abelian(p, d)?, &limits)?;
            o.require(!rep.proto_complete, || format!("{} proto-complete", rep.object));
        }
    }
    let mut perfect = Vec::new();
    for l in &catalog.lie {
        let rep = lie_classify(l, &limits)?;
        if rep.perfect && rep.center_dim == 0 {
            perfect.push(l.name().to_string());
            o.require(rep.derivations_strong_complete == Some(true), || {
                format!("Der({}) not strong-complete", l.name())
            });
        }
    }
    o.require(!perfect.is_empty(), || {
        "no perfect centerless algebra in the test set".into()
    });
    o.notes.push(format!("perfect centerless: {}", perfect.join(", ")));
    let t = start.elapsed();
    o.require(t < Duration::from_secs(30), || format!("took {t:?}"));
    Ok(o)
}

type Criterion = fn(&Catalog) -> Result<Outcome>;

fn main() -> ExitCode {
    let catalog = shipped_catalog(&Limits::default()).expect("shipped catalog loads");
    let criteria: [(&str, Criterion); 11] = [
        ("named examples", named_suite),
        ("classifier agrees with oracles at bound 2|G|", crosscheck),
        ("centerless groups with outer automorphisms are not complete", baer),
        ("implication chain at bound 2|G|", implications),
        ("proto-complete decomposition", decomposition),
        ("one-step criterion", one_step),
        ("characteristic subgroups of centerless groups", centerless_char),
        ("Aut(A5) is strong-complete", char_simple),
        ("relative classifiers", relative),
        ("rings", rings),
        ("Lie algebras", lie),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&catalog).unwrap_or_else(|e| Outcome {
            passed: false,
            notes: vec![format!("error: {e}")],
        });
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name} ({:.2?})", i + 1, start.elapsed());
        for n in &outcome.notes {
            println!("        {n}");
        }
        failed += usize::from(!outcome.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
