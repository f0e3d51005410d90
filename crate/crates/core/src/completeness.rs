//! Completeness verdicts for finite groups.
//!
//! Two independent routes: criteria on `c_G: G → Aut(G)` (split epimorphism
//! for proto-complete, bijection for strong-complete) and bounded oracles
//! that quantify directly over split extensions and normal embeddings
//! drawn from an explicit universe.

use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::{automorphism_group, conjugation_morphism, AutomorphismGroup};
use crate::commutator::{center, is_characteristic, normal_subgroups, split_retraction};
use crate::error::{Error, Result};
use crate::extension::{normal_embeddings_into, semidirect_product, ExtensionRecord, GroupAction};
use crate::group::{
    direct_product, for_each_hom, left_inverses, pairing, quotient, right_inverses, DirectProduct, GroupHom, GroupRef,
    Subgroup,
};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flagged<E> {
    pub holds: bool,
    pub evidence: E,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProtoEvidence {
    /// `s: Aut(G) → G` with `c_G ∘ s = id`, indexed by automorphism.
    Section {
        images: Vec<usize>,
    },
    NotSurjective {
        inner: usize,
        automorphisms: usize,
    },
    NoSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongEvidence {
    pub c_injective: bool,
    pub c_surjective: bool,
    pub center_trivial: bool,
    pub out_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A normal embedding with no retraction.
    Embedding { target: String, image: Vec<usize> },
    /// A split extension whose kernel has no retraction
    /// (`retractions = 0`) or more than one (`retractions = 2`).
    Extension {
        extension: ExtensionRecord,
        retractions: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedVerdict {
    pub holds: bool,
    pub bound: usize,
    pub universe: String,
    pub label: String,
    pub checked: usize,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionRecord {
    pub center: Vec<usize>,
    pub quotient: String,
    pub quotient_order: usize,
    pub iso: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub object: String,
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub automorphisms: usize,
    pub inner: usize,
    pub out_order: usize,
    pub proto_complete: Flagged<ProtoEvidence>,
    pub strong_complete: Flagged<StrongEvidence>,
    pub complete_bounded: Option<BoundedVerdict>,
    pub decomposition: Option<DecompositionRecord>,
}

pub fn classify_completeness(g: &GroupRef, limits: &Limits) -> Result<ClassificationReport> {
    let aut = automorphism_group(g, limits)?;
    classify_with(g, &aut, limits)
}

pub fn classify_with(g: &GroupRef, aut: &Arc<AutomorphismGroup>, limits: &Limits) -> Result<ClassificationReport> {
    let conj = aut.conjugation_indices();
    let inner = aut.inner_indices().len();
    let z = center(g);
    let kernel: Vec<usize> = g.elements().filter(|&x| conj[x] == 0).collect();
    if kernel != z.elements() {
        return Err(Error::Violation(format!(
            "kernel of c differs from the center of {}",
            g.name()
        )));
    }
    let c_injective = inner == g.order();
    let c_surjective = inner == aut.order();
    let proto = if !c_surjective {
        Flagged {
            holds: false,
            evidence: ProtoEvidence::NotSurjective {
                inner,
                automorphisms: aut.order(),
            },
        }
    } else {
        let c = conjugation_morphism(aut, limits)?;
        match right_inverses(&c, 1, limits)?.into_iter().next() {
            Some(s) => Flagged {
                holds: true,
                evidence: ProtoEvidence::Section {
                    images: s.images().to_vec(),
                },
            },
            None => Flagged {
                holds: false,
                evidence: ProtoEvidence::NoSection,
            },
        }
    };
    let strong = StrongEvidence {
        c_injective,
        c_surjective,
        center_trivial: z.is_trivial(),
        out_trivial: c_surjective,
    };
    let holds = c_injective && c_surjective;
    if holds != (strong.center_trivial && strong.out_trivial) {
        return Err(Error::Violation(
            "c bijective disagrees with trivial center and Out".into(),
        ));
    }
    Ok(ClassificationReport {
        object: g.name().to_string(),
        order: g.order(),
        abelian: g.is_abelian(),
        center_order: z.order(),
        automorphisms: aut.order(),
        inner,
        out_order: aut.order() / inner,
        proto_complete: proto,
        strong_complete: Flagged {
            holds,
            evidence: strong,
        },
        complete_bounded: None,
        decomposition: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    Proto,
    Strong,
    Complete,
}

/// A named list of groups over which the oracles quantify.
#[derive(Debug, Clone)]
pub struct Universe {
    pub id: String,
    pub groups: Vec<GroupRef>,
}

impl Universe {
    pub fn new(id: impl Into<String>, groups: Vec<GroupRef>) -> Universe {
        Universe { id: id.into(), groups }
    }
}

#[derive(Debug, Clone)]
pub struct OracleWitness {
    /// The monomorphism with domain `G` that fails to split (uniquely).
    pub monomorphism: GroupHom,
    pub record: Witness,
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub mode: OracleMode,
    pub holds: bool,
    pub bound: usize,
    pub universe: String,
    pub checked: usize,
    pub witness: Option<OracleWitness>,
}

impl OracleOutcome {
    pub fn verdict(&self) -> BoundedVerdict {
        let label = if self.holds {
            format!("no witness found <= {}", self.bound)
        } else {
            "refuted".to_string()
        };
        BoundedVerdict {
            holds: self.holds,
            bound: self.bound,
            universe: self.universe.clone(),
            label,
            checked: self.checked,
            witness: self.witness.as_ref().map(|w| w.record.clone()),
        }
    }
}

const BATCH: usize = 256;

/// Definition-level bounded check.
///
/// `proto`/`strong`: every split extension `G → A → B` with `B` in the
/// universe and `|B| ≤ bound` has a (unique) retraction of `κ`.
/// `complete`: every normal embedding into a universe member of order
/// `≤ bound·|G|` splits, and so does every `κ` as above.
pub fn oracle_completeness(
    g: &GroupRef,
    mode: OracleMode,
    bound: usize,
    universe: &Universe,
    limits: &Limits,
) -> Result<OracleOutcome> {
    limits.check_order(bound.saturating_mul(g.order()))?;
    let mut outcome = OracleOutcome {
        mode,
        holds: true,
        bound,
        universe: universe.id.clone(),
        checked: 0,
        witness: None,
    };
    if mode == OracleMode::Complete {
        let reach = bound * g.order();
        for y in universe.groups.iter().filter(|y| y.order() <= reach) {
            for emb in normal_embeddings_into(g, y, limits)? {
                outcome.checked += 1;
                if left_inverses(&emb.embedding, 1, limits)?.is_empty() {
                    let image = emb.embedding.image_subgroup().elements().to_vec();
                    outcome.holds = false;
                    outcome.witness = Some(OracleWitness {
                        monomorphism: emb.embedding,
                        record: Witness::Embedding {
                            target: y.name().to_string(),
                            image,
                        },
                    });
                    return Ok(outcome);
                }
            }
        }
    }
    let need = if mode == OracleMode::Strong { 2 } else { 1 };
    let aut = automorphism_group(g, limits)?;
    for b in universe.groups.iter().filter(|b| b.order() <= bound) {
        let mut batch: Vec<Vec<usize>> = Vec::with_capacity(BATCH);
        let mut failure: Option<Result<(usize, OracleWitness)>> = None;
        let run_batch = |batch: &mut Vec<Vec<usize>>, checked: &mut usize| -> Option<Result<(usize, OracleWitness)>> {
            let found = batch.par_iter().enumerate().find_map_first(|(i, act)| {
                match check_action(&aut, b, act, need, limits) {
                    Ok(None) => None,
                    Ok(Some(w)) => Some(Ok((i, w))),
                    Err(e) => Some(Err(e)),
                }
            });
            let len = batch.len();
            batch.clear();
            match found {
                None => {
                    *checked += len;
                    None
                }
                Some(Ok((i, w))) => {
                    *checked += i + 1;
                    Some(Ok((i, w)))
                }
                Some(Err(e)) => Some(Err(e)),
            }
        };
        let mut checked = 0usize;
        for_each_hom(b, &*aut, limits, |img| {
            batch.push(img.to_vec());
            if batch.len() == BATCH {
                if let Some(f) = run_batch(&mut batch, &mut checked) {
                    failure = Some(f);
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })?;
        if failure.is_none() && !batch.is_empty() {
            failure = run_batch(&mut batch, &mut checked);
        }
        outcome.checked += checked;
        if let Some(f) = failure {
            let (_, w) = f?;
            outcome.holds = false;
            outcome.witness = Some(w);
            return Ok(outcome);
        }
    }
    Ok(outcome)
}

fn check_action(
    aut: &Arc<AutomorphismGroup>,
    b: &GroupRef,
    act: &[usize],
    need: usize,
    limits: &Limits,
) -> Result<Option<OracleWitness>> {
    let action = GroupAction::new_unchecked(b.clone(), aut.clone(), act.to_vec());
    let e = semidirect_product(&action, limits)?;
    let found = left_inverses(&e.kappa, need, limits)?.len();
    if found == 1 {
        return Ok(None);
    }
    if found > 1 && need == 1 {
        return Ok(None);
    }
    Ok(Some(OracleWitness {
        monomorphism: e.kappa,
        record: Witness::Extension {
            extension: ExtensionRecord::of(&action),
            retractions: found,
        },
    }))
}

/// `G ≅ Z(G) × G/Z(G)` for a proto-complete `G`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub center: Subgroup,
    pub center_group: GroupRef,
    pub quotient: GroupRef,
    pub product: DirectProduct,
    /// `⟨ρ, q⟩: G → Z(G) × G/Z(G)`, `ρ` a retraction of the center.
    pub iso: GroupHom,
}

impl Decomposition {
    pub fn record(&self) -> DecompositionRecord {
        DecompositionRecord {
            center: self.center.elements().to_vec(),
            quotient: self.quotient.name().to_string(),
            quotient_order: self.quotient.order(),
            iso: self.iso.images().to_vec(),
        }
    }
}

pub fn decompose_proto_complete(g: &GroupRef, limits: &Limits) -> Result<Decomposition> {
    if !classify_completeness(g, limits)?.proto_complete.holds {
        return Err(Error::NotProtoComplete);
    }
    let z = center(g);
    let rho = split_retraction(&z, limits)?
        .ok_or_else(|| Error::Violation(format!("center of {} has no retraction", g.name())))?;
    let (q, proj) = quotient(g, &z)?;
    let zg = rho.codomain().clone();
    let product = direct_product(&zg, &q, limits)?;
    let iso = pairing(&rho, &proj, &product.group)?;
    if !iso.is_bijective() {
        return Err(Error::Violation("<rho, q> is not bijective".into()));
    }
    if !classify_completeness(&q, limits)?.strong_complete.holds {
        return Err(Error::Violation(format!(
            "G/Z(G) of {} is not strong-complete",
            g.name()
        )));
    }
    if !classify_completeness(&zg, limits)?.proto_complete.holds {
        return Err(Error::Violation(format!(
            "center of {} is not proto-complete",
            g.name()
        )));
    }
    Ok(Decomposition {
        center: z,
        center_group: zg,
        quotient: q,
        product,
        iso,
    })
}

/// `(c_G injective with characteristic image, Z(G) = 0 and Aut(G) strong-complete)`.
pub fn one_step_check(g: &GroupRef, limits: &Limits) -> Result<(bool, bool)> {
    let aut = automorphism_group(g, limits)?;
    let c = conjugation_morphism(&aut, limits)?;
    let carrier = c.codomain().clone();
    let aut2 = automorphism_group(&carrier, limits)?;
    let lhs = c.is_injective() && is_characteristic(&c.image_subgroup(), &aut2);
    let rhs = center(g).is_trivial() && classify_with(&carrier, &aut2, limits)?.strong_complete.holds;
    Ok((lhs, rhs))
}

/// `(S characteristic, c_G|S injective with normal image in Aut(G))` for centerless `G`.
pub fn centerless_char_criterion(g: &GroupRef, s: &Subgroup, limits: &Limits) -> Result<(bool, bool)> {
    let z = center(g);
    if !z.is_trivial() {
        return Err(Error::CenterNonTrivial(z.order()));
    }
    let aut = automorphism_group(g, limits)?;
    let c = conjugation_morphism(&aut, limits)?;
    let direct = is_characteristic(s, &aut);
    let mut image: Vec<usize> = s.elements().iter().map(|&x| c.apply(x)).collect();
    image.sort_unstable();
    image.dedup();
    let injective = image.len() == s.order();
    let criterion = injective && Subgroup::new(c.codomain().clone(), image)?.is_normal();
    Ok((direct, criterion))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub object: String,
    pub strong: bool,
    pub complete_bounded: bool,
    pub proto: bool,
    pub center_trivial: bool,
    pub violations: Vec<String>,
}

/// Runs the classifier and the complete oracle and records every broken
/// implication. `factors` lists the factors when `G` was built as a product.
pub fn implication_audit(
    g: &GroupRef,
    bound: usize,
    universe: &Universe,
    factors: &[GroupRef],
    limits: &Limits,
) -> Result<(ClassificationReport, AuditReport)> {
    let aut = automorphism_group(g, limits)?;
    let mut report = classify_with(g, &aut, limits)?;
    let oracle = oracle_completeness(g, OracleMode::Complete, bound, universe, limits)?;
    let strong = report.strong_complete.holds;
    let proto = report.proto_complete.holds;
    let centerless = report.center_order == 1;
    let complete = oracle.holds;
    let mut violations = Vec::new();
    if strong && !complete {
        violations.push("strong-complete but a non-split normal embedding exists".into());
    }
    if complete && !proto {
        violations.push("bounded-complete but not proto-complete".into());
    }
    if strong != (proto && centerless) {
        violations.push("strong-complete differs from proto-complete and centerless".into());
    }
    if let Some(w) = &oracle.witness {
        if !left_inverses(&w.monomorphism, 1, limits)?.is_empty() && matches!(w.record, Witness::Embedding { .. }) {
            violations.push("witness embedding has a retraction".into());
        }
    }
    if proto {
        for n in normal_subgroups(g) {
            if !is_characteristic(&n, &aut) {
                violations.push(format!("normal subgroup {:?} is not characteristic", n.elements()));
            }
        }
    }
    for f in factors {
        let r = classify_completeness(f, limits)?;
        if proto && !r.proto_complete.holds {
            violations.push(format!("factor {} is not proto-complete", f.name()));
        }
        if strong && !r.strong_complete.holds {
            violations.push(format!("factor {} is not strong-complete", f.name()));
        }
    }
    report.complete_bounded = Some(oracle.verdict());
    let audit = AuditReport {
        object: g.name().to_string(),
        strong,
        complete_bounded: complete,
        proto,
        center_trivial: centerless,
        violations,
    };
    Ok((report, audit))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharSimpleReport {
    pub object: String,
    pub automorphisms: usize,
    pub strong_complete: bool,
}

/// For a nonabelian characteristically simple `G`, checks that `Aut(G)` is strong-complete.
pub fn char_simple_audit(g: &GroupRef, limits: &Limits) -> Result<CharSimpleReport> {
    if g.is_abelian() {
        return Err(Error::AbelianInput);
    }
    let aut = automorphism_group(g, limits)?;
    for n in normal_subgroups(g) {
        if !n.is_trivial() && !n.is_whole() && is_characteristic(&n, &aut) {
            return Err(Error::NotCharacteristicallySimple {
                witness: n.elements().to_vec(),
            });
        }
    }
    let carrier = aut.carrier(limits)?;
    let verdict = classify_completeness(&carrier, limits)?;
    if !verdict.strong_complete.holds {
        return Err(Error::Violation(format!("Aut({}) is not strong-complete", g.name())));
    }
    Ok(CharSimpleReport {
        object: g.name().to_string(),
        automorphisms: aut.order(),
        strong_complete: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, dihedral, symmetric, FiniteGroup};

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn l() -> Limits {
        Limits::default()
    }

    fn sym(n: usize) -> GroupRef {
        Arc::new(symmetric(n, &l()).unwrap())
    }

    #[test]
    fn classify_named_examples() {
        let r = classify_completeness(&z(2), &l()).unwrap();
        assert!(r.proto_complete.holds && !r.strong_complete.holds);
        let r = classify_completeness(&sym(3), &l()).unwrap();
        assert!(r.proto_complete.holds && r.strong_complete.holds);
        let p = direct_product(&z(2), &sym(3), &l()).unwrap().group;
        let r = classify_completeness(&p, &l()).unwrap();
        assert!(!r.proto_complete.holds);
        let r = classify_completeness(&z(4), &l()).unwrap();
        assert!(!r.proto_complete.holds);
        let r = classify_completeness(&Arc::new(FiniteGroup::trivial()), &l()).unwrap();
        assert!(r.strong_complete.holds);
    }

    #[test]
    fn section_evidence_is_a_section() {
        let g = sym(3);
        let aut = automorphism_group(&g, &l()).unwrap();
        let r = classify_with(&g, &aut, &l()).unwrap();
        let ProtoEvidence::Section { images } = r.proto_complete.evidence else {
            panic!("expected a section")
        };
        let conj = aut.conjugation_indices();
        assert!((0..aut.order()).all(|a| conj[images[a]] == a));
    }

    #[test]
    fn z2_is_refuted_by_z4() {
        let u = Universe::new("small", vec![z(4)]);
        let o = oracle_completeness(&z(2), OracleMode::Complete, 2, &u, &l()).unwrap();
        assert!(!o.holds);
        match o.witness.unwrap().record {
            Witness::Embedding { target, image } => {
                assert_eq!(target, "Z4");
                assert_eq!(image, vec![0, 2]);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let u = Universe::new("cyclic", vec![z(1), z(2), z(3), z(4)]);
        assert!(
            oracle_completeness(&z(2), OracleMode::Proto, 4, &u, &l())
                .unwrap()
                .holds
        );
        assert!(
            !oracle_completeness(&z(2), OracleMode::Strong, 4, &u, &l())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn oracle_agrees_on_small_groups() {
        let v = direct_product(&z(2), &z(2), &l()).unwrap().group;
        let groups = vec![Arc::new(FiniteGroup::trivial()), z(2), z(3), z(4), v.clone(), sym(3)];
        let u = Universe::new("tiny", groups.clone());
        let lim = l().with_cap(2048);
        for g in &groups {
            let r = classify_completeness(g, &lim).unwrap();
            let p = oracle_completeness(g, OracleMode::Proto, 6, &u, &lim).unwrap();
            let s = oracle_completeness(g, OracleMode::Strong, 6, &u, &lim).unwrap();
            assert_eq!(r.proto_complete.holds, p.holds, "{}", g.name());
            assert_eq!(r.strong_complete.holds, s.holds, "{}", g.name());
        }
    }

    #[test]
    fn trivial_group_passes_every_oracle() {
        let one: GroupRef = Arc::new(FiniteGroup::trivial());
        let u = Universe::new("tiny", vec![one.clone(), z(2), z(4)]);
        for m in [OracleMode::Proto, OracleMode::Strong, OracleMode::Complete] {
            assert!(oracle_completeness(&one, m, 4, &u, &l()).unwrap().holds);
        }
    }

    #[test]
    fn decompositions() {
        let d = decompose_proto_complete(&sym(3), &l()).unwrap();
        assert!(d.center.is_trivial());
        assert_eq!(d.quotient.order(), 6);
        let d = decompose_proto_complete(&z(2), &l()).unwrap();
        assert_eq!(d.center.order(), 2);
        assert!(d.quotient.is_trivial());
        let p = direct_product(&z(2), &sym(3), &l()).unwrap().group;
        assert_eq!(decompose_proto_complete(&p, &l()).unwrap_err(), Error::NotProtoComplete);
    }

    #[test]
    fn one_step_examples() {
        assert_eq!(one_step_check(&sym(3), &l()).unwrap(), (true, true));
        assert_eq!(one_step_check(&z(4), &l()).unwrap(), (false, false));
        let v = direct_product(&z(2), &z(2), &l()).unwrap().group;
        assert_eq!(one_step_check(&v, &l()).unwrap(), (false, false));
        let d5 = Arc::new(dihedral(5));
        let (a, b) = one_step_check(&d5, &l()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn centerless_criterion_examples() {
        let s3 = sym(3);
        let a3 = normal_subgroups(&s3).into_iter().find(|n| n.order() == 3).unwrap();
        assert_eq!(centerless_char_criterion(&s3, &a3, &l()).unwrap(), (true, true));
        let s4 = sym(4);
        let t = s4.elements().find(|&x| s4.element_order(x) == 2).unwrap();
        let t = Subgroup::generated(&s4, &[t]);
        if t.is_normal() {
            panic!("an order-2 subgroup of S4 is not normal");
        }
        assert_eq!(centerless_char_criterion(&s4, &t, &l()).unwrap(), (false, false));
        let v4 = normal_subgroups(&s4).into_iter().find(|n| n.order() == 4).unwrap();
        assert_eq!(centerless_char_criterion(&s4, &v4, &l()).unwrap(), (true, true));
        assert_eq!(
            centerless_char_criterion(&z(2), &Subgroup::whole(&z(2)), &l()).unwrap_err(),
            Error::CenterNonTrivial(2)
        );
    }

    #[test]
    fn audit_examples() {
        let u = Universe::new("tiny", vec![z(2), z(4), sym(3)]);
        for g in [sym(3), z(4), z(2)] {
            let (_, a) = implication_audit(&g, 2, &u, &[], &l()).unwrap();
            assert!(a.violations.is_empty(), "{}: {:?}", g.name(), a.violations);
        }
        let (_, a) = implication_audit(&z(2), 2, &u, &[], &l()).unwrap();
        assert!(a.proto && !a.complete_bounded);
        let (_, a) = implication_audit(&sym(3), 2, &u, &[], &l()).unwrap();
        assert!(a.strong && a.complete_bounded && a.proto);
    }

    #[test]
    fn char_simple_inputs() {
        let v = direct_product(&z(3), &z(3), &l()).unwrap().group;
        assert_eq!(char_simple_audit(&v, &l()).unwrap_err(), Error::AbelianInput);
        match char_simple_audit(&sym(4), &l()).unwrap_err() {
            Error::NotCharacteristicallySimple { witness } => assert_eq!(witness.len(), 4),
            e => panic!("unexpected {e}"),
        }
        let a4 = Arc::new(alternating(4, &l()).unwrap());
        assert!(matches!(
            char_simple_audit(&a4, &l()).unwrap_err(),
            Error::NotCharacteristicallySimple { .. }
        ));
    }
}
