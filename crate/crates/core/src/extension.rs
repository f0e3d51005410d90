//! Split extensions `X --κ--> A --α--> B` with section `β`, semidirect
//! products, the holonomy `Aut(X) ⋉ X` and its universal property.
//!
//! Multiplication convention throughout: on `B × X`,
//! `(b, x)(b', x') = (bb', act(b'⁻¹)(x) · x')`, indexed `b·|X| + x`.
//! With it, conjugation by `β(b)` acts on `κ(X)` as `act(b)`.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::automorphism::{automorphism_group, AutomorphismGroup};
use crate::commutator::normal_subgroups;
use crate::error::{Error, Result};
use crate::group::{
    direct_product, for_each_hom, is_isomorphic, pairing, DirectProduct, FiniteGroup, GroupHom, GroupRef, Subgroup,
};
use crate::limits::Limits;

#[derive(Debug, Clone)]
pub struct SplitExtension {
    pub kernel: GroupRef,
    pub total: GroupRef,
    pub cokernel: GroupRef,
    pub kappa: GroupHom,
    pub alpha: GroupHom,
    pub beta: GroupHom,
}

impl SplitExtension {
    /// `αβ = 1`, `κ` injective with image `ker α`.
    pub fn check(&self) -> Result<()> {
        for h in [&self.kappa, &self.alpha, &self.beta] {
            h.check()?;
        }
        if !self.alpha.after(&self.beta)?.is_identity() {
            return Err(Error::Violation("alpha ∘ beta is not the identity".into()));
        }
        if !self.kappa.is_injective() {
            return Err(Error::Violation("kappa is not injective".into()));
        }
        let im = self.kappa.image_subgroup();
        if im != self.alpha.kernel() {
            return Err(Error::Violation("image of kappa is not the kernel of alpha".into()));
        }
        debug_assert!(im.is_normal());
        Ok(())
    }
}

/// A homomorphism `B → Aut(X)`, stored as automorphism indices.
#[derive(Debug, Clone)]
pub struct GroupAction {
    acting: GroupRef,
    aut: Arc<AutomorphismGroup>,
    act: Vec<usize>,
}

impl GroupAction {
    pub fn new(acting: GroupRef, aut: Arc<AutomorphismGroup>, act: Vec<usize>) -> Result<GroupAction> {
        if act.len() != acting.order() || act.iter().any(|&a| a >= aut.order()) {
            return Err(Error::TableInvalid("action has the wrong shape".into()));
        }
        for a in acting.elements() {
            for b in acting.elements() {
                if act[acting.mul(a, b)] != aut.compose(act[a], act[b]) {
                    return Err(Error::TableInvalid(format!(
                        "action is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupAction { acting, aut, act })
    }

    pub(crate) fn new_unchecked(acting: GroupRef, aut: Arc<AutomorphismGroup>, act: Vec<usize>) -> GroupAction {
        GroupAction { acting, aut, act }
    }

    pub fn trivial(acting: GroupRef, aut: Arc<AutomorphismGroup>) -> GroupAction {
        let act = vec![0; acting.order()];
        GroupAction { acting, aut, act }
    }

    pub fn acting(&self) -> &GroupRef {
        &self.acting
    }

    pub fn kernel(&self) -> &GroupRef {
        self.aut.base()
    }

    pub fn automorphisms(&self) -> &Arc<AutomorphismGroup> {
        &self.aut
    }

    pub fn indices(&self) -> &[usize] {
        &self.act
    }

    pub fn is_trivial(&self) -> bool {
        self.act.iter().all(|&a| a == 0)
    }
}

pub fn semidirect_product(a: &GroupAction, limits: &Limits) -> Result<SplitExtension> {
    let x = a.kernel().clone();
    let b = a.acting().clone();
    let (nb, nx) = (b.order(), x.order());
    let n = nb * nx;
    limits.check_order(n)?;
    let twist: Vec<&[u32]> = b.elements().map(|g| a.aut.elem(a.act[b.inv(g)])).collect();
    let mut table = vec![0u32; n * n];
    for p in 0..n {
        let (b1, x1) = (p / nx, p % nx);
        let row = &mut table[p * n..(p + 1) * n];
        for b2 in 0..nb {
            let bb = b.mul(b1, b2) * nx;
            let xt = twist[b2][x1] as usize;
            let xrow = x.row(xt);
            for x2 in 0..nx {
                row[b2 * nx + x2] = (bb + xrow[x2] as usize) as u32;
            }
        }
    }
    let name = if a.is_trivial() {
        format!("{}x{}", b.name(), x.name())
    } else {
        format!("{}:{}", x.name(), b.name())
    };
    let total = FiniteGroup::from_flat(n, table, Some(name)).into_ref();
    let kappa = GroupHom::new_unchecked(x.clone(), total.clone(), (0..nx).collect());
    let alpha = GroupHom::new_unchecked(total.clone(), b.clone(), (0..n).map(|p| p / nx).collect());
    let beta = GroupHom::new_unchecked(b.clone(), total.clone(), (0..nb).map(|g| g * nx).collect());
    Ok(SplitExtension {
        kernel: x,
        total,
        cokernel: b,
        kappa,
        alpha,
        beta,
    })
}

/// The generic split extension `X → Aut(X) ⋉ X ⇄ Aut(X)` together with
/// the evaluation `p₂(φ, x) = φ ∘ c_x`, which satisfies `p₂ ∘ k = c_X`.
#[derive(Debug, Clone)]
pub struct Holonomy {
    pub extension: SplitExtension,
    pub evaluation: GroupHom,
    pub automorphisms: Arc<AutomorphismGroup>,
}

pub fn holonomy(aut: &Arc<AutomorphismGroup>, limits: &Limits) -> Result<Holonomy> {
    let carrier = aut.carrier(limits)?;
    let action = GroupAction::new_unchecked(carrier.clone(), aut.clone(), carrier.elements().collect());
    let mut extension = semidirect_product(&action, limits)?;
    let x = aut.base();
    let name = format!("Hol({})", x.name());
    extension.total = Arc::new(FiniteGroup::from_flat(
        extension.total.order(),
        extension.total.flat_table().to_vec(),
        Some(name),
    ));
    let total = extension.total.clone();
    extension.kappa = GroupHom::new_unchecked(x.clone(), total.clone(), extension.kappa.images().to_vec());
    extension.alpha = GroupHom::new_unchecked(total.clone(), carrier.clone(), extension.alpha.images().to_vec());
    extension.beta = GroupHom::new_unchecked(carrier.clone(), total.clone(), extension.beta.images().to_vec());
    let conj = aut.conjugation_indices();
    let nx = x.order();
    let evaluation: Vec<usize> = (0..total.order()).map(|p| aut.compose(p / nx, conj[p % nx])).collect();
    let evaluation = GroupHom::new(total, carrier, evaluation)?;
    if evaluation.after(&extension.kappa)?.images() != conj.as_slice() {
        return Err(Error::Violation("p2 ∘ k differs from c_X".into()));
    }
    Ok(Holonomy {
        extension,
        evaluation,
        automorphisms: aut.clone(),
    })
}

/// The unique morphism of split extensions `e → holonomy(X)`.
#[derive(Debug, Clone)]
pub struct ClassifyingMorphism {
    /// `u: A → Aut(X) ⋉ X`.
    pub u: GroupHom,
    /// `v: B → Aut(X)`.
    pub v: GroupHom,
    pub holonomy: Holonomy,
}

fn kappa_inverse(e: &SplitExtension) -> Vec<usize> {
    let mut inv = vec![usize::MAX; e.total.order()];
    for x in e.kernel.elements() {
        inv[e.kappa.apply(x)] = x;
    }
    inv
}

/// `b ↦ (x ↦ κ⁻¹(β(b) κ(x) β(b)⁻¹))`, as automorphism indices.
pub fn induced_action(e: &SplitExtension, aut: &AutomorphismGroup) -> Vec<usize> {
    let kinv = kappa_inverse(e);
    let a = &*e.total;
    e.cokernel
        .elements()
        .map(|b| {
            let g = e.beta.apply(b);
            let perm: Vec<usize> = e.kernel.elements().map(|x| kinv[a.conj(g, e.kappa.apply(x))]).collect();
            aut.index_of(&perm).expect("conjugation restricts to an automorphism")
        })
        .collect()
}

/// The map `A → Hol(X)` forced by `v` and the morphism-of-extensions laws.
fn forced_u(e: &SplitExtension, v: &[usize], kinv: &[usize]) -> Vec<usize> {
    let a = &*e.total;
    let nx = e.kernel.order();
    a.elements()
        .map(|p| {
            let b = e.alpha.apply(p);
            let x = kinv[a.mul(a.inv(e.beta.apply(b)), p)];
            v[b] * nx + x
        })
        .collect()
}

fn is_hom_images(a: &FiniteGroup, h: &FiniteGroup, img: &[usize]) -> bool {
    a.elements()
        .all(|p| a.elements().all(|q| img[a.mul(p, q)] == h.mul(img[p], img[q])))
}

/// Builds `(u, v)` and verifies by exhaustive search over `Hom(B, Aut(X))`
/// that no other pair is a morphism of split extensions.
pub fn classify_into_generic(e: &SplitExtension, limits: &Limits) -> Result<ClassifyingMorphism> {
    let aut = automorphism_group(&e.kernel, limits)?;
    let hol = holonomy(&aut, limits)?;
    let carrier = aut.carrier(limits)?;
    let target = &hol.extension;
    let kinv = kappa_inverse(e);
    let v_img = induced_action(e, &aut);
    let v = GroupHom::new(e.cokernel.clone(), carrier.clone(), v_img.clone())?;
    let u = GroupHom::new(e.total.clone(), target.total.clone(), forced_u(e, &v_img, &kinv))?;
    let square = u.after(&e.kappa)?.images() == target.kappa.images()
        && target.alpha.after(&u)?.images() == v.after(&e.alpha)?.images()
        && u.after(&e.beta)?.images() == target.beta.after(&v)?.images();
    if !square {
        return Err(Error::Violation(
            "induced pair is not a morphism of split extensions".into(),
        ));
    }
    let mut count = 0usize;
    for_each_hom(&e.cokernel, &*carrier, limits, |cand| {
        if is_hom_images(&e.total, &target.total, &forced_u(e, cand, &kinv)) {
            count += 1;
        }
        ControlFlow::Continue(())
    })?;
    if count != 1 {
        return Err(Error::Violation(format!(
            "{count} morphisms into the generic split extension instead of one"
        )));
    }
    Ok(ClassifyingMorphism { u, v, holonomy: hol })
}

/// Streams the split extensions `X → A → B`, one per action, in action order.
pub fn for_each_split_extension(
    aut: &Arc<AutomorphismGroup>,
    acting: &GroupRef,
    limits: &Limits,
    mut visit: impl FnMut(SplitExtension, &GroupAction) -> Result<ControlFlow<()>>,
) -> Result<bool> {
    let mut actions = Vec::new();
    for_each_hom(acting, &**aut, limits, |img| {
        actions.push(img.to_vec());
        ControlFlow::Continue(())
    })?;
    for act in actions {
        let action = GroupAction::new_unchecked(acting.clone(), aut.clone(), act);
        let e = semidirect_product(&action, limits)?;
        if visit(e, &action)?.is_break() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All actions of `B` on `X` as automorphism index arrays, in canonical order.
pub fn enumerate_actions(aut: &Arc<AutomorphismGroup>, acting: &GroupRef, limits: &Limits) -> Result<Vec<GroupAction>> {
    let mut out = Vec::new();
    for_each_hom(acting, &**aut, limits, |img| {
        out.push(GroupAction::new_unchecked(acting.clone(), aut.clone(), img.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn enumerate_split_extensions(x: &GroupRef, b: &GroupRef, limits: &Limits) -> Result<Vec<SplitExtension>> {
    let aut = automorphism_group(x, limits)?;
    enumerate_actions(&aut, b, limits)?
        .iter()
        .map(|a| semidirect_product(a, limits))
        .collect()
}

#[derive(Debug, Clone)]
pub struct NormalEmbedding {
    pub target: GroupRef,
    pub embedding: GroupHom,
}

/// Injective homomorphisms `X → Y` with normal image, one per
/// `Aut(Y)`-orbit of image subgroups, for each `Y` in the universe.
pub fn enumerate_normal_embeddings(
    x: &GroupRef,
    universe: &[GroupRef],
    limits: &Limits,
) -> Result<Vec<NormalEmbedding>> {
    let mut out = Vec::new();
    for y in universe {
        out.extend(normal_embeddings_into(x, y, limits)?);
    }
    Ok(out)
}

pub fn normal_embeddings_into(x: &GroupRef, y: &GroupRef, limits: &Limits) -> Result<Vec<NormalEmbedding>> {
    if !y.order().is_multiple_of(x.order()) {
        return Ok(Vec::new());
    }
    let mut images: Vec<(Subgroup, GroupHom)> = Vec::new();
    for n in normal_subgroups(y) {
        if n.order() != x.order() {
            continue;
        }
        let (ng, incl) = n.to_group();
        if let Some(iso) = is_isomorphic(x, &ng, limits)? {
            images.push((n, incl.after(&iso)?));
        }
    }
    if images.len() > 1 {
        let aut = automorphism_group(y, limits)?;
        let mut kept: Vec<(Subgroup, GroupHom)> = Vec::new();
        for (n, f) in images {
            let mask = n.mask();
            let duplicate = kept
                .iter()
                .any(|(m, _)| (0..aut.order()).any(|i| m.elements().iter().all(|&s| mask[aut.apply(i, s)])));
            if !duplicate {
                kept.push((n, f));
            }
        }
        images = kept;
    }
    Ok(images
        .into_iter()
        .map(|(_, embedding)| NormalEmbedding {
            target: y.clone(),
            embedding,
        })
        .collect())
}

/// An isomorphism of split extensions `ψ = ⟨α, λ⟩: A → B × X` built from a
/// retraction `λ` of `κ`, with `ψκ = ⟨0,1⟩` and `ψβ = ⟨1, θ⟩`, `θ = λβ`.
#[derive(Debug, Clone)]
pub struct ProductForm {
    pub product: DirectProduct,
    pub iso: GroupHom,
    pub theta: GroupHom,
}

pub fn product_form(e: &SplitExtension, retraction: &GroupHom, limits: &Limits) -> Result<ProductForm> {
    if !retraction.after(&e.kappa)?.is_identity() {
        return Err(Error::Violation("not a retraction of kappa".into()));
    }
    let product = direct_product(&e.cokernel, &e.kernel, limits)?;
    let iso = pairing(&e.alpha, retraction, &product.group)?;
    if !iso.is_bijective() {
        return Err(Error::Violation("<alpha, lambda> is not bijective".into()));
    }
    let theta = retraction.after(&e.beta)?;
    let section = pairing(&GroupHom::identity(&e.cokernel), &theta, &product.group)?;
    if iso.after(&e.kappa)? != product.inj2 || iso.after(&e.beta)? != section {
        return Err(Error::Violation(
            "product form does not commute with the extension".into(),
        ));
    }
    Ok(ProductForm { product, iso, theta })
}

/// Serializable summary of an extension: kernel, cokernel, action indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionRecord {
    pub kernel: String,
    pub cokernel: String,
    pub action: Vec<usize>,
}

impl ExtensionRecord {
    pub fn of(action: &GroupAction) -> ExtensionRecord {
        ExtensionRecord {
            kernel: action.kernel().name().to_string(),
            cokernel: action.acting().name().to_string(),
            action: action.indices().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, direct_product, left_inverses, symmetric};

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn l() -> Limits {
        Limits::default()
    }

    fn inversion(x: &GroupRef) -> (Arc<AutomorphismGroup>, usize) {
        let aut = automorphism_group(x, &l()).unwrap();
        let perm: Vec<usize> = x.elements().map(|a| x.inv(a)).collect();
        let i = aut.index_of(&perm).unwrap();
        (aut, i)
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let aut = automorphism_group(&z(3), &l()).unwrap();
        let e = semidirect_product(&GroupAction::trivial(z(2), aut), &l()).unwrap();
        e.check().unwrap();
        e.total.validate().unwrap();
        assert!(is_isomorphic(&e.total, &z(6), &l()).unwrap().is_some());
    }

    #[test]
    fn inversion_action_gives_s3() {
        let (aut, inv) = inversion(&z(3));
        let a = GroupAction::new(z(2), aut, vec![0, inv]).unwrap();
        let e = semidirect_product(&a, &l()).unwrap();
        e.check().unwrap();
        e.total.validate().unwrap();
        let s3 = Arc::new(symmetric(3, &l()).unwrap());
        assert!(is_isomorphic(&e.total, &s3, &l()).unwrap().is_some());
    }

    #[test]
    fn trivial_acting_group_gives_kernel() {
        let s3 = Arc::new(symmetric(3, &l()).unwrap());
        let aut = automorphism_group(&s3, &l()).unwrap();
        let e = semidirect_product(&GroupAction::trivial(Arc::new(FiniteGroup::trivial()), aut), &l()).unwrap();
        assert!(is_isomorphic(&e.total, &s3, &l()).unwrap().is_some());
    }

    #[test]
    fn non_homomorphic_action_is_rejected() {
        let (aut, inv) = inversion(&z(3));
        assert!(GroupAction::new(z(3), aut, vec![0, inv, inv]).is_err());
    }

    #[test]
    fn holonomy_examples() {
        let hol = |x: &GroupRef| holonomy(&automorphism_group(x, &l()).unwrap(), &l()).unwrap();
        let h2 = hol(&z(2));
        assert!(is_isomorphic(&h2.extension.total, &z(2), &l()).unwrap().is_some());
        let h3 = hol(&z(3));
        let s3 = Arc::new(symmetric(3, &l()).unwrap());
        assert!(is_isomorphic(&h3.extension.total, &s3, &l()).unwrap().is_some());
        let v = direct_product(&z(2), &z(2), &l()).unwrap().group;
        let hv = hol(&v);
        assert_eq!(hv.extension.total.order(), 24);
        hv.extension.check().unwrap();
        let s4 = Arc::new(symmetric(4, &l()).unwrap());
        assert!(is_isomorphic(&hv.extension.total, &s4, &l()).unwrap().is_some());
    }

    #[test]
    fn classify_inversion_extension() {
        let (aut, inv) = inversion(&z(3));
        let a = GroupAction::new(z(2), aut, vec![0, inv]).unwrap();
        let e = semidirect_product(&a, &l()).unwrap();
        let m = classify_into_generic(&e, &l()).unwrap();
        assert_eq!(m.v.images(), &[0, inv]);
    }

    #[test]
    fn classify_direct_product_gives_zero_action() {
        let p = direct_product(&z(2), &z(3), &l()).unwrap();
        let e = SplitExtension {
            kernel: z(3),
            total: p.group.clone(),
            cokernel: z(2),
            kappa: p.inj2.clone(),
            alpha: p.proj1.clone(),
            beta: p.inj1.clone(),
        };
        e.check().unwrap();
        let m = classify_into_generic(&e, &l()).unwrap();
        assert!(m.v.is_zero());
    }

    #[test]
    fn classify_holonomy_is_identity() {
        let s3 = Arc::new(symmetric(3, &l()).unwrap());
        let aut = automorphism_group(&s3, &l()).unwrap();
        let h = holonomy(&aut, &l()).unwrap();
        let m = classify_into_generic(&h.extension, &l()).unwrap();
        assert!(m.v.is_identity());
        assert!(m.u.is_identity());
    }

    #[test]
    fn split_extension_counts() {
        let exts = enumerate_split_extensions(&z(3), &z(2), &l()).unwrap();
        assert_eq!(exts.len(), 2);
        assert!(is_isomorphic(&exts[0].total, &z(6), &l()).unwrap().is_some());
        let s3 = Arc::new(symmetric(3, &l()).unwrap());
        assert!(is_isomorphic(&exts[1].total, &s3, &l()).unwrap().is_some());

        let exts = enumerate_split_extensions(&z(2), &z(2), &l()).unwrap();
        assert_eq!(exts.len(), 1);
        let v = direct_product(&z(2), &z(2), &l()).unwrap().group;
        assert!(is_isomorphic(&exts[0].total, &v, &l()).unwrap().is_some());

        let exts = enumerate_split_extensions(&v, &z(3), &l()).unwrap();
        assert_eq!(exts.len(), 3);
        let a4 = Arc::new(alternating(4, &l()).unwrap());
        for e in &exts[1..] {
            assert!(is_isomorphic(&e.total, &a4, &l()).unwrap().is_some());
        }
    }

    #[test]
    fn round_trip_through_generic_extension() {
        let v = direct_product(&z(2), &z(2), &l()).unwrap().group;
        for (x, b) in [(z(3), z(2)), (v.clone(), z(3)), (z(5), z(4)), (v, z(2))] {
            let aut = automorphism_group(&x, &l()).unwrap();
            for a in enumerate_actions(&aut, &b, &l()).unwrap() {
                let e = semidirect_product(&a, &l()).unwrap();
                e.check().unwrap();
                let m = classify_into_generic(&e, &l()).unwrap();
                assert_eq!(m.v.images(), a.indices());
            }
        }
    }

    #[test]
    fn normal_embedding_examples() {
        let one = normal_embeddings_into(&z(2), &z(4), &l()).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].embedding.images(), &[0, 2]);
        let s3 = Arc::new(symmetric(3, &l()).unwrap());
        let a3 = normal_embeddings_into(&z(3), &s3, &l()).unwrap();
        assert_eq!(a3.len(), 1);
        assert_eq!(a3[0].embedding.image_subgroup().order(), 3);
        let id = normal_embeddings_into(&s3, &s3, &l()).unwrap();
        assert_eq!(id.len(), 1);
        assert!(id[0].embedding.is_bijective());
        // the three order-2 subgroups of Z2×Z2 form one Aut-orbit
        let v = direct_product(&z(2), &z(2), &l()).unwrap().group;
        assert_eq!(normal_embeddings_into(&z(2), &v, &l()).unwrap().len(), 1);
    }

    #[test]
    fn extensions_of_s3_are_products() {
        let s3 = Arc::new(symmetric(3, &l()).unwrap());
        for b in [z(2), z(3), z(4)] {
            for e in enumerate_split_extensions(&s3, &b, &l()).unwrap() {
                let r = left_inverses(&e.kappa, 1, &l()).unwrap();
                let pf = product_form(&e, &r[0], &l()).unwrap();
                assert!(pf.iso.is_bijective());
            }
        }
    }
}
