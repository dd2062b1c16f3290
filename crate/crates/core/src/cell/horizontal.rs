use crate::error::{Error, Result};
use crate::finset::{FamilyMap, FinFamily, FinMap};
use crate::label::{section_label, section_value, Label};
use crate::poly::{compose, extend, Composite};

use super::PolyMorphism;

/// Horizontal composite `ψ·φ : G·F ⇒ G′·F′` of cartesian morphisms
/// `φ : F ⇒ F′` and `ψ : G ⇒ G′`, obtained by applying the composite
/// construction to their square representations.
pub fn hcomp(psi: &PolyMorphism, phi: &PolyMorphism) -> Result<PolyMorphism> {
    let src = compose(psi.src(), phi.src())?;
    let dst = compose(psi.dst(), phi.dst())?;
    hcomp_between(psi, phi, &src, &dst)
}

/// [`hcomp`] with the two composites already computed.
pub fn hcomp_between(psi: &PolyMorphism, phi: &PolyMorphism, src: &Composite, dst: &Composite) -> Result<PolyMorphism> {
    if !phi.is_cartesian() || !psi.is_cartesian() {
        return Err(Error::NotCartesian("horizontal composition is only defined for cartesian morphisms".into()));
    }
    if phi.dst().j() != psi.dst().i() {
        return Err(Error::BoundaryMismatch("horizontal composition of non-composable morphisms".into()));
    }
    let m1_phi = phi.square_map()?;
    let m1_psi = psi.square_map()?;
    // D ≅ C ×_{C′} D′ through the ψ square
    let mut psi_back = std::collections::HashMap::new();
    for d in psi.src().b() {
        let c = psi.src().f().apply(d).unwrap();
        psi_back.insert((c.clone(), m1_psi.apply(d).unwrap().clone()), d.clone());
    }
    let on_m = FinMap::from_fn(&src.trace.m, &dst.trace.m, |m| {
        let (c, section) = m.as_pair().unwrap();
        let c2 = psi.phi0().apply(c).unwrap();
        let entries: Vec<_> = psi
            .dst()
            .f()
            .fibre(c2)
            .iter()
            .map(|d2| {
                let d = &psi_back[&(c.clone(), d2.clone())];
                let (a, _) = section_value(section, d).unwrap().as_pair().unwrap();
                (d2.clone(), Label::pair(phi.phi0().apply(a).unwrap().clone(), d2.clone()))
            })
            .collect();
        Label::pair(c2.clone(), section_label(entries))
    })?;
    let on_n = FinMap::from_fn(src.trace.n.dom(), dst.trace.n.dom(), |x| {
        let (b, md) = x.as_pair().unwrap();
        let (m, d) = md.as_pair().unwrap();
        Label::pair(
            m1_phi.apply(b).unwrap().clone(),
            Label::pair(on_m.apply(m).unwrap().clone(), m1_psi.apply(d).unwrap().clone()),
        )
    })?;
    PolyMorphism::from_square(&src.poly, &dst.poly, &on_n, &on_m)
}

/// `G·φ`, the whiskering `G·F ⇒ G·F′`.
pub fn whisker_left(outer: &crate::poly::Polynomial, phi: &PolyMorphism) -> Result<PolyMorphism> {
    hcomp(&PolyMorphism::identity(outer), phi)
}

/// `ψ·F`, the whiskering `G·F ⇒ G′·F`.
pub fn whisker_right(psi: &PolyMorphism, inner: &crate::poly::Polynomial) -> Result<PolyMorphism> {
    hcomp(psi, &PolyMorphism::identity(inner))
}

/// The induced transformation `P_F(X) → P_G(X)`,
/// `(a, τ) ↦ (φ0(a), d ↦ τ(φ2(δ)))` where `δ ∈ Dφ` is the point over
/// `(a, d)`.
pub fn extend_morphism(phi: &PolyMorphism, x: &FinFamily) -> Result<FamilyMap> {
    let src = extend(phi.src(), x)?;
    let dst = extend(phi.dst(), x)?;
    let back = phi.vertex_comparison().inverse()?;
    FamilyMap::from_fn(&src, &dst, |_, e| {
        let (a, tau) = e.as_pair().unwrap();
        let c = phi.phi0().apply(a).unwrap();
        let entries: Vec<_> = phi
            .dst()
            .f()
            .fibre(c)
            .iter()
            .map(|d| {
                let delta = back.apply(&Label::pair(a.clone(), d.clone())).unwrap();
                let b = phi.phi2().apply(delta).unwrap();
                (d.clone(), section_value(tau, b).unwrap().clone())
            })
            .collect();
        Label::pair(c.clone(), section_label(entries))
    })
}
