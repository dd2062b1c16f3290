//! Internal full subcategories `𝔸_f`, the internal functors `𝔸_φ` of
//! cartesian morphisms, and internal natural transformations coming from
//! adjustments.

use crate::cell::{Adjustment, PolyMorphism};
use crate::error::{Error, Result};
use crate::finset::{all_family_maps, pullback, slice_exponential_families, FamilyMap, FinFamily, FinMap, FinSet};
use crate::label::{section_entries, section_label, section_value, Label};
use crate::poly::{slice_reduce_morphism, Polynomial};

/// An internal category with its object of composable pairs materialised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalCategory {
    pub obj: FinSet,
    pub mor: FinSet,
    pub dom: FinMap,
    pub cod: FinMap,
    pub ident: FinMap,
    /// Pairs `(g, f)` with `dom(g) = cod(f)`.
    pub composable: FinSet,
    pub comp: FinMap,
}

/// Composition as a dense table over morphism indices.
struct CompTable {
    n: usize,
    table: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl CompTable {
    fn get(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.table[g * self.n + f];
        (v != NONE).then_some(v)
    }
}

impl InternalCategory {
    fn table(&self) -> CompTable {
        let n = self.mor.len();
        let mut table = vec![NONE; n * n];
        for (k, pair) in self.composable.iter().enumerate() {
            let (g, f) = pair.as_pair().unwrap();
            let (gi, fi) = (self.mor.index_of(g).unwrap(), self.mor.index_of(f).unwrap());
            table[gi * n + fi] = self.comp.index_at(k);
        }
        CompTable { n, table }
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: &Label, f: &Label) -> Option<&Label> {
        self.comp.apply(&Label::pair(g.clone(), f.clone()))
    }

    /// Morphisms from `a` to `a2`.
    pub fn hom(&self, a: &Label, a2: &Label) -> Vec<&Label> {
        self.mor.iter().filter(|m| self.dom.apply(m) == Some(a) && self.cod.apply(m) == Some(a2)).collect()
    }

    /// Unit, associativity and the source/target laws, by full enumeration.
    pub fn check_laws(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::CategoryLaw(msg));
        if self.dom.after(&self.ident)? != FinMap::identity(&self.obj)
            || self.cod.after(&self.ident)? != FinMap::identity(&self.obj)
        {
            return fail("identities have the wrong endpoints".into());
        }
        let n = self.mor.len();
        let table = self.table();
        for g in 0..n {
            for f in 0..n {
                let composable = self.dom.index_at(g) == self.cod.index_at(f);
                match table.get(g, f) {
                    Some(gf) => {
                        if !composable {
                            return fail(format!(
                                "{} ∘ {} defined but not composable",
                                self.mor.get(g),
                                self.mor.get(f)
                            ));
                        }
                        if self.dom.index_at(gf) != self.dom.index_at(f)
                            || self.cod.index_at(gf) != self.cod.index_at(g)
                        {
                            return fail(format!("{} ∘ {} has the wrong endpoints", self.mor.get(g), self.mor.get(f)));
                        }
                    }
                    None if composable => {
                        return fail(format!("{} ∘ {} undefined", self.mor.get(g), self.mor.get(f)));
                    }
                    None => {}
                }
            }
        }
        for f in 0..n {
            let left = self.ident.index_at(self.cod.index_at(f));
            let right = self.ident.index_at(self.dom.index_at(f));
            if table.get(left, f) != Some(f) || table.get(f, right) != Some(f) {
                return fail(format!("unit law fails at {}", self.mor.get(f)));
            }
        }
        for h in 0..n {
            for g in 0..n {
                let Some(hg) = table.get(h, g) else { continue };
                for f in 0..n {
                    let Some(gf) = table.get(g, f) else { continue };
                    if table.get(hg, f) != table.get(h, gf) {
                        return fail(format!(
                            "associativity fails at ({}, {}, {})",
                            self.mor.get(h),
                            self.mor.get(g),
                            self.mor.get(f)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn compose_sections(g: &Label, f: &Label) -> Label {
    section_label(
        section_entries(f).unwrap().into_iter().map(|(x, y)| (x.clone(), section_value(g, y).unwrap().clone())),
    )
}

fn identity_section(set: &FinSet) -> Label {
    section_label(set.iter().map(|x| (x.clone(), x.clone())))
}

/// `𝔸_f`: objects `A`, morphisms `((a, a′), k)` with `k : B_a → B_{a′}`.
pub fn internal_full_subcat(f: &FinMap) -> Result<InternalCategory> {
    let obj = f.cod().clone();
    let pairs = obj.product(&obj);
    let fibres = FinFamily::fibres_of(f);
    let sources = FinFamily::from_fn(&pairs, |z| fibres.fibre(z.as_pair().unwrap().0).unwrap().clone());
    let targets = FinFamily::from_fn(&pairs, |z| fibres.fibre(z.as_pair().unwrap().1).unwrap().clone());
    let hom = slice_exponential_families(&sources, &targets)?.total_space();
    let mor = hom.dom().clone();
    let dom = FinMap::from_fn(&mor, &obj, |m| m.as_pair().unwrap().0.as_pair().unwrap().0.clone())?;
    let cod = FinMap::from_fn(&mor, &obj, |m| m.as_pair().unwrap().0.as_pair().unwrap().1.clone())?;
    let ident = FinMap::from_fn(&obj, &mor, |a| {
        Label::pair(Label::pair(a.clone(), a.clone()), identity_section(fibres.fibre(a).unwrap()))
    })?;
    let composable = pullback(&dom, &cod)?.apex;
    let comp = FinMap::from_fn(&composable, &mor, |pair| {
        let (g, h) = pair.as_pair().unwrap();
        let (gz, gk) = g.as_pair().unwrap();
        let (hz, hk) = h.as_pair().unwrap();
        let ends = Label::pair(hz.as_pair().unwrap().0.clone(), gz.as_pair().unwrap().1.clone());
        Label::pair(ends, compose_sections(gk, hk))
    })?;
    Ok(InternalCategory { obj, mor, dom, cod, ident, composable, comp })
}

/// An internal functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalFunctor {
    pub src: InternalCategory,
    pub dst: InternalCategory,
    pub on_obj: FinMap,
    pub on_mor: FinMap,
}

impl InternalFunctor {
    pub fn identity(cat: &InternalCategory) -> Self {
        InternalFunctor {
            src: cat.clone(),
            dst: cat.clone(),
            on_obj: FinMap::identity(&cat.obj),
            on_mor: FinMap::identity(&cat.mor),
        }
    }

    /// Preservation of endpoints, identities and composition.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::CategoryLaw(msg.into()));
        if self.on_mor.dom() != &self.src.mor || self.on_mor.cod() != &self.dst.mor {
            return fail("functor is not a map of morphism objects");
        }
        if self.dst.dom.after(&self.on_mor)? != self.on_obj.after(&self.src.dom)?
            || self.dst.cod.after(&self.on_mor)? != self.on_obj.after(&self.src.cod)?
        {
            return fail("functor does not preserve endpoints");
        }
        if self.on_mor.after(&self.src.ident)? != self.dst.ident.after(&self.on_obj)? {
            return fail("functor does not preserve identities");
        }
        let table = self.dst.table();
        for (k, pair) in self.src.composable.iter().enumerate() {
            let (g, f) = pair.as_pair().unwrap();
            let fg = self.dst.mor.index_of(self.on_mor.apply(g).unwrap()).unwrap();
            let ff = self.dst.mor.index_of(self.on_mor.apply(f).unwrap()).unwrap();
            let image = self.on_mor.index_at(self.src.comp.index_at(k));
            if table.get(fg, ff) != Some(image) {
                return fail("functor does not preserve composition");
            }
        }
        Ok(())
    }

    /// `G ∘ F`.
    pub fn then(&self, next: &InternalFunctor) -> Result<InternalFunctor> {
        if self.dst != next.src {
            return Err(Error::BoundaryMismatch("composing non-composable internal functors".into()));
        }
        Ok(InternalFunctor {
            src: self.src.clone(),
            dst: next.dst.clone(),
            on_obj: next.on_obj.after(&self.on_obj)?,
            on_mor: next.on_mor.after(&self.on_mor)?,
        })
    }

    /// Whether every induced map `hom(a, a′) → hom(Fa, Fa′)` is a bijection.
    pub fn is_full_and_faithful(&self) -> bool {
        for a in &self.src.obj {
            for a2 in &self.src.obj {
                let images: Vec<&Label> =
                    self.src.hom(a, a2).into_iter().map(|m| self.on_mor.apply(m).unwrap()).collect();
                let target = self.dst.hom(self.on_obj.apply(a).unwrap(), self.on_obj.apply(a2).unwrap());
                let distinct = FinSet::collect_unique(images.iter().map(|x| (*x).clone()));
                if distinct.len() != images.len() || distinct.len() != target.len() {
                    return false;
                }
            }
        }
        true
    }
}

fn require_cartesian_one_to_one(phi: &PolyMorphism) -> Result<FinMap> {
    if !phi.src().is_one_to_one() || !phi.dst().is_one_to_one() {
        return Err(Error::BoundaryMismatch(
            "internal functors are built for polynomials 1 ⇸ 1; reduce general ones along S first".into(),
        ));
    }
    phi.square_map()
}

/// `𝔸_φ` for cartesian `φ : f ⇒ g`: `φ0` on objects and
/// `k ↦ m|_{a′} ∘ k ∘ (m|_a)⁻¹` on morphisms, with `m = φ1∘φ2⁻¹`.
pub fn internal_functor(phi: &PolyMorphism) -> Result<InternalFunctor> {
    let m = require_cartesian_one_to_one(phi)?;
    // m is only invertible fibrewise: key the inverse by the operation too
    let m_inv: std::collections::HashMap<(&Label, &Label), &Label> =
        m.pairs().map(|(b, d)| ((phi.src().f().apply(b).unwrap(), d), b)).collect();
    let src = internal_full_subcat(phi.src().f())?;
    let dst = internal_full_subcat(phi.dst().f())?;
    let on_mor = FinMap::from_fn(&src.mor, &dst.mor, |k| {
        let (ends, section) = k.as_pair().unwrap();
        let (a, a2) = ends.as_pair().unwrap();
        let (c, c2) = (phi.phi0().apply(a).unwrap(), phi.phi0().apply(a2).unwrap());
        let moved = section_label(phi.dst().f().fibre(c).iter().map(|d| {
            let b = m_inv[&(a, d)];
            (d.clone(), m.apply(section_value(section, b).unwrap()).unwrap().clone())
        }));
        Label::pair(Label::pair(c.clone(), c2.clone()), moved)
    })?;
    Ok(InternalFunctor { src, dst, on_obj: phi.phi0().clone(), on_mor })
}

/// `𝔸_φ` fibrewise over `I × J` for a general cartesian morphism, through
/// the slice reduction.
pub fn internal_functors_over_slice(phi: &PolyMorphism) -> Result<Vec<(Label, InternalFunctor)>> {
    let reduced = slice_reduce_morphism(phi);
    let mut out = Vec::new();
    for z in reduced.src().base() {
        let component = reduced.component(z)?;
        let square = component.square_map()?;
        // the component's vertex is a subset of Dφ; re-present it on B_z
        let cell = PolyMorphism::from_square(component.src(), component.dst(), &square, component.phi0())?;
        out.push((z.clone(), internal_functor(&cell)?));
    }
    Ok(out)
}

/// An internal natural transformation with components `obj → mor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalNatTrans {
    pub src: InternalFunctor,
    pub dst: InternalFunctor,
    pub components: FinMap,
}

impl InternalNatTrans {
    /// Endpoints of components and every naturality square.
    pub fn check(&self) -> Result<()> {
        let cat = &self.src.dst;
        if self.src.src != self.dst.src || self.src.dst != self.dst.dst {
            return Err(Error::BoundaryMismatch("natural transformations relate parallel functors".into()));
        }
        if cat.dom.after(&self.components)? != self.src.on_obj || cat.cod.after(&self.components)? != self.dst.on_obj {
            return Err(Error::NotNatural("a component has the wrong endpoints".into()));
        }
        let table = cat.table();
        let idx = |x: &Label| cat.mor.index_of(x).unwrap();
        for k in &self.src.src.mor {
            let a = self.src.src.dom.apply(k).unwrap();
            let a2 = self.src.src.cod.apply(k).unwrap();
            let lhs = table.get(idx(self.dst.on_mor.apply(k).unwrap()), idx(self.components.apply(a).unwrap()));
            let rhs = table.get(idx(self.components.apply(a2).unwrap()), idx(self.src.on_mor.apply(k).unwrap()));
            if lhs.is_none() || lhs != rhs {
                return Err(Error::NotNatural(format!("naturality square fails at {k}")));
            }
        }
        Ok(())
    }
}

/// Candidate maps `Δ_{φ0} D → Δ_{ψ0} D` over `A`, as maps of vertices.
fn vertex_over_a(phi: &PolyMorphism) -> FinFamily {
    FinFamily::fibres_of(&phi.projection())
}

/// The transpose `α̂(a) = ((φ0 a, ψ0 a), d ↦ ψ1(α(δ)))` of a map of vertices
/// over `A`, where `δ ∈ Dφ` lies over `(a, d)`.
pub fn transpose(phi: &PolyMorphism, psi: &PolyMorphism, alpha: &FinMap, cat: &InternalCategory) -> Result<FinMap> {
    FinMap::from_fn(phi.src().a(), &cat.mor, |a| {
        let c = phi.phi0().apply(a).unwrap();
        let c2 = psi.phi0().apply(a).unwrap();
        let k = section_label(phi.dst().f().fibre(c).iter().map(|d| {
            let delta = phi.locate(a, d).unwrap();
            (d.clone(), psi.phi1().apply(alpha.apply(&delta).unwrap()).unwrap().clone())
        }));
        Label::pair(Label::pair(c.clone(), c2.clone()), k)
    })
}

/// The inverse of [`transpose`].
pub fn untranspose(phi: &PolyMorphism, psi: &PolyMorphism, components: &FinMap) -> Result<FinMap> {
    let top = phi.projection();
    FinMap::try_from_fn(phi.vertex(), psi.vertex(), |delta| {
        let a = top.apply(delta).unwrap();
        let (_, k) = components.eval(a)?.as_pair().unwrap();
        let d = section_value(k, phi.phi1().apply(delta).unwrap())
            .ok_or_else(|| Error::NotNatural("component is not a function on the right fibre".into()))?;
        psi.locate(a, d).ok_or_else(|| Error::NotNatural("component lands outside the target fibre".into()))
    })
}

fn require_cartesian_pair(phi: &PolyMorphism, psi: &PolyMorphism) -> Result<()> {
    if !phi.is_cartesian() || !psi.is_cartesian() {
        return Err(Error::NotCartesian("internal natural transformations need cartesian morphisms".into()));
    }
    Ok(())
}

/// `α ↦ α̂`.
pub fn adjustment_to_nat(alpha: &Adjustment) -> Result<InternalNatTrans> {
    let (phi, psi) = (alpha.src(), alpha.dst());
    require_cartesian_pair(phi, psi)?;
    let src = internal_functor(phi)?;
    let dst = internal_functor(psi)?;
    let components = transpose(phi, psi, alpha.map(), &src.dst)?;
    let nat = InternalNatTrans { src, dst, components };
    nat.check()?;
    Ok(nat)
}

/// `α̂ ↦ α`; rejects non-natural families of components.
pub fn nat_to_adjustment(nat: &InternalNatTrans, phi: &PolyMorphism, psi: &PolyMorphism) -> Result<Adjustment> {
    require_cartesian_pair(phi, psi)?;
    nat.check()?;
    Adjustment::new(phi, psi, untranspose(phi, psi, &nat.components)?)
}

/// For each candidate map `α : Dφ → Dψ` over `A`, the truth values of the
/// four equivalent conditions: `α̂` is natural; naturality computed on
/// fibre functions; `γ = ψ2∘α∘φ2⁻¹` commutes with every `k`; `ψ2∘α = φ2`.
pub fn equivalence_table(phi: &PolyMorphism, psi: &PolyMorphism) -> Result<Vec<(FinMap, [bool; 4])>> {
    require_cartesian_pair(phi, psi)?;
    let f_phi = internal_functor(phi)?;
    let f_psi = internal_functor(psi)?;
    let source_cat = &f_phi.src;
    let phi2_inv = phi.phi2().inverse()?;
    let candidates = all_family_maps(&vertex_over_a(phi), &vertex_over_a(psi))?;
    let mut rows = Vec::with_capacity(candidates.len());
    for family_map in candidates {
        let alpha = family_map_to_vertex_map(&family_map, phi, psi)?;
        let components = transpose(phi, psi, &alpha, &f_phi.dst)?;
        let nat = InternalNatTrans { src: f_phi.clone(), dst: f_psi.clone(), components: components.clone() };
        let first = nat.check().is_ok();
        let second = source_cat.mor.iter().all(|k| {
            let a = source_cat.dom.apply(k).unwrap();
            let a2 = source_cat.cod.apply(k).unwrap();
            let fk = second_of(f_phi.on_mor.apply(k).unwrap());
            let gk = second_of(f_psi.on_mor.apply(k).unwrap());
            let alpha_a = second_of(components.apply(a).unwrap());
            let alpha_a2 = second_of(components.apply(a2).unwrap());
            compose_sections(gk, alpha_a) == compose_sections(alpha_a2, fk)
        });
        let gamma = psi.phi2().after(&alpha)?.after(&phi2_inv)?;
        let third = source_cat.mor.iter().all(|k| {
            let section = second_of(k);
            section_entries(section)
                .unwrap()
                .into_iter()
                .all(|(x, y)| gamma.apply(y).unwrap() == section_value(section, gamma.apply(x).unwrap()).unwrap())
        });
        let fourth = psi.phi2().after(&alpha)? == *phi.phi2();
        rows.push((alpha, [first, second, third, fourth]));
    }
    Ok(rows)
}

fn second_of(x: &Label) -> &Label {
    x.as_pair().unwrap().1
}

fn family_map_to_vertex_map(m: &FamilyMap, phi: &PolyMorphism, psi: &PolyMorphism) -> Result<FinMap> {
    let top = phi.projection();
    FinMap::from_fn(phi.vertex(), psi.vertex(), |x| m.apply(top.apply(x).unwrap(), x).unwrap().clone())
}

/// Internal natural transformations `𝔸_φ ⇒ 𝔸_ψ`, found by trying every
/// choice of component for every object.
pub fn search_nat_trans(phi: &PolyMorphism, psi: &PolyMorphism) -> Result<Vec<InternalNatTrans>> {
    require_cartesian_pair(phi, psi)?;
    let src = internal_functor(phi)?;
    let dst = internal_functor(psi)?;
    let cat = &src.dst;
    let choices: Vec<Vec<Label>> = phi
        .src()
        .a()
        .iter()
        .map(|a| cat.hom(src.on_obj.apply(a).unwrap(), dst.on_obj.apply(a).unwrap()).into_iter().cloned().collect())
        .collect();
    let total = choices.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    crate::finset::ensure_within_cap(total)?;
    let mut found = Vec::new();
    for pick in crate::finset::cartesian_indices(&choices) {
        let pairs: Vec<_> = phi.src().a().iter().cloned().zip(pick).collect();
        let components = FinMap::from_pairs(phi.src().a(), &cat.mor, &pairs)?;
        let nat = InternalNatTrans { src: src.clone(), dst: dst.clone(), components };
        if nat.check().is_ok() {
            found.push(nat);
        }
    }
    Ok(found)
}

/// `𝔸_φ` for the identity on `fromMap(f)` is the identity functor.
pub fn identity_functor_of(f: &FinMap) -> Result<InternalFunctor> {
    internal_functor(&PolyMorphism::identity(&Polynomial::from_map(f)))
}
