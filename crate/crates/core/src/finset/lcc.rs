//! The locally cartesian closed structure of finite sets: chosen pullbacks,
//! and the adjoint triple `Σ_f ⊣ Δ_f ⊣ Π_f` on families.

use crate::error::{Error, Result};
use crate::label::{section_label, section_value, Label};

use super::cap::{ensure_within_cap, power};
use super::family::{FamilyMap, FinFamily};
use super::map::{cartesian_indices, FinMap};
use super::set::FinSet;

/// A chosen pullback `P = B ×_A C` of `f : B → A` and `g : C → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    /// Elements are pairs `(b, c)` with `f(b) = g(c)`.
    pub apex: FinSet,
    /// Projection `P → B`.
    pub left: FinMap,
    /// Projection `P → C`.
    pub right: FinMap,
}

impl Pullback {
    /// The unique element of the apex with the given projections, if any.
    pub fn locate(&self, b: &Label, c: &Label) -> Option<Label> {
        let candidate = Label::pair(b.clone(), c.clone());
        self.apex.contains(&candidate).then_some(candidate)
    }
}

pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(Error::CodomainMismatch("pullback of maps with different codomains".into()));
    }
    let over_g = g.fibre_indices();
    let size: u128 = f.images().iter().map(|&a| over_g[a].len() as u128).sum();
    ensure_within_cap(size)?;
    let mut elems = Vec::with_capacity(size as usize);
    let mut left = Vec::with_capacity(size as usize);
    let mut right = Vec::with_capacity(size as usize);
    for (i, b) in f.dom().iter().enumerate() {
        for &j in &over_g[f.index_at(i)] {
            elems.push(Label::pair(b.clone(), g.dom().get(j).clone()));
            left.push(i);
            right.push(j);
        }
    }
    // (b, c) pairs are generated in lexicographic order
    let apex = FinSet::from_distinct(elems);
    Ok(Pullback {
        left: FinMap::from_indices(apex.clone(), f.dom().clone(), left),
        right: FinMap::from_indices(apex.clone(), g.dom().clone(), right),
        apex,
    })
}

/// Checks that `f ∘ p1 = g ∘ p2`.
pub fn square_commutes(p1: &FinMap, p2: &FinMap, f: &FinMap, g: &FinMap) -> bool {
    match (f.after(p1), g.after(p2)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// The comparison map `P → X ×_Z Y` out of a commuting square.
pub fn pullback_comparison(p1: &FinMap, p2: &FinMap, f: &FinMap, g: &FinMap) -> Result<FinMap> {
    if !square_commutes(p1, p2, f, g) {
        return Err(Error::NotCommuting("square does not commute".into()));
    }
    let pb = pullback(f, g)?;
    FinMap::from_fn(p1.dom(), &pb.apex, |x| Label::pair(p1.apply(x).unwrap().clone(), p2.apply(x).unwrap().clone()))
}

/// Decides whether the commuting square
///
/// ```text
///   P --p2--> Y
///   |         |
///   p1        g
///   v         v
///   X --f---> Z
/// ```
///
/// is a pullback, i.e. whether every compatible pair of points `(x, y)`
/// lifts to exactly one point of `P`.
pub fn is_pullback_square(p1: &FinMap, p2: &FinMap, f: &FinMap, g: &FinMap) -> bool {
    pullback_comparison(p1, p2, f, g).is_ok_and(|c| c.is_bijective())
}

/// Like [`is_pullback_square`] but reports why a square fails.
pub fn check_pullback_square(p1: &FinMap, p2: &FinMap, f: &FinMap, g: &FinMap) -> Result<()> {
    let comparison = pullback_comparison(p1, p2, f, g)?;
    if !comparison.is_injective() {
        return Err(Error::NotAPullback("two points of the apex have the same projections".into()));
    }
    if !comparison.is_surjective() {
        let missing = comparison
            .cod()
            .iter()
            .find(|p| !comparison.images().iter().any(|&j| comparison.cod().get(j) == *p))
            .cloned();
        return Err(Error::NotAPullback(format!(
            "compatible pair {} has no lift",
            missing.map(|m| m.to_string()).unwrap_or_default()
        )));
    }
    Ok(())
}

fn require_index(f: &FinMap, x: &FinFamily, what: &str) -> Result<()> {
    if x.index() != f.dom() {
        return Err(Error::IndexMismatch(format!("{what}: family index is not the domain of the map")));
    }
    Ok(())
}

/// `Σ_f X`: the fibre over `a` is `{(b, x) | f(b) = a, x ∈ X_b}`.
pub fn dep_sum(f: &FinMap, x: &FinFamily) -> Result<FinFamily> {
    require_index(f, x, "dependent sum")?;
    ensure_within_cap(x.total_len() as u128)?;
    let over = f.fibre_indices();
    Ok(FinFamily::from_fn(f.cod(), |a| {
        let k = f.cod().index_of(a).unwrap();
        let mut elems = Vec::new();
        for &i in &over[k] {
            let b = f.dom().get(i);
            for e in x.fibre_at(i) {
                elems.push(Label::pair(b.clone(), e.clone()));
            }
        }
        FinSet::from_distinct(elems)
    }))
}

/// `Π_f X`: the fibre over `a` is the set of sections `t` with
/// `t(b) ∈ X_b` for every `b` over `a`, each encoded as its sorted
/// assignment list.
pub fn dep_prod(f: &FinMap, x: &FinFamily) -> Result<FinFamily> {
    require_index(f, x, "dependent product")?;
    let over = f.fibre_indices();
    let mut total: u128 = 0;
    for ids in &over {
        let size = ids.iter().fold(1u128, |acc, &i| acc.saturating_mul(x.fibre_at(i).len() as u128));
        total = total.saturating_add(size);
    }
    ensure_within_cap(total)?;
    Ok(FinFamily::from_fn(f.cod(), |a| {
        let k = f.cod().index_of(a).unwrap();
        let choices: Vec<Vec<(Label, Label)>> = over[k]
            .iter()
            .map(|&i| {
                let b = f.dom().get(i);
                x.fibre_at(i).iter().map(|e| (b.clone(), e.clone())).collect()
            })
            .collect();
        FinSet::from_distinct(cartesian_indices(&choices).into_iter().map(section_label).collect())
    }))
}

/// `Δ_f X`: the fibre over `b` is `X_{f(b)}`.
pub fn base_change(f: &FinMap, x: &FinFamily) -> Result<FinFamily> {
    if x.index() != f.cod() {
        return Err(Error::IndexMismatch("base change: family index is not the codomain of the map".into()));
    }
    Ok(FinFamily::from_fn(f.dom(), |b| x.fibre(f.apply(b).unwrap()).unwrap().clone()))
}

/// `Σ_f` on maps of families: `(b, x) ↦ (b, φ_b(x))`.
pub fn dep_sum_map(f: &FinMap, phi: &FamilyMap) -> Result<FamilyMap> {
    let src = dep_sum(f, phi.src())?;
    let dst = dep_sum(f, phi.dst())?;
    FamilyMap::from_fn(&src, &dst, |_, e| {
        let (b, x) = e.as_pair().unwrap();
        Label::pair(b.clone(), phi.apply(b, x).unwrap().clone())
    })
}

/// `Π_f` on maps of families: `t ↦ φ ∘ t`.
pub fn dep_prod_map(f: &FinMap, phi: &FamilyMap) -> Result<FamilyMap> {
    let src = dep_prod(f, phi.src())?;
    let dst = dep_prod(f, phi.dst())?;
    FamilyMap::from_fn(&src, &dst, |_, t| {
        let entries = crate::label::section_entries(t).unwrap();
        section_label(entries.into_iter().map(|(b, x)| (b.clone(), phi.apply(b, x).unwrap().clone())))
    })
}

/// `Δ_f` on maps of families.
pub fn base_change_map(f: &FinMap, phi: &FamilyMap) -> Result<FamilyMap> {
    let src = base_change(f, phi.src())?;
    let dst = base_change(f, phi.dst())?;
    FamilyMap::from_fn(&src, &dst, |b, x| phi.apply(f.apply(b).unwrap(), x).unwrap().clone())
}

/// Fibrewise function sets: the fibre over `z` is `Y_z^{X_z}`.
pub fn slice_exponential_families(x: &FinFamily, y: &FinFamily) -> Result<FinFamily> {
    if x.index() != y.index() {
        return Err(Error::IndexMismatch("exponential of families over different bases".into()));
    }
    let total =
        x.fibres().iter().zip(y.fibres()).fold(0u128, |acc, (a, b)| acc.saturating_add(power(b.len(), a.len())));
    ensure_within_cap(total)?;
    let mut fibres = Vec::with_capacity(x.index().len());
    for (a, b) in x.fibres().iter().zip(y.fibres()) {
        let choices: Vec<Vec<(Label, Label)>> =
            a.iter().map(|e| b.iter().map(|v| (e.clone(), v.clone())).collect()).collect();
        fibres.push(FinSet::from_distinct(cartesian_indices(&choices).into_iter().map(section_label).collect()));
    }
    FinFamily::new(x.index().clone(), fibres)
}

/// The exponential `f2^{f1}` in the slice over the common codomain `Z`,
/// returned as a map over `Z` whose domain elements are `(z, function)`.
pub fn slice_exponential(f1: &FinMap, f2: &FinMap) -> Result<FinMap> {
    if f1.cod() != f2.cod() {
        return Err(Error::CodomainMismatch("slice exponential over different bases".into()));
    }
    let fam = slice_exponential_families(&FinFamily::fibres_of(f1), &FinFamily::fibres_of(f2))?;
    Ok(fam.total_space())
}

/// Transpose for `Δ_f ⊣ Π_f`: a map `Δ_f Y → X` over `B` becomes a map
/// `Y → Π_f X` over `A`.
pub fn pi_transpose(f: &FinMap, y: &FinFamily, x: &FinFamily, phi: &FamilyMap) -> Result<FamilyMap> {
    let pi = dep_prod(f, x)?;
    let over = f.fibre_indices();
    FamilyMap::from_fn(y, &pi, |a, e| {
        let k = f.cod().index_of(a).unwrap();
        section_label(over[k].iter().map(|&i| {
            let b = f.dom().get(i);
            (b.clone(), phi.apply(b, e).unwrap().clone())
        }))
    })
}

/// Inverse of [`pi_transpose`].
pub fn pi_untranspose(f: &FinMap, y: &FinFamily, x: &FinFamily, psi: &FamilyMap) -> Result<FamilyMap> {
    let pulled = base_change(f, y)?;
    FamilyMap::from_fn(&pulled, x, |b, e| {
        let a = f.apply(b).unwrap();
        let t = psi.apply(a, e).unwrap();
        section_value(t, b).unwrap().clone()
    })
}

/// Transpose for `Σ_f ⊣ Δ_f`: a map `Σ_f X → Y` over `A` becomes a map
/// `X → Δ_f Y` over `B`.
pub fn sigma_transpose(f: &FinMap, x: &FinFamily, y: &FinFamily, phi: &FamilyMap) -> Result<FamilyMap> {
    let pulled = base_change(f, y)?;
    FamilyMap::from_fn(x, &pulled, |b, e| {
        let a = f.apply(b).unwrap();
        phi.apply(a, &Label::pair(b.clone(), e.clone())).unwrap().clone()
    })
}

/// Inverse of [`sigma_transpose`].
pub fn sigma_untranspose(f: &FinMap, x: &FinFamily, y: &FinFamily, psi: &FamilyMap) -> Result<FamilyMap> {
    let sum = dep_sum(f, x)?;
    FamilyMap::from_fn(&sum, y, |_, pair| {
        let (b, e) = pair.as_pair().unwrap();
        psi.apply(b, e).unwrap().clone()
    })
}
