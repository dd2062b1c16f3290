use crate::error::{Error, Result};
use crate::finset::{check_pullback_square, dep_prod, pullback, FamilyMap, FinFamily, FinMap, FinSet, Pullback};
use crate::label::{section_entries, section_label, section_value, Label};

use super::{extend, Polynomial};

/// Every intermediate object and map in the construction of `G·F`
/// for `F = (s, f, t) : I ⇸ J` and `G = (u, g, v) : J ⇸ K`.
///
/// ```text
///                 N --p--> Q --q--> M
///               n |   (3)  e\  (2)  | w
///                 |        P  \     |
///                 v    pa/ (1) \h   v
///          I <-s- B --f-> A     D --g-> C --v-> K
///                         t\   /u
///                            J
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionTrace {
    /// Square (1): `P = A ×_J D`, elements `(a, d)`.
    pub square1: Pullback,
    /// `h : P → D`, the second projection of square (1).
    pub h: FinMap,
    /// `M = Σ_C Π_g h`, elements `(c, section)` where the section sends each
    /// `d` over `c` to some `(a, d) ∈ P`.
    pub m: FinSet,
    /// `w = Π_g(h) : M → C`.
    pub w: FinMap,
    /// Square (2): `Q = M ×_C D`, elements `(m, d)`.
    pub square2: Pullback,
    /// The counit `e : Q → P` of `Δ_g ⊣ Π_g` at `h`: `(m, d) ↦ m(d)`.
    pub e: FinMap,
    /// Square (3): `N = B ×_A Q`, elements `(b, (m, d))`.
    pub square3: Pullback,
    pub n: FinMap,
    pub p: FinMap,
    pub q: FinMap,
}

impl CompositionTrace {
    /// Re-checks every square of the construction by enumeration.
    pub fn validate(&self, outer: &Polynomial, inner: &Polynomial) -> Result<()> {
        check_pullback_square(&self.square1.left, &self.square1.right, inner.t(), outer.s())?;
        check_pullback_square(&self.square2.left, &self.square2.right, &self.w, outer.f())?;
        let pa_e = self.square1.left.after(&self.e)?;
        check_pullback_square(&self.square3.left, &self.square3.right, inner.f(), &pa_e)?;
        if self.h.after(&self.e)? != self.square2.right {
            return Err(Error::NotCommuting("the counit does not lie over D".into()));
        }
        let rebuilt = dep_prod(outer.f(), &FinFamily::fibres_of(&self.h))?.total_space();
        if rebuilt != self.w {
            return Err(Error::NotCommuting("w is not the dependent product of h".into()));
        }
        Ok(())
    }
}

/// The chosen composite `G·F` together with the trace of its construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composite {
    pub poly: Polynomial,
    pub trace: CompositionTrace,
}

/// Composes `G : J ⇸ K` after `F : I ⇸ J` using pullbacks, a dependent
/// product and the counit of `Δ_g ⊣ Π_g`.
pub fn compose(outer: &Polynomial, inner: &Polynomial) -> Result<Composite> {
    if inner.j() != outer.i() {
        return Err(Error::BoundaryMismatch("inner codomain differs from outer domain".into()));
    }
    let square1 = pullback(inner.t(), outer.s())?;
    let h = square1.right.clone();
    let w = dep_prod(outer.f(), &FinFamily::fibres_of(&h))?.total_space();
    let m = w.dom().clone();
    let square2 = pullback(&w, outer.f())?;
    let e = FinMap::from_fn(&square2.apex, &square1.apex, |qd| {
        let (m, d) = qd.as_pair().unwrap();
        let (_, section) = m.as_pair().unwrap();
        section_value(section, d).unwrap().clone()
    })?;
    let pa_e = square1.left.after(&e)?;
    let square3 = pullback(inner.f(), &pa_e)?;
    let n = square3.left.clone();
    let p = square3.right.clone();
    let q = square2.left.clone();
    let poly = Polynomial::new(inner.s().after(&n)?, q.after(&p)?, outer.t().after(&w)?)?;
    Ok(Composite { poly, trace: CompositionTrace { square1, h, m, w, square2, e, square3, n, p, q } })
}

/// The composite computed directly from its element-level description:
/// `M_k = Σ_{c ∈ C_k} Π_{d ∈ D_c} A_{u(d)}` and
/// `N_{(c,m)} = Σ_{d ∈ D_c} B_{m(d)}`.
pub fn compose_explicit(outer: &Polynomial, inner: &Polynomial) -> Result<Polynomial> {
    if inner.j() != outer.i() {
        return Err(Error::BoundaryMismatch("inner codomain differs from outer domain".into()));
    }
    let mut m_elems = Vec::new();
    for c in outer.a() {
        let over_c = outer.f().fibre(c);
        let choices: Vec<Vec<(Label, Label)>> = over_c
            .iter()
            .map(|d| {
                let j = outer.s().apply(d).unwrap();
                inner.t().fibre(j).iter().map(|a| (d.clone(), Label::pair(a.clone(), d.clone()))).collect()
            })
            .collect();
        let count = choices.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
        crate::finset::ensure_within_cap((m_elems.len() as u128).saturating_add(count))?;
        for section in crate::finset::cartesian_indices(&choices) {
            m_elems.push(Label::pair(c.clone(), section_label(section)));
        }
    }
    let m = FinSet::new(m_elems)?;
    let mut n_elems = Vec::new();
    for mm in &m {
        let (_, section) = mm.as_pair().unwrap();
        for (d, ad) in section_entries(section).unwrap() {
            let (a, _) = ad.as_pair().unwrap();
            for b in inner.f().fibre(a).iter() {
                n_elems.push(Label::pair(b.clone(), Label::pair(mm.clone(), d.clone())));
            }
        }
    }
    crate::finset::ensure_within_cap(n_elems.len() as u128)?;
    let n = FinSet::new(n_elems)?;
    let first = |x: &Label| x.as_pair().unwrap().0.clone();
    let source = FinMap::from_fn(&n, inner.i(), |x| inner.s().apply(&first(x)).unwrap().clone())?;
    let middle = FinMap::from_fn(&n, &m, |x| first(x.as_pair().unwrap().1))?;
    let target = FinMap::from_fn(&m, outer.j(), |x| outer.t().apply(&first(x)).unwrap().clone())?;
    Polynomial::new(source, middle, target)
}

/// The components of `P_{G·F}(X) ≅ P_G(P_F(X))` in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionIso {
    pub forward: FamilyMap,
    pub backward: FamilyMap,
}

/// Builds the bijection `P_{G·F}(X)_k ≅ P_G(P_F(X))_k` sending
/// `((c, m), σ)` to `(c, d ↦ (a_d, b ↦ σ(b, (m, d))))`, and its inverse.
pub fn extension_composition_iso(
    outer: &Polynomial,
    inner: &Polynomial,
    composite: &Composite,
    x: &FinFamily,
) -> Result<ExtensionIso> {
    let lhs = extend(&composite.poly, x)?;
    let rhs = extend(outer, &extend(inner, x)?)?;
    let forward = FamilyMap::from_fn(&lhs, &rhs, |_, e| {
        let (m, sigma) = e.as_pair().unwrap();
        let (c, section) = m.as_pair().unwrap();
        let entries = section_entries(section).unwrap().into_iter().map(|(d, ad)| {
            let (a, _) = ad.as_pair().unwrap();
            let arities = inner.f().fibre(a);
            let tau: Vec<_> = arities
                .iter()
                .map(|b| {
                    let key = Label::pair(b.clone(), Label::pair(m.clone(), d.clone()));
                    (b.clone(), section_value(sigma, &key).unwrap().clone())
                })
                .collect();
            (d.clone(), Label::pair(a.clone(), section_label(tau)))
        });
        Label::pair(c.clone(), section_label(entries.collect::<Vec<_>>()))
    })?;
    let backward = FamilyMap::from_fn(&rhs, &lhs, |_, e| {
        let (c, rho) = e.as_pair().unwrap();
        let rho = section_entries(rho).unwrap();
        let m = Label::pair(
            c.clone(),
            section_label(rho.iter().map(|(d, atau)| {
                let (a, _) = atau.as_pair().unwrap();
                ((*d).clone(), Label::pair(a.clone(), (*d).clone()))
            })),
        );
        let mut sigma = Vec::new();
        for (d, atau) in &rho {
            let (_, tau) = atau.as_pair().unwrap();
            for (b, value) in section_entries(tau).unwrap() {
                sigma.push((Label::pair(b.clone(), Label::pair(m.clone(), (*d).clone())), value.clone()));
            }
        }
        sigma.sort();
        Label::pair(m, section_label(sigma))
    })?;
    Ok(ExtensionIso { forward, backward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::extension_fibre_size;

    fn l(s: &str) -> Label {
        Label::atom(s)
    }

    fn sample() -> (Polynomial, Polynomial) {
        // F : 2 ⇸ 2, G : 2 ⇸ 1
        let i = FinSet::numbered("i", 2);
        let j = FinSet::numbered("j", 2);
        let b = FinSet::numbered("b", 3);
        let a = FinSet::numbered("a", 2);
        let s = FinMap::from_fn(&b, &i, |x| if x == &l("b2") { l("i1") } else { l("i0") }).unwrap();
        let f = FinMap::from_fn(&b, &a, |x| if x == &l("b0") { l("a0") } else { l("a1") }).unwrap();
        let t = FinMap::from_fn(&a, &j, |x| if x == &l("a0") { l("j0") } else { l("j1") }).unwrap();
        let inner = Polynomial::new(s, f, t).unwrap();
        let d = FinSet::numbered("d", 2);
        let c = FinSet::numbered("c", 2);
        let u = FinMap::from_fn(&d, &j, |x| if x == &l("d0") { l("j0") } else { l("j1") }).unwrap();
        let g = FinMap::constant(&d, &c, &l("c1")).unwrap();
        let outer = Polynomial::new(u, g, FinMap::to_unit(&c)).unwrap();
        (outer, inner)
    }

    #[test]
    fn categorical_and_explicit_composites_agree() {
        let (outer, inner) = sample();
        let comp = compose(&outer, &inner).unwrap();
        comp.trace.validate(&outer, &inner).unwrap();
        assert_eq!(comp.poly, compose_explicit(&outer, &inner).unwrap());
        // c0 has no arities: one operation; c1 picks an a over each of d0, d1
        assert_eq!(comp.poly.a().len(), 2);
    }

    #[test]
    fn composite_extension_matches_iterated_extension() {
        let (outer, inner) = sample();
        let comp = compose(&outer, &inner).unwrap();
        let x = FinFamily::new(inner.i().clone(), vec![FinSet::numbered("x", 2), FinSet::numbered("y", 1)]).unwrap();
        let iso = extension_composition_iso(&outer, &inner, &comp, &x).unwrap();
        assert!(iso.forward.is_bijective());
        assert_eq!(iso.backward.after(&iso.forward).unwrap(), FamilyMap::identity(iso.forward.src()));
        assert_eq!(iso.forward.after(&iso.backward).unwrap(), FamilyMap::identity(iso.forward.dst()));
        let sizes = extension_fibre_size(&comp.poly, &x).unwrap();
        let iterated = extension_fibre_size(&outer, &extend(&inner, &x).unwrap()).unwrap();
        assert_eq!(sizes, iterated);
    }

    #[test]
    fn identity_is_a_unit_up_to_extension_size() {
        let (_, inner) = sample();
        let left = compose(&Polynomial::identity(inner.j()), &inner).unwrap().poly;
        let right = compose(&inner, &Polynomial::identity(inner.i())).unwrap().poly;
        let x = FinFamily::new(inner.i().clone(), vec![FinSet::numbered("x", 3), FinSet::numbered("y", 2)]).unwrap();
        let expected = extension_fibre_size(&inner, &x).unwrap();
        assert_eq!(extension_fibre_size(&left, &x).unwrap(), expected);
        assert_eq!(extension_fibre_size(&right, &x).unwrap(), expected);
    }

    #[test]
    fn boundary_mismatch() {
        let (outer, inner) = sample();
        assert!(matches!(compose(&inner, &outer), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn linear_composite_is_span_composite() {
        // spans 2 ← 3 → 2 and 2 ← 2 → 1; the composite span's apex is their pullback
        let i = FinSet::numbered("i", 2);
        let j = FinSet::numbered("j", 2);
        let x = FinSet::numbered("x", 3);
        let y = FinSet::numbered("y", 2);
        let s1 = FinMap::from_fn(&x, &i, |e| if e == &l("x0") { l("i0") } else { l("i1") }).unwrap();
        let t1 = FinMap::from_fn(&x, &j, |e| if e == &l("x2") { l("j0") } else { l("j1") }).unwrap();
        let s2 = FinMap::from_fn(&y, &j, |e| if e == &l("y0") { l("j1") } else { l("j0") }).unwrap();
        let t2 = FinMap::to_unit(&y);
        let f1 = Polynomial::linear(&s1, &t1).unwrap();
        let f2 = Polynomial::linear(&s2, &t2).unwrap();
        let comp = compose(&f2, &f1).unwrap().poly;
        let apex = pullback(&t1, &s2).unwrap();
        let xs = FinFamily::new(i.clone(), vec![FinSet::numbered("p", 2), FinSet::numbered("q", 3)]).unwrap();
        // span-composition oracle: Σ over the apex of X_{s1(x)}
        let oracle: usize = apex.left.pairs().map(|(_, xx)| xs.fibre(s1.apply(xx).unwrap()).unwrap().len()).sum();
        assert_eq!(extend(&comp, &xs).unwrap().total_len(), oracle);
        assert!(comp.f().is_bijective());
    }
}
