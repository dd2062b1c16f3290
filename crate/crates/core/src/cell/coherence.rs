//! Associators, unitors and the pentagon and triangle checks.

use crate::error::Result;
use crate::finset::FinMap;
use crate::label::{section_entries, section_label, section_value, Label};
use crate::poly::{compose, Polynomial};

use super::{hcomp, search_adjustments, Adjustment, PolyMorphism};

fn first(x: &Label) -> &Label {
    x.as_pair().unwrap().0
}

fn second(x: &Label) -> &Label {
    x.as_pair().unwrap().1
}

/// `α_{F,G,H} : (H·G)·F ⇒ H·(G·F)`, exchanging `Σ` and `Π` by choice:
/// `(e, n, q) ↦ (e, φ ↦ ⟨n(φ), q(φ, –)⟩)`, trivially on arities.
pub fn associator(f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<PolyMorphism> {
    let hg = compose(h, g)?.poly;
    let gf = compose(g, f)?.poly;
    let lhs = compose(&hg, f)?.poly;
    let rhs = compose(h, &gf)?.poly;
    // ((e, n), q) ∈ M_L, with n : φ ↦ (c_φ, φ) and q : (d, (·, φ)) ↦ (a, ·)
    let m_gf = |m_hg: &Label, q: &Label, phi: &Label| -> Label {
        let n = second(m_hg);
        let (c, _) = section_value(n, phi).unwrap().as_pair().unwrap();
        let entries: Vec<_> = g
            .f()
            .fibre(c)
            .iter()
            .map(|d| {
                let key = Label::pair(d.clone(), Label::pair(m_hg.clone(), phi.clone()));
                let a = first(section_value(q, &key).unwrap()).clone();
                (d.clone(), Label::pair(a, d.clone()))
            })
            .collect();
        Label::pair(c.clone(), section_label(entries))
    };
    let on_m = FinMap::from_fn(lhs.a(), rhs.a(), |ml| {
        let (m_hg, q) = ml.as_pair().unwrap();
        let (e, n) = m_hg.as_pair().unwrap();
        let entries: Vec<_> = section_entries(n)
            .unwrap()
            .into_iter()
            .map(|(phi, _)| (phi.clone(), Label::pair(m_gf(m_hg, q, phi), phi.clone())))
            .collect();
        Label::pair(e.clone(), section_label(entries))
    })?;
    let on_n = FinMap::from_fn(lhs.b(), rhs.b(), |x| {
        let (b, rest) = x.as_pair().unwrap();
        let (ml, n_hg) = rest.as_pair().unwrap();
        let (m_hg, q) = ml.as_pair().unwrap();
        let (d, m_phi) = n_hg.as_pair().unwrap();
        let phi = second(m_phi);
        let inner = Label::pair(b.clone(), Label::pair(m_gf(m_hg, q, phi), d.clone()));
        Label::pair(inner, Label::pair(on_m.apply(ml).unwrap().clone(), phi.clone()))
    })?;
    PolyMorphism::from_square(&lhs, &rhs, &on_n, &on_m)
}

/// `λ_F : 1·F ⇒ F`, `(j, [j ↦ (a, j)]) ↦ a`.
pub fn left_unitor(f: &Polynomial) -> Result<PolyMorphism> {
    let composite = compose(&Polynomial::identity(f.j()), f)?.poly;
    let on_m = FinMap::from_fn(composite.a(), f.a(), |m| {
        let (_, section) = m.as_pair().unwrap();
        let (_, entry) = section_entries(section).unwrap()[0];
        first(entry).clone()
    })?;
    let on_n = FinMap::from_fn(composite.b(), f.b(), |x| first(x).clone())?;
    PolyMorphism::from_square(&composite, f, &on_n, &on_m)
}

/// `ρ_F : F·1 ⇒ F`, `(a, b ↦ (i, b)) ↦ a`.
pub fn right_unitor(f: &Polynomial) -> Result<PolyMorphism> {
    let composite = compose(f, &Polynomial::identity(f.i()))?.poly;
    let on_m = FinMap::from_fn(composite.a(), f.a(), |m| first(m).clone())?;
    let on_n = FinMap::from_fn(composite.b(), f.b(), |x| second(second(x)).clone())?;
    PolyMorphism::from_square(&composite, f, &on_n, &on_m)
}

/// Whether two parallel cartesian morphisms present the same pullback
/// square, i.e. are equal up to the choice of vertex.
pub fn same_square(phi: &PolyMorphism, psi: &PolyMorphism) -> bool {
    phi.src() == psi.src()
        && phi.dst() == psi.dst()
        && phi.phi0() == psi.phi0()
        && matches!((phi.square_map(), psi.square_map()), (Ok(a), Ok(b)) if a == b)
}

/// Two parallel pasted 2-cells and the unique adjustment between them.
#[derive(Clone, Debug)]
pub struct CoherenceOutcome {
    pub lhs: PolyMorphism,
    pub rhs: PolyMorphism,
    pub adjustment: Adjustment,
}

impl CoherenceOutcome {
    fn new(lhs: PolyMorphism, rhs: PolyMorphism) -> Result<Self> {
        let adjustment = Adjustment::unique(&lhs, &rhs)?;
        Ok(CoherenceOutcome { lhs, rhs, adjustment })
    }

    /// The two sides present the same square and the comparison between
    /// their vertices is an invertible, trivial adjustment.
    pub fn holds(&self) -> bool {
        same_square(&self.lhs, &self.rhs) && self.adjustment.is_invertible() && self.adjustment.is_trivial()
    }
}

/// The two sides of the pentagon for `F, G, H, K`, from `((K·H)·G)·F` to
/// `K·(H·(G·F))`.
pub fn pentagon(f: &Polynomial, g: &Polynomial, h: &Polynomial, k: &Polynomial) -> Result<CoherenceOutcome> {
    let kh = compose(k, h)?.poly;
    let gf = compose(g, f)?.poly;
    let hg = compose(h, g)?.poly;
    let top = associator(f, g, &kh)?.then(&associator(&gf, h, k)?)?;
    let first_leg = hcomp(&associator(g, h, k)?, &PolyMorphism::identity(f))?;
    let middle = associator(f, &hg, k)?;
    let last = hcomp(&PolyMorphism::identity(k), &associator(f, g, h)?)?;
    let bottom = first_leg.then(&middle)?.then(&last)?;
    CoherenceOutcome::new(top, bottom)
}

/// The two sides of the triangle for `F : I ⇸ J` and `G : J ⇸ K`, from
/// `(G·1)·F` to `G·F`.
pub fn triangle(f: &Polynomial, g: &Polynomial) -> Result<CoherenceOutcome> {
    let id = Polynomial::identity(f.j());
    let lhs = associator(f, &id, g)?.then(&hcomp(&PolyMorphism::identity(g), &left_unitor(f)?)?)?;
    let rhs = hcomp(&right_unitor(g)?, &PolyMorphism::identity(f))?;
    CoherenceOutcome::new(lhs, rhs)
}

/// Whether exactly one adjustment `φ ⇛ ψ` exists and it is `ψ2⁻¹ ∘ φ2`.
pub fn locally_codiscrete(phi: &PolyMorphism, psi: &PolyMorphism) -> Result<bool> {
    let found = search_adjustments(phi, psi)?;
    Ok(found.len() == 1 && found[0] == Adjustment::unique(phi, psi)?)
}
