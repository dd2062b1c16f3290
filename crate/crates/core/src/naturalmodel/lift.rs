use crate::cell::{extend_morphism, PolyMorphism};
use crate::error::{Error, Result};
use crate::finset::{FamilyMap, FinFamily, FinMap, FinSet};
use crate::label::{section_label, Label};
use crate::poly::{compose, extend, extend_map, extension_composition_iso, Polynomial};

fn over_point(set: &FinSet) -> FinFamily {
    FinFamily::constant(&FinSet::unit(), set)
}

fn at_point(family: &FinFamily) -> FinSet {
    family.fibre_at(0).clone()
}

fn component_at_point(map: &FamilyMap) -> FinMap {
    map.components()[0].clone()
}

/// `P_p(X) = Σ_{x ∈ X} X^{Y_x}` for a map `p : Y → X` and a set `X`.
pub fn lift_object(p: &FinMap, x: &FinSet) -> Result<FinSet> {
    Ok(at_point(&extend(&Polynomial::from_map(p), &over_point(x))?))
}

/// `P(f) = P_p(f) : P_p(B) → P_p(A)` for `f : B → A`.
pub fn lift_apply(p: &FinMap, f: &FinMap) -> Result<FinMap> {
    let family_map = FamilyMap::new(over_point(f.dom()), over_point(f.cod()), vec![f.clone()])?;
    Ok(component_at_point(&extend_map(&Polynomial::from_map(p), &family_map)?))
}

/// The image under `P_p` of a cartesian square `φ : f ⇒ g`, again a
/// cartesian square `P(f) ⇒ P(g)`.
pub fn lift_apply_square(p: &FinMap, phi: &PolyMorphism) -> Result<PolyMorphism> {
    if !phi.src().is_one_to_one() {
        return Err(Error::BoundaryMismatch("lifting needs a square between maps".into()));
    }
    let m1 = phi.square_map()?;
    let src = Polynomial::from_map(&lift_apply(p, phi.src().f())?);
    let dst = Polynomial::from_map(&lift_apply(p, phi.dst().f())?);
    PolyMorphism::from_square(&src, &dst, &lift_apply(p, &m1)?, &lift_apply(p, phi.phi0())?)
}

/// The lift `P⁺` of a polynomial monad structure on `p : Y → X` to the
/// 2-category of maps and pullback squares.
#[derive(Clone, Debug)]
pub struct LiftedEndofunctor {
    base: FinMap,
    eta: PolyMorphism,
    mu: PolyMorphism,
}

impl LiftedEndofunctor {
    /// Requires `η : i_1 ⇒ p` and `μ : p·p ⇒ p`, both cartesian.
    pub fn new(base: &FinMap, eta: &PolyMorphism, mu: &PolyMorphism) -> Result<Self> {
        let p = Polynomial::from_map(base);
        let one = Polynomial::identity(&FinSet::unit());
        if eta.src() != &one || eta.dst() != &p {
            return Err(Error::BoundaryMismatch("η must be a morphism i_1 ⇒ p".into()));
        }
        if mu.src() != &compose(&p, &p)?.poly || mu.dst() != &p {
            return Err(Error::BoundaryMismatch("μ must be a morphism p·p ⇒ p".into()));
        }
        if !eta.is_cartesian() || !mu.is_cartesian() {
            return Err(Error::NotCartesian("the lift needs cartesian η and μ".into()));
        }
        Ok(LiftedEndofunctor { base: base.clone(), eta: eta.clone(), mu: mu.clone() })
    }

    pub fn base(&self) -> &FinMap {
        &self.base
    }

    /// `P(f)`.
    pub fn on_object(&self, f: &FinMap) -> Result<FinMap> {
        lift_apply(&self.base, f)
    }

    /// `P(f)` as a polynomial `1 ⇸ 1`.
    pub fn on_object_poly(&self, f: &FinMap) -> Result<Polynomial> {
        Ok(Polynomial::from_map(&self.on_object(f)?))
    }

    /// `P(φ)`.
    pub fn on_square(&self, phi: &PolyMorphism) -> Result<PolyMorphism> {
        lift_apply_square(&self.base, phi)
    }

    /// `(P_η)_X : X → P_p(X)`.
    pub fn unit_map(&self, x: &FinSet) -> Result<FinMap> {
        let ext = component_at_point(&extend_morphism(&self.eta, &over_point(x))?);
        FinMap::try_from_fn(x, ext.cod(), |e| {
            let tagged = Label::pair(Label::star(), section_label([(Label::star(), e.clone())]));
            Ok(ext
                .apply(&tagged)
                .ok_or_else(|| Error::NotAnElement { label: tagged, context: "P_i(X)".into() })?
                .clone())
        })
    }

    /// `(P_μ)_X ∘ (P_p P_p X ≅ P_{p·p} X)`.
    pub fn mult_map(&self, x: &FinSet) -> Result<FinMap> {
        let p = Polynomial::from_map(&self.base);
        let composite = compose(&p, &p)?;
        let iso = extension_composition_iso(&p, &p, &composite, &over_point(x))?;
        let ext = extend_morphism(&self.mu, &over_point(x))?;
        ext.after(&iso.backward).map(|m| component_at_point(&m))
    }

    /// `h_f : f ⇒ P(f)`.
    pub fn unit_at(&self, f: &FinMap) -> Result<PolyMorphism> {
        PolyMorphism::from_square(
            &Polynomial::from_map(f),
            &self.on_object_poly(f)?,
            &self.unit_map(f.dom())?,
            &self.unit_map(f.cod())?,
        )
    }

    /// `m_f : P(P(f)) ⇒ P(f)`.
    pub fn mult_at(&self, f: &FinMap) -> Result<PolyMorphism> {
        let pf = self.on_object(f)?;
        PolyMorphism::from_square(
            &self.on_object_poly(&pf)?,
            &Polynomial::from_map(&pf),
            &self.mult_map(f.dom())?,
            &self.mult_map(f.cod())?,
        )
    }
}

/// `(h_f, m_f)` for `f`.
pub fn lift_unit_mult(
    p: &FinMap,
    eta: &PolyMorphism,
    mu: &PolyMorphism,
    f: &FinMap,
) -> Result<(PolyMorphism, PolyMorphism)> {
    let lift = LiftedEndofunctor::new(p, eta, mu)?;
    Ok((lift.unit_at(f)?, lift.mult_at(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::is_pullback_square;
    use crate::naturalmodel::{mk_bool_universe, mk_skewed_universe, sigma_structure, unit_structure};

    fn l(s: &str) -> Label {
        Label::atom(s)
    }

    fn two_to_one() -> FinMap {
        let y = FinSet::numbered("y", 3);
        let x = FinSet::numbered("x", 2);
        FinMap::from_fn(&y, &x, |e| if e == &l("y0") { l("x0") } else { l("x1") }).unwrap()
    }

    #[test]
    fn lift_preserves_identities() {
        let p = two_to_one();
        let b = FinSet::numbered("b", 2);
        let lifted = lift_apply(&p, &FinMap::identity(&b)).unwrap();
        assert!(lifted.is_identity());
    }

    #[test]
    fn lifted_domain_size() {
        // Σ_x |B|^{|Y_x|} = 2 + 2² = 6 for |B| = 2
        let p = two_to_one();
        let b = FinSet::numbered("b", 2);
        let f = FinMap::to_unit(&b);
        assert_eq!(lift_apply(&p, &f).unwrap().dom().len(), 6);
        assert_eq!(lift_object(&p, &b).unwrap().len(), 6);
    }

    #[test]
    fn lift_preserves_composites_and_pullbacks() {
        let p = two_to_one();
        let b = FinSet::numbered("b", 3);
        let a = FinSet::numbered("a", 2);
        let f = FinMap::from_fn(&b, &a, |e| if e == &l("b0") { l("a0") } else { l("a1") }).unwrap();
        let c = FinSet::numbered("c", 3);
        let g = FinMap::from_fn(&a, &c, |e| if e == &l("a0") { l("c2") } else { l("c0") }).unwrap();
        let pf = lift_apply(&p, &f).unwrap();
        let pg = lift_apply(&p, &g).unwrap();
        assert_eq!(lift_apply(&p, &g.after(&f).unwrap()).unwrap(), pg.after(&pf).unwrap());

        // the square  b --f--> a  over  a --id--> a  restricted along a0
        let fp = Polynomial::from_map(&f);
        let phi = PolyMorphism::identity(&fp);
        let lifted = lift_apply_square(&p, &phi).unwrap();
        assert!(lifted.is_cartesian());
        let sq = lifted.square_map().unwrap();
        assert!(is_pullback_square(lifted.src().f(), &sq, lifted.phi0(), lifted.dst().f()));
    }

    #[test]
    fn unit_and_multiplication_components_are_pullbacks() {
        for u in [mk_bool_universe(), mk_skewed_universe()] {
            let p = u.projection();
            let lift = LiftedEndofunctor::new(&p, &unit_structure(&u).unwrap(), &sigma_structure(&u).unwrap()).unwrap();
            let f = two_to_one();
            let h = lift.unit_at(&f).unwrap();
            let m = lift.mult_at(&f).unwrap();
            assert!(h.is_cartesian() && m.is_cartesian());
            // at f = id_1 the unit component picks the unit code
            let one = FinSet::unit();
            let h1 = lift.unit_at(&FinMap::identity(&one)).unwrap();
            let (code, _) = h1.phi0().pairs().next().map(|(_, v)| v.as_pair().unwrap()).unwrap();
            assert_eq!(code, u.unit_code());
        }
    }
}
