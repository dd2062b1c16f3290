use crate::error::{Error, Result};
use crate::finset::{all_maps, FinMap};
use crate::label::Label;

use super::PolyMorphism;

/// An adjustment `α : φ ⇛ ψ`: a map `Dφ → Dψ` over `B`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Adjustment {
    src: PolyMorphism,
    dst: PolyMorphism,
    alpha: FinMap,
}

fn require_parallel(phi: &PolyMorphism, psi: &PolyMorphism) -> Result<()> {
    if phi.src() != psi.src() || phi.dst() != psi.dst() {
        return Err(Error::BoundaryMismatch("adjustments relate parallel morphisms".into()));
    }
    Ok(())
}

impl Adjustment {
    pub fn new(src: &PolyMorphism, dst: &PolyMorphism, alpha: FinMap) -> Result<Self> {
        require_parallel(src, dst)?;
        if alpha.dom() != src.vertex() || alpha.cod() != dst.vertex() {
            return Err(Error::BoundaryMismatch("α must be a map Dφ → Dψ".into()));
        }
        if dst.phi2().after(&alpha)? != *src.phi2() {
            return Err(Error::TriangleFailure("ψ2∘α ≠ φ2".into()));
        }
        Ok(Adjustment { src: src.clone(), dst: dst.clone(), alpha })
    }

    pub fn identity(phi: &PolyMorphism) -> Self {
        Adjustment { src: phi.clone(), dst: phi.clone(), alpha: FinMap::identity(phi.vertex()) }
    }

    /// `ψ2⁻¹ ∘ φ2`, the only adjustment into a cartesian `ψ`.
    pub fn unique(phi: &PolyMorphism, psi: &PolyMorphism) -> Result<Self> {
        require_parallel(phi, psi)?;
        if !psi.is_cartesian() {
            return Err(Error::NotCartesian("the target of a unique adjustment must be cartesian".into()));
        }
        let alpha = psi.phi2().inverse()?.after(phi.phi2())?;
        Adjustment::new(phi, psi, alpha)
    }

    pub fn src(&self) -> &PolyMorphism {
        &self.src
    }

    pub fn dst(&self) -> &PolyMorphism {
        &self.dst
    }

    pub fn map(&self) -> &FinMap {
        &self.alpha
    }

    /// `β ∘ α` for `α : φ ⇛ ψ` and `β : ψ ⇛ χ`.
    pub fn then(&self, beta: &Adjustment) -> Result<Adjustment> {
        if self.dst != beta.src {
            return Err(Error::BoundaryMismatch("composing non-composable adjustments".into()));
        }
        Adjustment::new(&self.src, &beta.dst, beta.alpha.after(&self.alpha)?)
    }

    pub fn is_invertible(&self) -> bool {
        self.alpha.is_bijective()
    }

    pub fn inverse(&self) -> Result<Adjustment> {
        Adjustment::new(&self.dst, &self.src, self.alpha.inverse()?)
    }

    /// Literally the identity: equal endpoints and `α = id`.
    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.alpha.is_identity()
    }

    /// Identity up to the choice of pullback vertices: both morphisms have
    /// the same `φ0` and `α` is compatible with `φ1`, so the two morphisms
    /// present the same square and `α` is the canonical comparison.
    pub fn is_trivial(&self) -> bool {
        self.src.phi0() == self.dst.phi0() && self.dst.phi1().after(&self.alpha).is_ok_and(|m| m == *self.src.phi1())
    }
}

/// `adjVComp(β, α) = β ∘ α`.
pub fn adj_vcomp(beta: &Adjustment, alpha: &Adjustment) -> Result<Adjustment> {
    alpha.then(beta)
}

/// Every adjustment `φ ⇛ ψ`, found by filtering all maps `Dφ → Dψ`.
pub fn search_adjustments(phi: &PolyMorphism, psi: &PolyMorphism) -> Result<Vec<Adjustment>> {
    require_parallel(phi, psi)?;
    Ok(all_maps(phi.vertex(), psi.vertex())?
        .into_iter()
        .filter_map(|alpha| Adjustment::new(phi, psi, alpha).ok())
        .collect())
}

/// For `β : ω ⇛ ω′` between morphisms `G ⇒ H` and `χ : F ⇒ G`, the
/// adjustment `ω∘χ ⇛ ω′∘χ`, `(a, δ) ↦ (a, β δ)`.
pub fn whisker_pre(beta: &Adjustment, chi: &PolyMorphism) -> Result<Adjustment> {
    let src = chi.then(beta.src())?;
    let dst = chi.then(beta.dst())?;
    let alpha = FinMap::from_fn(src.vertex(), dst.vertex(), |x| {
        let (a, delta) = x.as_pair().unwrap();
        Label::pair(a.clone(), beta.map().apply(delta).unwrap().clone())
    })?;
    Adjustment::new(&src, &dst, alpha)
}

/// For cartesian `ω : G ⇒ H` and `α : φ ⇛ φ′` between morphisms `F ⇒ G`,
/// the adjustment `ω∘φ ⇛ ω∘φ′`. Cartesianness of `ω` is what makes the
/// target vertex reachable when `φ0 ≠ φ′0`.
pub fn whisker_post(omega: &PolyMorphism, alpha: &Adjustment) -> Result<Adjustment> {
    if !omega.is_cartesian() {
        return Err(Error::NotCartesian("post-whiskering needs a cartesian morphism".into()));
    }
    let src = alpha.src().then(omega)?;
    let dst = alpha.dst().then(omega)?;
    let omega2_inv = omega.phi2().inverse()?;
    let phi = alpha.src();
    let back = phi.vertex_comparison().inverse()?;
    let map = FinMap::from_fn(src.vertex(), dst.vertex(), |x| {
        let (a, delta) = x.as_pair().unwrap();
        let d = omega.phi2().apply(delta).unwrap();
        let eps = back.apply(&Label::pair(a.clone(), d.clone())).unwrap();
        let moved = alpha.dst().phi1().apply(alpha.map().apply(eps).unwrap()).unwrap();
        Label::pair(a.clone(), omega2_inv.apply(moved).unwrap().clone())
    })?;
    Adjustment::new(&src, &dst, map)
}

/// `c(β, α) : ψ∘φ ⇛ ψ′∘φ′`, defined as `whisker_pre(β, φ′) ∘ whisker_post(ψ, α)`;
/// requires `ψ` cartesian.
pub fn adj_hcomp(beta: &Adjustment, alpha: &Adjustment) -> Result<Adjustment> {
    whisker_post(beta.src(), alpha)?.then(&whisker_pre(beta, alpha.dst())?)
}

impl std::fmt::Debug for Adjustment {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "Adjustment({:?})", self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;
    use crate::poly::Polynomial;

    fn l(s: &str) -> Label {
        Label::atom(s)
    }

    /// Two parallel morphisms `fromMap(b → 1) ⇒ fromMap(d → 1)` for the
    /// constant 1 ⇸ 1 polynomials with `|b| = 2`, `|d| = 2`.
    fn parallel() -> (Polynomial, Polynomial, PolyMorphism, PolyMorphism) {
        let b = FinSet::numbered("b", 2);
        let d = FinSet::numbered("d", 2);
        let p = Polynomial::from_map(&FinMap::to_unit(&b));
        let q = Polynomial::from_map(&FinMap::to_unit(&d));
        let one = FinSet::unit();
        let swap = FinMap::from_fn(&d, &b, |x| if x == &l("d0") { l("b1") } else { l("b0") }).unwrap();
        let straight = FinMap::from_fn(&d, &b, |x| if x == &l("d0") { l("b0") } else { l("b1") }).unwrap();
        let phi = PolyMorphism::new(&p, &q, FinMap::identity(&one), FinMap::identity(&d), straight).unwrap();
        let psi = PolyMorphism::new(&p, &q, FinMap::identity(&one), FinMap::identity(&d), swap).unwrap();
        (p, q, phi, psi)
    }

    #[test]
    fn identity_and_unique_agree_on_equal_morphisms() {
        let (_, _, phi, _) = parallel();
        assert_eq!(Adjustment::unique(&phi, &phi).unwrap(), Adjustment::identity(&phi));
        assert!(Adjustment::identity(&phi).is_identity());
    }

    #[test]
    fn unique_adjustment_is_the_only_one() {
        let (_, _, phi, psi) = parallel();
        let found = search_adjustments(&phi, &psi).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0], Adjustment::unique(&phi, &psi).unwrap());
        assert!(found[0].is_invertible());
        assert!(!found[0].is_trivial());
    }

    #[test]
    fn several_adjustments_into_non_cartesian_target() {
        // φ : fromMap(1 → 1) ⇒ fromMap(2 → 1) with φ2 : 2 → 1 collapsing
        let one = FinSet::unit();
        let p = Polynomial::from_map(&FinMap::to_unit(&one));
        let two = FinSet::numbered("d", 2);
        let q = Polynomial::from_map(&FinMap::to_unit(&two));
        let to_one = FinMap::to_unit(&two);
        let phi = PolyMorphism::new(&p, &q, FinMap::identity(&one), FinMap::identity(&two), to_one.clone()).unwrap();
        let found = search_adjustments(&phi, &phi).unwrap();
        // every map 2 → 2 lies over the single arity
        assert_eq!(found.len(), 4);
        assert!(matches!(Adjustment::unique(&phi, &phi), Err(Error::NotCartesian(_))));
    }

    #[test]
    fn triangle_failure_is_reported() {
        let (_, _, phi, psi) = parallel();
        let err = Adjustment::new(&phi, &psi, FinMap::identity(phi.vertex())).unwrap_err();
        assert!(matches!(err, Error::TriangleFailure(_)));
    }

    #[test]
    fn vertical_composition_is_map_composition() {
        let (_, _, phi, psi) = parallel();
        let a = Adjustment::unique(&phi, &psi).unwrap();
        let b = Adjustment::unique(&psi, &phi).unwrap();
        let round = adj_vcomp(&b, &a).unwrap();
        assert!(round.is_identity());
        assert_eq!(adj_vcomp(&a, &Adjustment::identity(&phi)).unwrap(), a);
        assert_eq!(a.inverse().unwrap(), b);
    }

    #[test]
    fn interchange_on_a_small_instance() {
        let (_, q, phi, psi) = parallel();
        let id_q = PolyMorphism::identity(&q);
        let alpha = Adjustment::unique(&phi, &psi).unwrap();
        let beta = Adjustment::identity(&id_q);
        let alpha_back = Adjustment::unique(&psi, &phi).unwrap();
        // (β′∘β)·(α′∘α) = (β′·α′)∘(β·α)
        let lhs = adj_hcomp(&beta.then(&beta).unwrap(), &alpha.then(&alpha_back).unwrap()).unwrap();
        let rhs = adj_hcomp(&beta, &alpha).unwrap().then(&adj_hcomp(&beta, &alpha_back).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.is_identity());
    }
}
