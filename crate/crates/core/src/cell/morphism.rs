use crate::error::{Error, Result};
use crate::finset::{check_pullback_square, pullback, pullback_comparison, FinMap, FinSet};
use crate::label::Label;
use crate::poly::Polynomial;

/// A morphism of polynomials `φ : F ⇒ G` between `F = (s, f, t)` and
/// `G = (u, g, v)`, both `I ⇸ J`:
///
/// ```text
///        B --f--> A
///     φ2 ^        ‖
///        Dφ ----> A
///     φ1 |   ⌟    | φ0
///        v        v
///        D --g--> C
/// ```
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMorphism {
    src: Polynomial,
    dst: Polynomial,
    phi0: FinMap,
    phi1: FinMap,
    phi2: FinMap,
}

impl PolyMorphism {
    /// Validates the shape, the three commuting conditions and the pullback
    /// condition, reporting each failure with a distinct error.
    pub fn new(src: &Polynomial, dst: &Polynomial, phi0: FinMap, phi1: FinMap, phi2: FinMap) -> Result<Self> {
        if src.i() != dst.i() || src.j() != dst.j() {
            return Err(Error::BoundaryMismatch("morphisms relate polynomials with the same endpoints".into()));
        }
        if phi0.dom() != src.a() || phi0.cod() != dst.a() {
            return Err(Error::BoundaryMismatch("φ0 must be a map A → C".into()));
        }
        if phi1.dom() != phi2.dom() {
            return Err(Error::BoundaryMismatch("φ1 and φ2 must share the vertex Dφ".into()));
        }
        if phi1.cod() != dst.b() || phi2.cod() != src.b() {
            return Err(Error::BoundaryMismatch("φ1 must land in D and φ2 in B".into()));
        }
        if dst.t().after(&phi0)? != *src.t() {
            return Err(Error::NotCommuting("t ≠ v∘φ0".into()));
        }
        if src.s().after(&phi2)? != dst.s().after(&phi1)? {
            return Err(Error::NotCommuting("s∘φ2 ≠ u∘φ1".into()));
        }
        let top = src.f().after(&phi2)?;
        if dst.f().after(&phi1)? != phi0.after(&top)? {
            return Err(Error::NotCommuting("g∘φ1 ≠ φ0∘f∘φ2".into()));
        }
        check_pullback_square(&top, &phi1, &phi0, dst.f())?;
        Ok(PolyMorphism { src: src.clone(), dst: dst.clone(), phi0, phi1, phi2 })
    }

    /// The identity morphism, with vertex `B`.
    pub fn identity(poly: &Polynomial) -> Self {
        PolyMorphism {
            src: poly.clone(),
            dst: poly.clone(),
            phi0: FinMap::identity(poly.a()),
            phi1: FinMap::identity(poly.b()),
            phi2: FinMap::identity(poly.b()),
        }
    }

    /// The cartesian morphism presented by a pullback square
    ///
    /// ```text
    ///   B --f--> A
    ///   m1|  ⌟   | m0
    ///   D --g--> C
    /// ```
    ///
    /// with vertex the chosen pullback `Δ_{m0} D` and `φ′2` the canonical
    /// comparison isomorphism.
    pub fn from_square(src: &Polynomial, dst: &Polynomial, m1: &FinMap, m0: &FinMap) -> Result<Self> {
        if m1.dom() != src.b() || m1.cod() != dst.b() {
            return Err(Error::BoundaryMismatch("square map must be B → D".into()));
        }
        if m0.dom() != src.a() || m0.cod() != dst.a() {
            return Err(Error::BoundaryMismatch("square map must be A → C".into()));
        }
        let comparison = pullback_comparison(src.f(), m1, m0, dst.f())?;
        if !comparison.is_bijective() {
            return Err(Error::NotAPullback("the square is not a pullback".into()));
        }
        let chosen = pullback(m0, dst.f())?;
        let phi2 = comparison.inverse()?;
        PolyMorphism::new(src, dst, m0.clone(), chosen.right, phi2)
    }

    pub fn src(&self) -> &Polynomial {
        &self.src
    }

    pub fn dst(&self) -> &Polynomial {
        &self.dst
    }

    /// The vertex `Dφ`.
    pub fn vertex(&self) -> &FinSet {
        self.phi1.dom()
    }

    pub fn phi0(&self) -> &FinMap {
        &self.phi0
    }

    pub fn phi1(&self) -> &FinMap {
        &self.phi1
    }

    pub fn phi2(&self) -> &FinMap {
        &self.phi2
    }

    /// `f∘φ2 : Dφ → A`, the side of the lower pullback square.
    pub fn projection(&self) -> FinMap {
        self.src.f().after(&self.phi2).expect("validated shape")
    }

    pub fn is_cartesian(&self) -> bool {
        self.phi2.is_bijective()
    }

    /// `φ1∘φ2⁻¹ : B → D`, the square representation of a cartesian morphism.
    pub fn square_map(&self) -> Result<FinMap> {
        if !self.is_cartesian() {
            return Err(Error::NotCartesian("φ2 is not invertible".into()));
        }
        self.phi1.after(&self.phi2.inverse()?)
    }

    /// The element of `Dφ` lying over `a ∈ A` and `d ∈ D`, if `g(d) = φ0(a)`.
    pub fn locate(&self, a: &Label, d: &Label) -> Option<Label> {
        let top = self.projection();
        self.vertex().iter().find(|x| top.apply(x) == Some(a) && self.phi1.apply(x) == Some(d)).cloned()
    }

    /// The map `Dφ → A ×_C D` onto the chosen pullback; a bijection.
    pub(crate) fn vertex_comparison(&self) -> FinMap {
        pullback_comparison(&self.projection(), &self.phi1, &self.phi0, self.dst.f()).expect("validated")
    }

    /// Vertical composite `ψ ∘ φ` for `φ : F ⇒ G` and `ψ : G ⇒ H`, with
    /// vertex `{(a, δ) | δ ∈ Dψ, g(ψ2 δ) = φ0(a)}`.
    pub fn then(&self, psi: &PolyMorphism) -> Result<PolyMorphism> {
        if self.dst != psi.src {
            return Err(Error::BoundaryMismatch("vertical composition of non-composable morphisms".into()));
        }
        let vertex = pullback(&self.phi0, &psi.projection())?;
        let lower = pullback(&self.phi0, self.dst.f())?;
        let to_lower = FinMap::from_fn(&vertex.apex, &lower.apex, |x| {
            let (a, delta) = x.as_pair().unwrap();
            Label::pair(a.clone(), psi.phi2.apply(delta).unwrap().clone())
        })?;
        let back = self.vertex_comparison().inverse()?;
        let phi2 = self.phi2.after(&back)?.after(&to_lower)?;
        let phi1 = psi.phi1.after(&vertex.right)?;
        let phi0 = psi.phi0.after(&self.phi0)?;
        PolyMorphism::new(&self.src, &psi.dst, phi0, phi1, phi2)
    }
}

/// `ψ ∘ φ`.
pub fn vcomp(psi: &PolyMorphism, phi: &PolyMorphism) -> Result<PolyMorphism> {
    phi.then(psi)
}

impl std::fmt::Debug for PolyMorphism {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        out.debug_struct("PolyMorphism")
            .field("phi0", &self.phi0)
            .field("phi1", &self.phi1)
            .field("phi2", &self.phi2)
            .finish()
    }
}
