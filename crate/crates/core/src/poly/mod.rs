//! Polynomials `I ← B → A → J`, their extensions, composition and the
//! reduction of general polynomials to polynomials `1 ⇸ 1` over a slice.

mod compose;
mod extension;
mod slice;

pub use compose::{compose, compose_explicit, extension_composition_iso, Composite, CompositionTrace};
pub use extension::{extend, extend_map, extension_fibre_size};
pub use slice::{slice_reduce, slice_reduce_morphism, SliceMorphism, SlicePolynomial};

use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};

/// A polynomial `I ←s− B −f→ A −t→ J`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    s: FinMap,
    f: FinMap,
    t: FinMap,
}

impl Polynomial {
    pub fn new(s: FinMap, f: FinMap, t: FinMap) -> Result<Self> {
        if s.dom() != f.dom() {
            return Err(Error::BoundaryMismatch("s and f must share the domain B".into()));
        }
        if f.cod() != t.dom() {
            return Err(Error::BoundaryMismatch("the codomain of f must be the domain of t".into()));
        }
        Ok(Polynomial { s, f, t })
    }

    /// A map `f : B → A` regarded as a polynomial `1 ⇸ 1`.
    pub fn from_map(f: &FinMap) -> Self {
        Polynomial { s: FinMap::to_unit(f.dom()), f: f.clone(), t: FinMap::to_unit(f.cod()) }
    }

    /// The identity polynomial `I ← I → I → I`.
    pub fn identity(i: &FinSet) -> Self {
        let id = FinMap::identity(i);
        Polynomial { s: id.clone(), f: id.clone(), t: id }
    }

    /// The linear polynomial `I ← A = A → J` of a span.
    pub fn linear(s: &FinMap, t: &FinMap) -> Result<Self> {
        if s.dom() != t.dom() {
            return Err(Error::BoundaryMismatch("a span needs a common apex".into()));
        }
        Ok(Polynomial { s: s.clone(), f: FinMap::identity(s.dom()), t: t.clone() })
    }

    pub fn i(&self) -> &FinSet {
        self.s.cod()
    }

    pub fn b(&self) -> &FinSet {
        self.f.dom()
    }

    pub fn a(&self) -> &FinSet {
        self.f.cod()
    }

    pub fn j(&self) -> &FinSet {
        self.t.cod()
    }

    pub fn s(&self) -> &FinMap {
        &self.s
    }

    pub fn f(&self) -> &FinMap {
        &self.f
    }

    pub fn t(&self) -> &FinMap {
        &self.t
    }

    /// Whether both endpoints are the canonical singleton.
    pub fn is_one_to_one(&self) -> bool {
        *self.i() == FinSet::unit() && *self.j() == FinSet::unit()
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        out.debug_struct("Polynomial").field("s", &self.s).field("f", &self.f).field("t", &self.t).finish()
    }
}
