//! Morphisms of polynomials (2-cells) and adjustments (3-cells).

mod adjustment;
mod coherence;
mod horizontal;
mod morphism;

pub use adjustment::{adj_hcomp, adj_vcomp, search_adjustments, whisker_post, whisker_pre, Adjustment};
pub use coherence::*;
pub use horizontal::{extend_morphism, hcomp, hcomp_between, whisker_left, whisker_right};
pub use morphism::{vcomp, PolyMorphism};
