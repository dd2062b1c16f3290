//! Finite natural models: a universe `p : Ů → U` with chosen unit, `Σ` and
//! `Π` structure, the cartesian morphisms `η`, `μ`, `ζ` they determine, and
//! the pseudomonad and pseudoalgebra assembled from them.

mod isos;
mod lift;
mod pseudo;
mod structure;
mod universe;

pub use isos::{codes_of_size, verify_type_isos, IsoCheck, IsoReport, IsoRow};
pub use lift::{lift_apply, lift_apply_square, lift_object, lift_unit_mult, LiftedEndofunctor};
pub use pseudo::{
    pseudoalgebra_from, pseudomonad_from, PastingOutcome, PolynomialPseudoalgebra, PolynomialPseudomonad,
};
pub use structure::{pi_structure, sigma_structure, unit_structure};
pub use universe::{mk_bool_universe, mk_corrupted_universe, mk_skewed_universe, Former, TypeFormer, Universe};
