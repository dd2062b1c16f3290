//! Finite sets as a locally cartesian closed category.

mod cap;
mod family;
mod lcc;
mod map;
mod set;

pub(crate) use cap::ensure_within_cap;
pub use cap::{enumeration_cap, with_enumeration_cap, DEFAULT_ENUMERATION_CAP};
pub use family::{all_family_maps, FamilyMap, FinFamily};
pub use lcc::{
    base_change, base_change_map, check_pullback_square, dep_prod, dep_prod_map, dep_sum, dep_sum_map,
    is_pullback_square, pi_transpose, pi_untranspose, pullback, pullback_comparison, sigma_transpose,
    sigma_untranspose, slice_exponential, slice_exponential_families, square_commutes, Pullback,
};
pub(crate) use map::cartesian_indices;
pub use map::{all_maps, FinMap};
pub use set::FinSet;
