//! Polynomials over finite sets, their morphisms and adjustments, internal
//! full subcategories, and finite natural models, with every law checked by
//! exhaustive enumeration.

pub mod cell;
pub mod error;
pub mod finset;
pub mod interchange;
pub mod internalcat;
pub mod label;
pub mod naturalmodel;
pub mod poly;
pub mod suite;

pub use error::{Error, Result};
pub use label::Label;
