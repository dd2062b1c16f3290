use thiserror::Error;

use crate::label::Label;

/// Everything that can go wrong while building or checking finite structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label {0} in finite set")]
    DuplicateLabel(Label),
    #[error("{label} is not an element of the {context}")]
    NotAnElement { label: Label, context: String },
    #[error("map is not total: no value assigned to {0}")]
    NotTotal(Label),
    #[error("map assigns two values to {0}")]
    NotFunctional(Label),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("enumeration of {needed} elements exceeds the cap of {cap}")]
    CapExceeded { needed: u128, cap: usize },
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("diagram does not commute: {0}")]
    NotCommuting(String),
    #[error("square is not a pullback: {0}")]
    NotAPullback(String),
    #[error("2-cell is not cartesian: {0}")]
    NotCartesian(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("adjustment triangle fails: {0}")]
    TriangleFailure(String),
    #[error("not in the image of slice reduction: {0}")]
    NotInImage(String),
    #[error("naturality fails: {0}")]
    NotNatural(String),
    #[error("internal category law fails: {0}")]
    CategoryLaw(String),
    #[error("invalid universe: {0}")]
    Universe(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
