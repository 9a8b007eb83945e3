//! Cocubical systems of filtered rational complexes and their simple
//! complex.

mod complex;
mod cover;
pub mod json;
pub mod random;
mod system;

pub use complex::{graded_piece, quasi_iso_check, ChainMap, DegreeVerdict, FDComplex, Filtration, FiltrationKind, Piece};
pub use cover::{adjunction_system, cycle, AdjunctionSystem, SimplicialComplex};
pub use system::{constant_system, epsilon, index_subsets, simple_complex, CocubicalSystem, SystemMorphism, MAX_INDEX};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocubicalError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("d∘d is not zero starting in degree {0}")]
    NotAComplex(i64),
    #[error("not a chain map in degree {0}")]
    NotChainMap(i64),
    #[error("face maps do not commute: {0}")]
    NotFunctorial(String),
    #[error("not compatible with the filtration: {0}")]
    NotFiltered(String),
    #[error("not a cover: {0}")]
    NotACover(String),
    #[error("the complex carries no such filtration")]
    FiltrationAbsent,
}
