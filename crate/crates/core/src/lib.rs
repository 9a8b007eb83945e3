//! Combinatorial skeleta, integral (co)homology, piecewise-linear retractions
//! and motivic nearby cycles of strictly semi-stable degenerations given as
//! incidence data.
//!
//! The entry point is a [`StrataModel`]: components, strata, the map `psi`
//! sending a stratum to the set of components containing it, and
//! codimension-one faces. From it one builds the dual simplicial set
//! ([`simplicial::dual`]), its homology ([`simplicial::homology`]), points of
//! the skeleton and their retractions ([`skeleton`]) and the nearby-cycles
//! class ([`motivic::nearby_cycles`]). The [`cocubical`] module totalizes
//! cocubical systems of rational complexes.

pub mod cocubical;
pub mod examples;
pub mod generate;
pub mod linalg;
pub mod motivic;
pub mod simplicial;
pub mod skeleton;
pub mod strata;

pub use strata::{ComponentSet, ModelError, StrataModel, Stratum};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parse error: {0}")]
    Syntax(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Series(#[from] motivic::SeriesError),
    #[error(transparent)]
    Motivic(#[from] motivic::MotivicError),
    #[error(transparent)]
    Geometry(#[from] skeleton::GeomError),
    #[error(transparent)]
    Cocubical(#[from] cocubical::CocubicalError),
}

impl Error {
    /// True for malformed input (as opposed to well-formed input outside the
    /// domain of an operation).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Json(_) | Error::Syntax(_))
    }
}
