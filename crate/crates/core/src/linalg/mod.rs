//! Exact linear algebra over `Z` (Smith normal form) and `Q`.

mod integer;
mod rational;

pub use integer::{torsion, ZMatrix};
pub use rational::{q, QMatrix, Subspace, Q};
