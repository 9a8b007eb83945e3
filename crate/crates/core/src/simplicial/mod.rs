//! Unoriented simplicial sets: the dual complex `D(X)`, the functors between
//! simplicial and semi-simplicial sets, and integral (co)homology.

pub mod chains;
pub mod dual;
pub mod functor_h;
pub mod homology;
pub mod iso;
pub mod les;
pub mod maps;
pub mod sset;

pub use chains::{chain_complex, ChainComplex};
pub use dual::{build_dx, functor_f_of_c, sub_complex_de, DualComplex, DualSimplex, SubComplex};
pub use functor_h::{functor_h, Triple};
pub use homology::{cohomology, homology, relative_cohomology, relative_homology, Group};
pub use iso::{count_morphisms, find_isomorphism};
pub use les::{longexact, LesNode, LesReport};
pub use sset::{Morphism, Presheaf, SemiSimplicialSet, SimplicialSet};
