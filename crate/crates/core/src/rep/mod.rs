//! Finitely supported representations, their morphisms, and decomposition.

mod decompose;
mod endo;
mod morphism;
mod representation;

pub use decompose::{
    decompose, fitting_split, is_indecomposable, iso, iso_indecomposable, Decomposition, FittingSplit,
    Indecomposability, IsoResult, Summand,
};
pub use endo::EndAlgebra;
pub use morphism::{cokernel_rep, hom_basis, hom_dim, kernel_rep, subrepresentation, RepMorphism};
pub use representation::{check_relations, direct_sum, direct_sum_all, standard_relations, Representation, Violation};
