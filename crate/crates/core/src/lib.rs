//! Equivariant simplicial complexes, Tucker-type labelings and the
//! Smith-sequence cohomological index `ind_p`.

pub mod certify;
pub mod fixtures;
pub mod gcomplex;
pub mod smith;
pub mod tucker;
