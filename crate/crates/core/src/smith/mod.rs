//! Cohomology over `F_p`, the Smith exact sequences of a free `Z_p`-complex and
//! the index `ind_p`, induced maps, and degrees of maps between pseudomanifolds.

mod cochain;
pub mod fp;
mod orient;
mod sequence;

pub use cochain::{
    induced_map, is_nct, pullback_matrix, Ambient, CochainComplex, Coefficients, CohomClass,
    CohomologySpace, SignedPermutation, LARGE_PRIME,
};
pub use fp::FpMatrix;
pub use orient::{degree, fundamental_cycle, Orientation};
pub use sequence::{
    ind_p, offered_subgroups, validate_index_witness, ExactnessNode, IndexResult, SmithComplex,
    UClass,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmithError {
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("Smith sequences need a cyclic group of prime order, got order {order}")]
    NotPrimeCyclic { order: usize },
    #[error("action is not free: element {element} fixes simplex {simplex:?}")]
    NotFree {
        element: usize,
        simplex: Vec<String>,
    },
    #[error("no subgroup of order {p}; available (order, generator): {offered:?}")]
    NoSubgroup {
        p: usize,
        offered: Vec<(usize, usize)>,
    },
    #[error("complex is empty")]
    EmptyComplex,
    #[error("connecting maps are defined on rhoC and sigmaC classes only")]
    NoConnectingMap,
    #[error("no lift exists in degree {degree}")]
    LiftFailed { degree: usize },
    #[error("unknown simplex {simplex:?}")]
    UnknownSimplex { simplex: Vec<String> },
    #[error("map sends simplex {simplex:?} outside the target")]
    NotSimplicial { simplex: Vec<String> },
    #[error("integer cohomology in degree {degree} has torsion (dimensions by prime: {dims:?})")]
    UnsupportedTorsion {
        degree: usize,
        dims: Vec<(usize, usize)>,
    },
    #[error("not a pseudomanifold: simplex {simplex:?} has {cofaces} top cofaces")]
    NotPseudomanifold {
        simplex: Vec<String>,
        cofaces: usize,
    },
    #[error("top simplex {simplex:?} is not reachable across facets")]
    NotStronglyConnected { simplex: Vec<String> },
    #[error("non-orientable: sign propagation fails around {cycle:?}")]
    NonOrientable { cycle: Vec<Vec<String>> },
    #[error("dimensions differ: {source_dim} and {target_dim}")]
    DimensionMismatch {
        source_dim: usize,
        target_dim: usize,
    },
    #[error("coefficient {found} on {simplex:?} disagrees with {expected}")]
    InconsistentDegree {
        simplex: Vec<String>,
        expected: i64,
        found: i64,
    },
}
