//! Finite groups, simplicial complexes, simplicial group actions, and the
//! constructions that build new G-complexes from old ones.

mod action;
mod complex;
mod construct;
mod group;
mod iso;
mod map;

pub use action::GAction;
pub use complex::{sort_sign, Simplex, SimplicialComplex};
pub use construct::{
    barycentric_subdivision, camomile, cone, join, join_complexes, join_power, join_power_index,
    join_power_vertex, quotient, regularity_violation, subdivide, Camomile, Quotient,
    RegularityViolation,
};
pub use group::{is_prime, FiniteGroup, PrimeSubgroup};
pub use iso::{find_equivariant_isomorphism, find_isomorphism};
pub use map::{validate_map, MapReport, SimplicialMap};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GComplexError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("table row {row} has length {len}, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table row {row} is not a permutation of the elements")]
    NotLatinRow { row: usize },
    #[error("table column {column} is not a permutation of the elements")]
    NotLatinColumn { column: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("table is not associative: ({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("vertex name {0:?} declared twice")]
    DuplicateVertexName(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} repeated within a simplex")]
    RepeatedVertexInSimplex(String),
    #[error("expected {expected} permutations, got {got}")]
    PermCount { expected: usize, got: usize },
    #[error("permutation for element {element} is not a bijection of the vertices")]
    NotAPermutation { element: usize },
    #[error("not a homomorphism: perm({g}·{h}) and perm({g})∘perm({h}) differ at vertex {vertex}")]
    NotHomomorphism { g: usize, h: usize, vertex: usize },
    #[error("element {element} maps simplex {simplex:?} outside the complex")]
    NotSimplicial {
        element: usize,
        simplex: Vec<String>,
    },
    #[error("action is not free: element {element} fixes simplex {simplex:?}")]
    NotFree {
        element: usize,
        simplex: Vec<String>,
    },
    #[error("generator-only actions need a cyclic group generated by element 1")]
    NotCyclic,
    #[error("actions use different groups")]
    GroupMismatch,
    #[error("join power needs at least one factor")]
    ZeroJoinPower,
    #[error("quotient regularity not reached after two subdivisions")]
    RegularityNotReached,
    #[error("the G-complex is not a subcomplex of the ambient complex")]
    NotSubcomplex,
}
