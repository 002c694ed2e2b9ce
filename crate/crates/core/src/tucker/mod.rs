//! Equivariant `(G, n)`-labelings, complementary edges, the correspondence
//! between labelings and maps into `J^n(G)`, and budgeted backtracking searches.

mod labeling;
mod search;

pub use labeling::{
    find_complementary_edges, labeling_to_map, map_to_labeling, validate_labeling,
    ComplementaryEdge, Label, Labeling, LabelingReport, Mode,
};
pub use search::{
    enumerate_equivariant_maps, search_equivariant_map, search_labeling, tucker_harness,
    MapEnumeration, SearchOptions, SearchOutcome, SearchResult, TuckerReport, TuckerVerdict,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TuckerError {
    #[error("labeling has {got} labels for {expected} vertices")]
    NotTotal { expected: usize, got: usize },
    #[error("label of vertex {vertex} names an unknown element or a class outside 1..=n")]
    BadLabel { vertex: usize },
    #[error("the acting complex is not a subcomplex of the labeled complex")]
    NotSubcomplex,
    #[error("labeling is not equivariant: element {element} at vertex {vertex}")]
    NotEquivariant { element: usize, vertex: usize },
    #[error("complementary edge {0:?}")]
    ComplementaryEdge(ComplementaryEdge),
    #[error("the number of classes must be positive")]
    ZeroClasses,
    #[error("the target is not a join power J^n(G) of the acting group")]
    NotJoinPower,
    #[error("map sends simplex {simplex:?} outside the target")]
    NotSimplicial { simplex: Vec<String> },
    #[error("search budget must be positive")]
    ZeroBudget,
    #[error("actions use different groups")]
    GroupMismatch,
    #[error("action is not free on vertex {vertex}")]
    NotFree { vertex: usize },
}
