//! Cross-module checks that emit machine-readable evidence: the index sandwich
//! `max_p ind_p ≤ ind ≤ tind`, consistency between `ind_p` and labeling search,
//! the camomile index law, the degree law for equivariant self-maps, and the
//! nonexistence of equivariant maps `X * G → X`.

mod checks;
mod digest;

pub use checks::{
    check_camomile, check_degree_mod_order, check_labeling_consistency, check_no_join_selfmap,
    index_sandwich, CamomileReport, CheckStatus, ConsistencyReport, DegreeReport, IndexCertificate,
    JoinSelfMapReport, LowerBound, UpperBound, Verdict,
};
pub use digest::{action_digest, action_text, complex_text, sha256_hex};

use thiserror::Error;

use crate::gcomplex::GComplexError;
use crate::smith::SmithError;
use crate::tucker::TuckerError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error(transparent)]
    Complex(#[from] GComplexError),
    #[error(transparent)]
    Smith(#[from] SmithError),
    #[error(transparent)]
    Tucker(#[from] TuckerError),
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: usize, order: usize },
    #[error("the check needs a nontrivial group")]
    TrivialGroup,
    #[error("certificate digest does not match the action")]
    DigestMismatch,
    #[error("certificate witness failed to re-validate: {0}")]
    InvalidWitness(String),
}
