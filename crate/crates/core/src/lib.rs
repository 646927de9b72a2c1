//! Linear codes over small finite fields: exact insertion-deletion
//! distances, generalized Hamming weights, and coordinate-ordering-free
//! upper bounds on insdel distance with constructive witnesses.

pub mod bounds;
pub mod codes;
pub mod error;
pub mod galois;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod ordering;
pub mod report;
pub mod reproduce;

pub use error::{Error, Result};

/// Enumeration limits that keep the exact oracles honest about
/// feasibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Maximum number of codewords `q^k` to enumerate.
    pub max_codewords: u64,
    /// Maximum number of subspaces visited by GHW enumeration.
    pub max_subspaces: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { max_codewords: codes::DEFAULT_MAX_CODEWORDS, max_subspaces: metrics::DEFAULT_MAX_SUBSPACES }
    }
}
