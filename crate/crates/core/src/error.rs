use thiserror::Error;

/// Errors raised by the exact cover machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic factor of order {0}; every factor must have order at least 2")]
    InvalidOrder(u64),

    #[error("expected {expected} coordinates, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("group shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<u64>, right: Vec<u64> },

    #[error("branch label {index} is the identity element; branch points need nontrivial inertia")]
    TrivialBranchLabel { index: usize },

    #[error("branch index {index} out of range (cover has {count} branch points)")]
    BranchIndex { index: usize, count: usize },

    #[error("cover data is not admissible: {0}")]
    Inadmissible(String),

    #[error("{what} is {value}, above the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error(
        "polarization formula out of range: {ones} ones and {ns} copies of n (p = {prym_dim}, g = {genus}, r = {branch_count})"
    )]
    PolarizationOutOfRange {
        ones: i64,
        ns: i64,
        prym_dim: u64,
        genus: u64,
        branch_count: usize,
    },

    #[error("base genus {0} is not supported here (need g >= 2)")]
    UnsupportedGenus(u64),

    #[error("negative input: {0}")]
    NegativeInput(&'static str),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
