use thiserror::Error;

/// Everything that can go wrong when asking for a space or a quantity on it.
///
/// All variants except [`Error::Internal`] are rejections of the input; an
/// `Internal` error means an invariant check failed and is always a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {label}{rank}: {reason}")]
    UnsupportedRootSystem {
        label: String,
        rank: usize,
        reason: String,
    },

    #[error("node {node} of {label}{rank} is not cominuscule (coefficient {coefficient} in the highest root)")]
    NotCominuscule {
        label: String,
        rank: usize,
        node: usize,
        coefficient: i64,
    },

    #[error("`{name}` is not a cominuscule space: {reason}; valid families are Gr(i,N), Q(m), LG(n), OG(n), E6, E7")]
    UnknownSpace { name: String, reason: String },

    #[error("space of dimension {dim} exceeds the supported maximum of {max}")]
    TooLarge { dim: usize, max: usize },

    #[error("chains of {i} lines do not dominate X x X: d_{i} = {i}*(dim V + 1) - dim X = {i}*{vmrt_dim_plus_one} - {dim} = {d} < 0")]
    ChainsNotDominant {
        i: usize,
        vmrt_dim_plus_one: usize,
        dim: usize,
        d: i64,
    },

    #[error("chain length must be at least 1")]
    ZeroChainLength,

    #[error("elements live on different spaces ({left} vs {right})")]
    MixedSpaces { left: String, right: String },

    #[error("parts sum to {sum}, expected {expected}")]
    SumMismatch { sum: usize, expected: usize },

    #[error("`{0}` is not an order ideal of the minuscule poset")]
    NotAnIdeal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of an internal consistency check (as opposed to bad input).
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
