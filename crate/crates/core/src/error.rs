use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exact division left a nonzero remainder")]
    InexactDivision,

    #[error("{what} limit exceeded: {count} > {limit}")]
    CapExceeded { what: &'static str, count: u128, limit: u128 },

    #[error("element does not belong to poset with n = {n:?}, r = {r:?}")]
    SpecMismatch { n: Vec<u32>, r: Vec<u32> },

    #[error("not a chain: {0}")]
    NotAChain(String),

    #[error("degenerate poset: bottom and top coincide")]
    Degenerate,

    #[error("substitution makes a denominator factor vanish")]
    ZeroDenominator,

    #[error("matrix index mismatch")]
    IndexMismatch,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for errors caused by a resource limit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
