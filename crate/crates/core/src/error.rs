use thiserror::Error;

/// Errors raised by the classification library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("prime {0} is too large (must be below 32768)")]
    PrimeTooLarge(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry {value} out of range for p = {p} in {field}")]
    EntryOutOfRange { field: String, value: u32, p: u32 },
    #[error("mismatched fields: p = {0} vs p = {1}")]
    FieldMismatch(u32, u32),
    #[error("matrix is not alternating: {0}")]
    NotAlternating(String),
    #[error("map is not injective on the given subspace")]
    NotInjective,
    #[error("map is not well defined on the span of the given generators")]
    NotWellDefined,
    #[error("map does not preserve the form: ({i},{j}) gives {before} before and {after} after")]
    NotIsometry { i: usize, j: usize, before: u32, after: u32 },
    #[error("branch image c_{index} is zero")]
    ZeroBranchImage { index: usize },
    #[error("branch images sum to a nonzero vector {sum:?}")]
    NonzeroBranchSum { sum: Vec<u32> },
    #[error("monodromy is not surjective: images span a {rank}-dimensional subspace of F_p^{m}")]
    NotSurjective { rank: usize, m: usize },
    #[error("group rank m must be at least 1")]
    ZeroRank,
    #[error("actions live on different groups: (p, m) = ({0}, {1}) vs ({2}, {3})")]
    GroupMismatch(u32, usize, u32, usize),
    #[error("{condition} violated ({detail})")]
    Inadmissible { condition: String, detail: String },
    #[error("instance too large: {what} = {size} exceeds limit {limit}")]
    TooLarge { what: String, size: u128, limit: u128 },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
