use thiserror::Error;

/// Errors raised by constructors and operations that have preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("addition table has {got} entries, expected {expected}")]
    TableShape { expected: usize, got: usize },
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("carrier size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("set is not a lower subset: {below} <= {above} but {below} is missing")]
    NotLower { below: usize, above: usize },
    #[error("set does not contain the zero element")]
    MissingZero,
    #[error("sums {0} and {1} are undefined or differ")]
    UnequalMarginals(String, String),
    #[error("host monoid lacks refinement: {0}")]
    NotRefinement(String),
    #[error("host monoid is not conical: {0} + {1} = 0")]
    NotConical(usize, usize),
    #[error("formal sum of length {len} exceeds the bound {bound}")]
    SumTooLong { len: usize, bound: usize },
    #[error("formal sum must be nonempty")]
    EmptySum,
    #[error("{0}")]
    Extremum(#[from] ExtremumError),
    #[error("direct decomposition fails: {0}")]
    Decomposition(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    Params(String),
}

/// Failure of a least/largest element search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremumError {
    #[error("{what}: the candidate set is empty")]
    Empty { what: String },
    #[error("{what}: no extremum among candidates {candidates:?}")]
    NoExtremum {
        what: String,
        candidates: Vec<usize>,
    },
    #[error("{what}: extremum is not unique, {first} and {second} both qualify")]
    NotUnique {
        what: String,
        first: usize,
        second: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
