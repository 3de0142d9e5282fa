use thiserror::Error;

/// Crate-wide error type. Mathematical preconditions that fail get their own
/// variants so callers can distinguish "bad input" from "refused by the cap".
#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication table is not a square matrix of the declared order")]
    NotSquare,
    #[error("element 0 is not a two-sided identity")]
    IdentityNotAtZero,
    #[error("associativity fails at triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("size cap {limit} exceeded: {detail}")]
    CapExceeded { limit: usize, detail: String },
    #[error("group has a nontrivial center")]
    NotCenterless,
    #[error("word parameter {0} lies outside the parameter set")]
    ParamOutsideA(usize),
    #[error("word uses the second variable but no value was assigned to it")]
    MissingYValue,
    #[error("kernel oracle has no assignment for the second variable")]
    MissingAssignment,
    #[error("pair is not special: distinct elements share a quantifier-free type")]
    NotSpecial,
    #[error("base pair of the tower is not special")]
    BaseNotSpecial,
    #[error("centralizer of the parameter set is nontrivial at tower level {0}")]
    CentralizerNontrivial(usize),
    #[error("witness hypotheses fail: {0}")]
    HypothesesFail(String),
    #[error("need two distinct parameters to encode words")]
    TooFewParams,
    #[error("cannot encode a set pair with an empty first component")]
    EmptyA,
    #[error("permutation is not an automorphism of the given object")]
    NotAnAutomorphism,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
