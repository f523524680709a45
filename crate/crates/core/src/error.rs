use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup {
        reason: String,
        witness: Vec<usize>,
    },
    #[error("{what} exceeds cap {cap} (got {got})")]
    CapExceeded { what: String, cap: usize, got: usize },
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("subgroup is not subnormal (normal closure chain stops at order {stuck_at})")]
    NotSubnormal { stuck_at: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {m} is not coprime to conductor {n}")]
    BadExponent { m: u64, n: u64 },
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element is not central")]
    NotCentral,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("containment violated: {0}")]
    ContainmentViolation(String),
    #[error("not a Shoda pair: {0}")]
    NotShodaPair(String),
    #[error("no strong inductive chain found by exhaustive search")]
    ChainNotFound,
    #[error("strong inductive chain search exceeded its bound ({0})")]
    SearchBoundExceeded(String),
    #[error("invalid strong inductive chain: {0}")]
    InvalidChain(String),
    #[error("k^m = {k}^{m} is not 1 modulo {order}")]
    BadCongruence { k: u64, m: u64, order: u64 },
    #[error("internal iteration bound exceeded: {0}")]
    InternalBoundExceeded(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("pair set is not complete (primitive central idempotents do not sum to 1)")]
    IncompleteSet,
    #[error("pair has no strong inductive chain: {0}")]
    MissingChain(String),
    #[error("phi({index}) = {phi} is not divisible by {divisor}")]
    DivisibilityViolation { index: u64, phi: u64, divisor: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
