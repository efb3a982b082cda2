use thiserror::Error;

use crate::terminating::TerminatingDecimal;

/// Errors raised by decimal, limit and class operations.
///
/// Variants carry enough context to report *where* a contract failed; the
/// limit engines in particular report the witnessing indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scale 10^{scale} leaves digits below index 0")]
    InsufficientScale { scale: i64 },

    #[error("operation requires a nonzero input")]
    ZeroInput,

    #[error("division by zero")]
    DivisionByZero,

    #[error("square root of a negative number")]
    NegativeInput,

    #[error("operation requires a positive input")]
    NonpositiveInput,

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("decimal is not finitely represented")]
    NotFinitelyRepresented,

    #[error("invalid digit {0}")]
    InvalidDigit(u8),

    #[error("repetend must be nonempty")]
    EmptyRepetend,

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("contract violated at precision 10^-{k} (indices {m} and {n})")]
    ContractViolation { k: u32, m: u64, n: u64 },

    #[error("sequence is not monotone: term {m} and term {n} are out of order")]
    MonotonicityViolation { m: u64, n: u64 },

    #[error("term {n} crosses the declared bound")]
    BoundViolation { n: u64 },

    #[error("bracket {k} is violated (term {n})")]
    BracketViolation { k: u32, n: u64 },

    #[error("bracket {k} is malformed: {reason}")]
    MalformedBracket { k: u32, reason: &'static str },

    #[error("declared limit disagrees with term {n} at precision 10^-{k}")]
    CandidateRejected { k: u32, n: u64 },

    #[error("value is within 10^-{radius_exp} of {near}; jump membership undecided")]
    JumpUnresolved { near: TerminatingDecimal, radius_exp: u32 },

    #[error("digit budget of {budget} positions exhausted while {during}")]
    BudgetExhausted { budget: u32, during: &'static str },

    #[error("closure certificate would need a 9^(a)0^(a) factor with a above {limit}")]
    CertificateTooLarge { limit: u64 },

    #[error("search space of {size} candidates exceeds the limit")]
    BoundsTooLarge { size: u128 },

    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A syntax error with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: expected {}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
}

impl ParseError {
    pub(crate) fn new(offset: usize, expected: &[&'static str]) -> Self {
        ParseError {
            offset,
            expected: expected.to_vec(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
