//! Error type shared by the value model, the matching engine, and the matchers.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    /// The name is bound as an indexed map but holds nothing at this key.
    /// Inside pattern reduction this fails the branch instead of erroring.
    #[error("indexed variable `{0}` has no entry at this key")]
    MissingIndexedKey(String),

    #[error("`{0}` is bound as {1}, not as {2}")]
    MixedBinding(String, &'static str, &'static str),

    #[error("integer overflow in `{0}`")]
    Overflow(&'static str),

    #[error("type mismatch: expected {expected}, got {got}")]
    TypeMismatch { expected: &'static str, got: String },

    #[error("predicate pattern did not evaluate to a unary predicate")]
    NotAPredicate,

    #[error("cannot apply a non-function value")]
    NotAFunction,

    #[error("cannot compare function values for equality")]
    NotComparable,

    #[error("pattern not supported by matcher `{matcher}`: {pattern}")]
    PatternUnsupported { matcher: String, pattern: String },

    #[error("unknown constructor `{0}` for matcher `{1}`")]
    UnknownConstructor(String, String),

    #[error("arity mismatch in {context}: expected {expected}, got {got}")]
    ArityMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("fuel exhausted during {0}")]
    FuelExhausted(&'static str),

    #[error("no pattern-matching result")]
    NoMatch,

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("JSON target error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
