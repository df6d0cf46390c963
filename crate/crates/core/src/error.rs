use thiserror::Error;

/// Errors raised by the library. Partiality of operations (undefined sums,
/// undefined differences of rough naturals) is modelled with `Option`-like
/// values, not with this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element `{0}` declared twice")]
    DuplicateElement(String),

    #[error("{what} has size {size}, the supported maximum is {max}")]
    SizeCap {
        what: &'static str,
        size: usize,
        max: usize,
    },

    #[error("relation is not {law}: witness ({a}, {b})")]
    LawViolated {
        law: &'static str,
        a: String,
        b: String,
    },

    #[error("expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("element `{0}` is not covered by any block")]
    Uncovered(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("object is not in the carrier")]
    ForeignObject,

    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),

    #[error("malformed count: {0}")]
    MalformedCount(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
