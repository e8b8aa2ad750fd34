use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("table is not associative: ({a}{b}){c} != {a}({b}{c}) (1-based elements)", a = .triple.0 + 1, b = .triple.1 + 1, c = .triple.2 + 1)]
    NotAssociative { triple: (usize, usize, usize) },

    #[error("order mismatch: expected {expected}, got {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("order {0} is outside the supported enumeration range 1..=4")]
    UnsupportedOrder(usize),

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("permutation set is not closed under composition: {0}")]
    NotClosed(String),

    #[error("unknown fixture `{0}` (expected one of SYM, GM2, JJ3)")]
    UnknownFixture(String),

    #[error("unknown output format `{0}` (expected json, csv or md)")]
    UnknownFormat(String),

    #[error("parse error in block {block}, line {line}: {message}")]
    Parse {
        block: usize,
        line: usize,
        message: String,
    },

    #[error("generator is not a rate-space element (non-zero column sum in column {column})")]
    NonZeroColumnSum { column: usize },

    #[error("degenerate model: {0}")]
    Degenerate(String),

    #[error("matrix logarithm did not converge: {0}")]
    LogNonConvergence(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("catalog document error: {0}")]
    Document(String),
}
