use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("arrows `{first}` and `{second}` are not composable")]
    NotComposable { first: String, second: String },

    #[error("relation {index} is malformed: {reason}")]
    BadRelation { index: usize, reason: String },

    #[error("the algebra is not monomial (relation {0} has more than one term)")]
    NotMonomial(usize),

    #[error("the presentation is not a string algebra: {0}")]
    NotStringAlgebra(String),

    #[error("the presentation is not gentle: {0}")]
    NotGentle(String),

    #[error(
        "nonzero path {path} exceeds the length cap {cap}; the algebra looks infinite-dimensional"
    )]
    PathCapExceeded { path: String, cap: usize },

    #[error("`{0}` is not a nonzero nontrivial path")]
    NotNonzeroPath(String),

    #[error("paths `{first}` and `{second}` have no overlap")]
    NoOverlap { first: String, second: String },

    #[error("paths `{first}` and `{second}` overlap in {count} ways; pass an explicit offset")]
    AmbiguousOverlap {
        first: String,
        second: String,
        count: usize,
    },

    #[error("offset {offset} is not an overlap of `{first}` and `{second}`")]
    BadOverlapOffset {
        first: String,
        second: String,
        offset: usize,
    },

    #[error("`{0}` is not an oriented cycle")]
    NotACycle(String),

    #[error("word `{word}` is not a string: {reason}")]
    NotAString { word: String, reason: String },

    #[error("word `{word}` is not a band: {reason}")]
    NotABand { word: String, reason: String },

    #[error("G-condition fails: {0}")]
    GConditionFails(String),

    #[error("representation shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("truncation at degree {0} is not closed; raise the degree bound")]
    TruncationNotClosed(usize),

    #[error("search budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
