use thiserror::Error;

/// Errors produced by parsing, construction and the size guards of the
/// refinement and oracle routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("node id {id} out of range for a graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("bad graph6 character {ch:?} at byte {pos}")]
    BadGraph6Char { ch: char, pos: usize },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("expected {expected} colors, got {got}")]
    ColorCount { expected: usize, got: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("invalid node set: {0}")]
    InvalidNodeSet(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} exceeds guard ({value} > {limit})")]
    Guard {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
