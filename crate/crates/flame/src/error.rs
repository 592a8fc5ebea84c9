//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by graph construction and the algorithm entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("edge {edge} is a self-loop")]
    SelfLoop { edge: usize },
    #[error("edge {edge} enters the root")]
    EdgeEntersRoot { edge: usize },
    #[error(
        "edge set is not a flame: vertex {vertex} has in-degree {in_degree} but connectivity {lambda}"
    )]
    NotAFlame {
        vertex: usize,
        in_degree: usize,
        lambda: usize,
    },
    #[error(
        "minimum-weight flame supported for acyclic digraphs only; use oracle brute force for small cyclic instances"
    )]
    CyclicInput,
    #[error("{what} is {actual}, exceeding the brute-force limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("edge {edge} is not an in-edge of vertex {vertex}")]
    NotInEdgeSubset { vertex: usize, edge: usize },
    #[error("cannot place {m} edges on {n} vertices: at most {max} possible")]
    InfeasibleEdgeCount { n: usize, m: usize, max: usize },
    #[error("contraction level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
}

/// Errors from the text format parser, each naming the offending line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: malformed edge: {reason}")]
    MalformedEdge { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: negative weight")]
    NegativeWeight { line: usize },
    #[error("line {line}: weight has more than 9 fractional digits")]
    TooManyFractionDigits { line: usize },
    #[error("line {line}: weight out of range")]
    WeightOverflow { line: usize },
    #[error("line {line}: unexpected content after {expected} edges")]
    TooManyEdges { line: usize, expected: usize },
    #[error("expected {expected} edges, found {found}")]
    MissingEdges { expected: usize, found: usize },
}
