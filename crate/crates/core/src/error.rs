use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the analysis, generation, simulation and I/O routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,
    #[error("connectivity undefined for graphs with fewer than 2 nodes (n = {0})")]
    ConnectivityUndefined(usize),
    #[error("robustness undefined for graphs with fewer than 2 nodes (n = {0})")]
    RobustnessUndefined(usize),
    #[error("empty set")]
    EmptySet,
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node set universe {found} does not match graph size {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("oracle size exceeded: n = {n} > {limit}")]
    OracleSizeExceeded { n: usize, limit: usize },
    #[error("exact search limit exceeded: n = {n} > {limit} (the decision problem is coNP-complete; raise the limit explicitly)")]
    SearchLimitExceeded { n: usize, limit: usize },
    #[error("adversary placement violates F-local")]
    FLocalViolation,
    #[error("m must be at least r (m = {m}, r = {r})")]
    ThresholdAboveSeed { m: usize, r: usize },
    #[error("seed graph too small: need at least {needed} nodes, got {got}")]
    SeedGraphTooSmall { needed: usize, got: usize },
    #[error("seed graph is not {0}-robust")]
    SeedGraphNotRobust(usize),
    #[error("no valid cut exists for this assignment")]
    NoCutForAssignment,
    #[error("degenerate cut: {0}")]
    DegenerateCut(String),
    #[error("formula/assignment size mismatch: {variables} variables, {values} values")]
    AssignmentSize { variables: usize, values: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON in {path}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid CSV in {path}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    /// True for the size guards that protect the exponential routines.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::OracleSizeExceeded { .. } | Error::SearchLimitExceeded { .. }
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
