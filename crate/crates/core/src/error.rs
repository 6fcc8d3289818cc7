use thiserror::Error;

use crate::measures::MeasureId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{}self-loop on node {node}", line_prefix(*.line))]
    SelfLoop { line: Option<usize>, node: usize },
    #[error("{}node id {node} out of range for n = {n}", line_prefix(*.line))]
    NodeOutOfRange { line: Option<usize>, node: usize, n: usize },
    #[error("line {line}: malformed token {token:?}")]
    Malformed { line: usize, token: String },
    #[error("{kind} needs at least {min} nodes, got {n}")]
    TooFewNodes { kind: &'static str, n: usize, min: usize },
    #[error("node {0} is already saturated")]
    AlreadySaturated(usize),
    #[error("mapping is not a permutation of the node set")]
    NotPermutation,
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("enumeration supports 1..=7 nodes, got {0}")]
    EnumerationOutOfScope(usize),
    #[error("unknown topology {0:?}")]
    UnknownTopology(String),
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CentralityError {
    #[error("{what} needs at least {min} nodes, got {n}")]
    TooFewNodes { what: &'static str, n: usize, min: usize },
    #[error("degree assortativity is undefined on a graph without edges")]
    NoEdges,
    #[error("dense spectrum limited to {limit} nodes, graph has {n}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("{measure} produced {value}, outside [0, 1] beyond tolerance")]
    OutOfRange { measure: MeasureId, value: f64 },
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error("unknown measure {0:?}")]
    Unknown(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AxiomError {
    #[error("unknown axiom {0:?}")]
    Unknown(String),
    #[error("node bound must lie in 3..=7, got {0}")]
    Scope(usize),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssessmentError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("series needs at least {min} points, got {got}")]
    TooFewPoints { got: usize, min: usize },
    #[error("series must span n <= {low} to n >= {high}")]
    NarrowSpan { low: usize, high: usize },
    #[error("weights must be nonnegative and sum to 1, got w_A = {w_a}, w_N = {w_n}")]
    Weights { w_a: f64, w_n: f64 },
    #[error("score counts must lie in 0..=6")]
    ScoreRange,
    #[error("verdict set is incomplete: missing {0}")]
    MissingVerdict(String),
}
