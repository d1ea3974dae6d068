use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: negative weight {text}")]
    NegativeWeight { line: usize, text: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("no path from {s} to {t}")]
    Unreachable { s: usize, t: usize },
    #[error("tiebreak key collision persisted after {attempts} reseeds")]
    KeyCollision { attempts: usize },
    #[error("routing paths are not consistent: {0}")]
    InconsistentRouting(String),
    #[error("hierarchy sampling exceeded the bunch cap in all {attempts} attempts")]
    RetryExhausted { attempts: usize },
    #[error("cluster of {root} is not closed under the shortest-path tree at vertex {vertex}")]
    TruncationInvalid { root: usize, vertex: usize },
    #[error("hopset edge {index} has no span")]
    MissingSpan { index: usize },
    #[error("hopset edge {index} has a span that is not a path of the graph")]
    InvalidSpan { index: usize },
    #[error("hop budget {budget} exhausted; hop-diameter is at least {lower_bound}")]
    BudgetExceeded { budget: usize, lower_bound: usize },
    #[error("lifted path {path} needs {hops} hops, above the audited bound {limit}")]
    HopBoundUnmet { path: usize, hops: usize, limit: usize },
    #[error("parameter violation: {0}")]
    ParameterViolation(String),
    #[error("measured edge sensitivity {measured} exceeds the noise scale term {term}")]
    ScaleViolation { measured: u64, term: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
