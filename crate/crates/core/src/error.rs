use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is empty after preprocessing")]
    EmptyGraph,

    #[error("unknown node id {0}")]
    UnknownNode(usize),

    #[error("invalid degree distribution: {0}")]
    InvalidDistribution(String),

    #[error("degenerate distribution: mean degree is zero")]
    DegenerateDistribution,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Assortativity has zero endpoint-degree variance (e.g. regular graphs).
    #[error("assortativity undefined: endpoint degrees have zero variance")]
    UndefinedAssortativity,

    #[error("coverage {requested} is unreachable (maximum {max})")]
    UnreachableCoverage { requested: f64, max: f64 },

    #[error(
        "estimator did not converge after {iterations} iterations (best residual {residual:e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("estimator is infeasible: {0}")]
    Infeasible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
