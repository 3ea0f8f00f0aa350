//! Estimators that undo the sampling bias of walks and traversals.

mod degree;
mod rmse;
mod topology;

pub use degree::{
    bfs_correct, bfs_correct_at_t, bfs_correct_with, empirical_q, mhrw_correct, rw_correct,
    rw_mean_degree, BfsSolverOptions,
};
pub use rmse::{rmse_compare, write_rmse_csv, RmseConfig, RmseRow, RG_METHOD, RMSE_CSV_HEADER};
pub use topology::{
    arbitrary_topology_estimate, oracle_inclusion, selection_set, AccessMode, NeighborhoodScheme,
    SchemeKind, TopologyEstimator,
};

use serde::Serialize;

use crate::distribution::DegreeDistribution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Bisection,
    /// Damped fixed-point iteration, used when no sign change brackets the root.
    FixedPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolverDiagnostics {
    pub iterations: usize,
    pub t: f64,
    /// Coverage residual at the returned `t`.
    pub residual: f64,
    pub method: SolveMethod,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimationReport {
    /// Estimator tag, e.g. `rw`, `bfs`, `half_radius`.
    pub method: String,
    /// Corrected degree distribution, when the estimator yields one.
    pub distribution: Option<DegreeDistribution>,
    /// Corrected mean degree, when a distribution is available.
    pub mean_degree: Option<f64>,
    /// Attribute estimate: an average for the walk and BFS estimators, a
    /// population total for the arbitrary-topology family.
    pub value: f64,
    pub diagnostics: Option<SolverDiagnostics>,
}
