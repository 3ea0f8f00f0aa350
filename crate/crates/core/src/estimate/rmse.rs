use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::degree::bfs_correct;
use super::topology::{
    arbitrary_topology_estimate, AccessMode, NeighborhoodScheme, SchemeKind, TopologyEstimator,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampling::bfs;
use crate::seeds::replica_rng;

#[derive(Clone, Debug, PartialEq)]
pub struct RmseConfig {
    /// Exploration depth around each seed.
    pub depth: usize,
    pub replicas: usize,
    pub rng_seed: u64,
    pub schemes: Vec<SchemeKind>,
    pub mode: AccessMode,
}

impl Default for RmseConfig {
    fn default() -> Self {
        Self {
            depth: 2,
            replicas: 1000,
            rng_seed: 0,
            schemes: vec![SchemeKind::HalfRadius],
            mode: AccessMode::SampleOnly,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RmseRow {
    pub method: String,
    pub mean_estimate: f64,
    pub rmse: f64,
    pub replicas: usize,
    /// Mean solver iterations (zero for closed-form estimators).
    pub diag_iterations: f64,
    /// Largest absolute solver residual.
    pub diag_residual: f64,
}

/// The tag of the random-graph-based entry in the comparison.
pub const RG_METHOD: &str = "rg_bfs";

struct Replica {
    schemes: Vec<f64>,
    rg: f64,
    iterations: usize,
    residual: f64,
}

/// Compares estimators of the population mean of `x` over uniformly drawn
/// seeds. Each arbitrary-topology scheme explores `B_depth(seed)`; the
/// random-graph entry feeds a BFS sample of the same size from the same seed
/// to the BFS correction with the true coverage.
pub fn rmse_compare(g: &Graph, x: &[f64], config: &RmseConfig) -> Result<Vec<RmseRow>> {
    if config.replicas == 0 {
        return Err(Error::InvalidArgument("replicas must be at least 1".into()));
    }
    let n = g.node_count();
    if x.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} attribute values for {n} nodes",
            x.len()
        )));
    }
    let truth = x.iter().sum::<f64>() / n as f64;
    let schemes: Vec<NeighborhoodScheme> = config
        .schemes
        .iter()
        .map(|&k| NeighborhoodScheme::new(k, config.depth))
        .collect();
    let oracles = match config.mode {
        AccessMode::Oracle => Some(
            schemes
                .iter()
                .map(|s| TopologyEstimator::new(g, s))
                .collect::<Result<Vec<_>>>()?,
        ),
        AccessMode::SampleOnly => None,
    };

    let replicas = (0..config.replicas)
        .into_par_iter()
        .map(|r| -> Result<Replica> {
            let mut rng = replica_rng(config.rng_seed, r as u64, "rmse");
            let seed = rng.random_range(0..n);
            let scheme_values = match &oracles {
                Some(est) => est
                    .iter()
                    .map(|e| e.estimate(x, seed).map(|v| v / n as f64))
                    .collect::<Result<Vec<_>>>()?,
                None => schemes
                    .iter()
                    .map(|s| {
                        arbitrary_topology_estimate(g, x, seed, s, AccessMode::SampleOnly)
                            .map(|rep| rep.value / n as f64)
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            let size = g.ball(seed, config.depth)?.len();
            let mut trace = bfs(g, seed, size)?;
            trace.attach_attribute(x);
            let values = trace.x_values().expect("attached");
            let rep = bfs_correct(&trace, &values, size as f64 / n as f64)?;
            let diag = rep.diagnostics.expect("bfs correction reports diagnostics");
            Ok(Replica {
                schemes: scheme_values,
                rg: rep.value,
                iterations: diag.iterations,
                residual: diag.residual.abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let summarize = |method: &str, values: Vec<f64>, iterations: f64, residual: f64| {
        let m = values.len() as f64;
        RmseRow {
            method: method.into(),
            mean_estimate: values.iter().sum::<f64>() / m,
            rmse: (values.iter().map(|v| (v - truth).powi(2)).sum::<f64>() / m).sqrt(),
            replicas: values.len(),
            diag_iterations: iterations,
            diag_residual: residual,
        }
    };
    let mut rows: Vec<RmseRow> = config
        .schemes
        .iter()
        .enumerate()
        .map(|(i, k)| {
            summarize(
                k.tag(),
                replicas.iter().map(|r| r.schemes[i]).collect(),
                0.0,
                0.0,
            )
        })
        .collect();
    let iterations =
        replicas.iter().map(|r| r.iterations as f64).sum::<f64>() / replicas.len() as f64;
    let residual = replicas.iter().map(|r| r.residual).fold(0.0, f64::max);
    rows.push(summarize(
        RG_METHOD,
        replicas.iter().map(|r| r.rg).collect(),
        iterations,
        residual,
    ));
    Ok(rows)
}

pub const RMSE_CSV_HEADER: &str =
    "method,mean_estimate,rmse,replicas,diag_iterations,diag_residual";

pub fn write_rmse_csv<W: Write>(rows: &[RmseRow], mut out: W) -> Result<()> {
    writeln!(out, "{RMSE_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:e}",
            r.method, r.mean_estimate, r.rmse, r.replicas, r.diag_iterations, r.diag_residual
        )?;
    }
    Ok(())
}
