use std::io::Write;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, GraphSource, TechniqueConfig};
use crate::analytic::{mean_q_of_f, rw_expected};
use crate::distribution::DegreeDistribution;
use crate::edgelist::{load_edge_list_file, LoadOptions};
use crate::error::{Error, Result};
use crate::estimate::{
    bfs_correct, rmse_compare, rw_correct, write_rmse_csv, AccessMode, RmseConfig, RmseRow,
    SchemeKind,
};
use crate::generate::{
    configuration_model, degree_sequence_from_distribution, rewire_to_assortativity, RewireOptions,
};
use crate::graph::{Graph, NodeId};
use crate::sampling::{sample, SampleTrace};
use crate::seeds::replica_rng;

/// Largest gap accepted between a rewiring target and the achieved value.
pub const REWIRE_TOLERANCE: f64 = 0.02;

/// Builds the graph each replica explores.
pub struct GraphFactory {
    rng_seed: u64,
    kind: FactoryKind,
}

enum FactoryKind {
    Generated {
        sequence: Vec<usize>,
        assortativity: Option<f64>,
    },
    Fixed(Arc<Graph>),
}

impl GraphFactory {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let kind = match &cfg.graph {
            GraphSource::Generated {
                degrees,
                nodes,
                assortativity,
            } => FactoryKind::Generated {
                sequence: degree_sequence_from_distribution(&degrees.distribution()?, *nodes)?,
                assortativity: *assortativity,
            },
            GraphSource::File { path } => {
                FactoryKind::Fixed(Arc::new(load_edge_list_file(path, LoadOptions::default())?))
            }
        };
        Ok(Self {
            rng_seed: cfg.rng_seed,
            kind,
        })
    }

    /// Distribution the analytic curves are evaluated against.
    pub fn reference_distribution(&self) -> Result<DegreeDistribution> {
        match &self.kind {
            FactoryKind::Generated { sequence, .. } => DegreeDistribution::from_degrees(sequence),
            FactoryKind::Fixed(g) => Ok(g.degree_distribution()),
        }
    }

    /// Graph of replica `r`; generated graphs use the `graph` stream and,
    /// when a target is configured, the `rewire` stream.
    pub fn replica(&self, r: usize) -> Result<Arc<Graph>> {
        self.replica_with_target(r, None)
    }

    fn replica_with_target(&self, r: usize, sweep_target: Option<f64>) -> Result<Arc<Graph>> {
        match &self.kind {
            FactoryKind::Fixed(g) => Ok(Arc::clone(g)),
            FactoryKind::Generated {
                sequence,
                assortativity,
            } => {
                let mut rng = replica_rng(self.rng_seed, r as u64, "graph");
                let g = configuration_model(sequence, &mut rng)?;
                match sweep_target.or(*assortativity) {
                    None => Ok(Arc::new(g)),
                    Some(target) => {
                        let tag = format!("rewire:{target}");
                        let mut rng = replica_rng(self.rng_seed, r as u64, &tag);
                        let out = rewire_to_assortativity(
                            &g,
                            target,
                            &mut rng,
                            RewireOptions::default(),
                        )?;
                        if (out.achieved_r - target).abs() > REWIRE_TOLERANCE {
                            return Err(Error::Unsupported(format!(
                                "rewiring reached r = {:.4}, target {target}",
                                out.achieved_r
                            )));
                        }
                        Ok(Arc::new(out.graph))
                    }
                }
            }
        }
    }
}

/// Nodes of the largest connected component (ties: lowest component id).
pub fn largest_component_nodes(g: &Graph) -> Vec<NodeId> {
    let (comp, sizes) = g.components();
    let best = (0..sizes.len())
        .max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a)))
        .unwrap_or(0);
    (0..g.node_count()).filter(|&v| comp[v] == best).collect()
}

fn budget_for(f: f64, n: usize) -> usize {
    ((f * n as f64).round() as usize).max(1)
}

fn walk_length(t: &TechniqueConfig, f: f64, n: usize) -> usize {
    t.steps.unwrap_or_else(|| budget_for(f, n))
}

/// One exploration per technique, from a seed drawn uniformly in the largest
/// component, long enough for the largest grid point.
fn explore(
    cfg: &ExperimentConfig,
    g: &Graph,
    component: &[NodeId],
    r: usize,
    technique: &TechniqueConfig,
) -> Result<SampleTrace> {
    let n = g.node_count();
    let f_max = cfg.f_grid.iter().copied().fold(0.0, f64::max);
    let mut rng = replica_rng(cfg.rng_seed, r as u64, &technique.label());
    let seed = component[rng.random_range(0..component.len())];
    let budget = if technique.technique.with_replacement() {
        walk_length(technique, f_max, n)
    } else {
        budget_for(f_max, n)
    };
    let mut trace = sample(
        g,
        technique.technique,
        seed,
        budget,
        technique.params(),
        &mut rng,
    )?;
    trace.rng_seed = Some(cfg.rng_seed);
    Ok(trace)
}

/// Mean sampled degree per grid point; `None` where the trace ran out of
/// reachable nodes before the budget.
fn prefix_means(
    cfg: &ExperimentConfig,
    trace: &SampleTrace,
    technique: &TechniqueConfig,
    n: usize,
) -> Vec<Option<f64>> {
    let mut prefix = Vec::with_capacity(trace.len() + 1);
    prefix.push(0.0);
    for r in &trace.records {
        prefix.push(prefix.last().unwrap() + r.degree as f64);
    }
    cfg.f_grid
        .iter()
        .map(|&f| {
            let b = if technique.technique.with_replacement() {
                walk_length(technique, f, n)
            } else {
                budget_for(f, n)
            };
            (b <= trace.len()).then(|| prefix[b] / b as f64)
        })
        .collect()
}

fn in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let m = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / m;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, (var / m).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub technique: String,
    pub f: f64,
    pub budget: usize,
    /// Replicas that reached the budget.
    pub replicas: usize,
    pub unreachable: usize,
    pub mean_sampled_degree: f64,
    pub std_error: f64,
    /// `None` when `f` exceeds the analytic maximum coverage.
    pub analytic_mean_q: Option<f64>,
    pub rw_expected_mean: f64,
    pub true_mean_degree: f64,
    pub rng_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveTable {
    pub graph: String,
    pub nodes: usize,
    pub replicas: usize,
    pub rng_seed: u64,
    pub rows: Vec<CurveRow>,
}

struct ReplicaCurves {
    /// `[technique][grid point]`
    values: Vec<Vec<Option<f64>>>,
    mean_degree: f64,
    assortativity: Option<f64>,
}

fn replica_curves(cfg: &ExperimentConfig, g: &Graph, r: usize) -> Result<ReplicaCurves> {
    let component = largest_component_nodes(g);
    let values = cfg
        .techniques
        .iter()
        .map(|t| {
            Ok(prefix_means(
                cfg,
                &explore(cfg, g, &component, r, t)?,
                t,
                g.node_count(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReplicaCurves {
        values,
        mean_degree: 2.0 * g.edge_count() as f64 / g.node_count() as f64,
        assortativity: g.assortativity().ok(),
    })
}

fn summarize_curves(
    cfg: &ExperimentConfig,
    reference: &DegreeDistribution,
    n: usize,
    replicas: &[ReplicaCurves],
) -> Result<Vec<CurveRow>> {
    let (_, rw_mean) = rw_expected(reference)?;
    let true_mean = replicas.iter().map(|r| r.mean_degree).sum::<f64>() / replicas.len() as f64;
    let mut rows = Vec::new();
    for (ti, t) in cfg.techniques.iter().enumerate() {
        for (fi, &f) in cfg.f_grid.iter().enumerate() {
            let reached: Vec<f64> = replicas.iter().filter_map(|r| r.values[ti][fi]).collect();
            let (mean, se) = mean_and_se(&reached);
            let budget = if t.technique.with_replacement() {
                walk_length(t, f, n)
            } else {
                budget_for(f, n)
            };
            rows.push(CurveRow {
                technique: t.label(),
                f,
                budget,
                replicas: reached.len(),
                unreachable: replicas.len() - reached.len(),
                mean_sampled_degree: mean,
                std_error: se,
                analytic_mean_q: mean_q_of_f(reference, f).ok(),
                rw_expected_mean: rw_mean,
                true_mean_degree: true_mean,
                rng_seed: cfg.rng_seed,
            });
        }
    }
    Ok(rows)
}

/// Empirical mean sampled degree per technique and coverage, next to the
/// analytic BFS prediction, the random-walk expectation and the truth.
pub fn run_bias_curves(cfg: &ExperimentConfig) -> Result<CurveTable> {
    cfg.validate()?;
    let factory = GraphFactory::new(cfg)?;
    let reference = factory.reference_distribution()?;
    let n = factory.replica(0)?.node_count();
    let replicas = in_pool(cfg.workers, || {
        (0..cfg.replicas)
            .into_par_iter()
            .map(|r| replica_curves(cfg, &*factory.replica(r)?, r))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(CurveTable {
        graph: cfg.graph.describe(),
        nodes: n,
        replicas: cfg.replicas,
        rng_seed: cfg.rng_seed,
        rows: summarize_curves(cfg, &reference, n, &replicas)?,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub const CURVES_CSV_HEADER: &str = "technique,f,budget,replicas,unreachable,mean_sampled_degree,std_error,analytic_mean_q,rw_expected_mean,true_mean_degree,rng_seed";

fn curve_fields(r: &CurveRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.technique,
        r.f,
        r.budget,
        r.replicas,
        r.unreachable,
        r.mean_sampled_degree,
        r.std_error,
        fmt_opt(r.analytic_mean_q),
        r.rw_expected_mean,
        r.true_mean_degree,
        r.rng_seed
    )
}

fn write_meta<W: Write>(
    out: &mut W,
    experiment: &str,
    graph: &str,
    replicas: usize,
    seed: u64,
) -> Result<()> {
    writeln!(out, "# experiment={experiment}")?;
    writeln!(out, "# graph={graph}")?;
    writeln!(out, "# replicas={replicas}")?;
    writeln!(out, "# rng_seed={seed}")?;
    writeln!(
        out,
        "# replica_streams=splitmix64(master,replica,fnv1a64(tag)) -> chacha8"
    )?;
    Ok(())
}

pub fn write_curves_csv<W: Write>(table: &CurveTable, mut out: W) -> Result<()> {
    write_meta(
        &mut out,
        "bias_curves",
        &table.graph,
        table.replicas,
        table.rng_seed,
    )?;
    writeln!(out, "# nodes={}", table.nodes)?;
    writeln!(out, "{CURVES_CSV_HEADER}")?;
    for r in &table.rows {
        writeln!(out, "{}", curve_fields(r))?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectionRun {
    pub replica: usize,
    pub technique: String,
    pub f: f64,
    /// Coverage actually achieved by the trace.
    pub f_real: f64,
    pub sampled_mean: f64,
    pub bfs_corrected_mean: Option<f64>,
    pub rw_corrected_mean: f64,
    pub true_mean: f64,
    pub corrected: Option<DegreeDistribution>,
    pub iterations: usize,
    pub residual: f64,
    /// `ok`, `unreachable`, or the solver error.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectionRow {
    pub technique: String,
    pub f: f64,
    pub replicas: usize,
    pub failures: usize,
    pub sampled_mean: f64,
    pub bfs_corrected_mean: f64,
    pub bfs_std_error: f64,
    pub rw_corrected_mean: f64,
    pub true_mean: f64,
    pub rng_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectionTable {
    pub graph: String,
    pub replicas: usize,
    pub rng_seed: u64,
    /// Degree distribution of the explored graph(s), replica 0.
    pub truth: DegreeDistribution,
    pub rows: Vec<CorrectionRow>,
    pub runs: Vec<CorrectionRun>,
}

fn correction_runs(
    cfg: &ExperimentConfig,
    techniques: &[TechniqueConfig],
    g: &Graph,
    r: usize,
) -> Result<Vec<CorrectionRun>> {
    let component = largest_component_nodes(g);
    let n = g.node_count();
    let true_mean = 2.0 * g.edge_count() as f64 / n as f64;
    let mut runs = Vec::new();
    for t in techniques {
        let trace = explore(cfg, g, &component, r, t)?;
        for &f in &cfg.f_grid {
            let b = budget_for(f, n);
            let mut run = CorrectionRun {
                replica: r,
                technique: t.label(),
                f,
                f_real: 0.0,
                sampled_mean: f64::NAN,
                bfs_corrected_mean: None,
                rw_corrected_mean: f64::NAN,
                true_mean,
                corrected: None,
                iterations: 0,
                residual: f64::NAN,
                status: "ok".into(),
            };
            if b > trace.len() {
                run.status = "unreachable".into();
                runs.push(run);
                continue;
            }
            let prefix = trace.prefix(b);
            let x = prefix.x_or_degree();
            run.f_real = prefix.distinct_count() as f64 / n as f64;
            run.sampled_mean = prefix.mean_degree();
            run.rw_corrected_mean = rw_correct(&prefix, &x)?.value;
            match bfs_correct(&prefix, &x, run.f_real) {
                Ok(rep) => {
                    let d = rep.diagnostics.expect("bfs diagnostics");
                    run.bfs_corrected_mean = rep.mean_degree;
                    run.corrected = rep.distribution;
                    run.iterations = d.iterations;
                    run.residual = d.residual;
                }
                Err(e @ Error::NonConvergence { .. }) => run.status = e.to_string(),
                Err(e) => return Err(e),
            }
            runs.push(run);
        }
    }
    Ok(runs)
}

/// BFS-style samples corrected with the Horvitz-Thompson estimator and, for
/// contrast, with random-walk weights. Walk techniques in the config are
/// ignored; BFS is used when no traversal is configured.
pub fn run_correction_eval(cfg: &ExperimentConfig) -> Result<CorrectionTable> {
    cfg.validate()?;
    let mut techniques: Vec<TechniqueConfig> = cfg
        .techniques
        .iter()
        .filter(|t| !t.technique.with_replacement())
        .cloned()
        .collect();
    if techniques.is_empty() {
        techniques.push(TechniqueConfig::new(crate::sampling::Technique::Bfs));
    }
    let factory = GraphFactory::new(cfg)?;
    let truth = factory.replica(0)?.degree_distribution();
    let per_replica = in_pool(cfg.workers, || {
        (0..cfg.replicas)
            .into_par_iter()
            .map(|r| correction_runs(cfg, &techniques, &*factory.replica(r)?, r))
            .collect::<Result<Vec<_>>>()
    })??;
    let runs: Vec<CorrectionRun> = per_replica.into_iter().flatten().collect();

    let mut rows = Vec::new();
    for t in &techniques {
        for &f in &cfg.f_grid {
            let label = t.label();
            let selected: Vec<&CorrectionRun> = runs
                .iter()
                .filter(|r| r.technique == label && r.f == f)
                .collect();
            let ok: Vec<&&CorrectionRun> = selected
                .iter()
                .filter(|r| r.bfs_corrected_mean.is_some())
                .collect();
            let avg = |get: &dyn Fn(&CorrectionRun) -> f64| {
                ok.iter().map(|r| get(r)).sum::<f64>() / ok.len() as f64
            };
            let bfs: Vec<f64> = ok.iter().map(|r| r.bfs_corrected_mean.unwrap()).collect();
            rows.push(CorrectionRow {
                technique: label.clone(),
                f,
                replicas: ok.len(),
                failures: selected.len() - ok.len(),
                sampled_mean: avg(&|r| r.sampled_mean),
                bfs_corrected_mean: mean_and_se(&bfs).0,
                bfs_std_error: mean_and_se(&bfs).1,
                rw_corrected_mean: avg(&|r| r.rw_corrected_mean),
                true_mean: avg(&|r| r.true_mean),
                rng_seed: cfg.rng_seed,
            });
        }
    }
    Ok(CorrectionTable {
        graph: cfg.graph.describe(),
        replicas: cfg.replicas,
        rng_seed: cfg.rng_seed,
        truth,
        rows,
        runs,
    })
}

pub const CORRECTIONS_CSV_HEADER: &str =
    "technique,f,replicas,failures,sampled_mean,bfs_corrected_mean,bfs_std_error,rw_corrected_mean,true_mean,rng_seed";

pub fn write_corrections_csv<W: Write>(table: &CorrectionTable, mut out: W) -> Result<()> {
    write_meta(
        &mut out,
        "correction_eval",
        &table.graph,
        table.replicas,
        table.rng_seed,
    )?;
    writeln!(out, "{CORRECTIONS_CSV_HEADER}")?;
    for r in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.technique,
            r.f,
            r.replicas,
            r.failures,
            r.sampled_mean,
            r.bfs_corrected_mean,
            r.bfs_std_error,
            r.rw_corrected_mean,
            r.true_mean,
            r.rng_seed
        )?;
    }
    Ok(())
}

pub const CORRECTION_RUNS_CSV_HEADER: &str =
    "replica,technique,f,f_real,sampled_mean,bfs_corrected_mean,rw_corrected_mean,true_mean,iterations,residual,status,rng_seed";

pub fn write_correction_runs_csv<W: Write>(table: &CorrectionTable, mut out: W) -> Result<()> {
    write_meta(
        &mut out,
        "correction_eval_runs",
        &table.graph,
        table.replicas,
        table.rng_seed,
    )?;
    writeln!(out, "{CORRECTION_RUNS_CSV_HEADER}")?;
    for r in &table.runs {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{:e},\"{}\",{}",
            r.replica,
            r.technique,
            r.f,
            r.f_real,
            r.sampled_mean,
            fmt_opt(r.bfs_corrected_mean),
            r.rw_corrected_mean,
            r.true_mean,
            r.iterations,
            r.residual,
            r.status.replace('"', "'"),
            table.rng_seed
        )?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RmseTable {
    pub graph: String,
    pub nodes: usize,
    pub edges: usize,
    pub truth: f64,
    pub depth: usize,
    pub rng_seed: u64,
    pub rows: Vec<RmseRow>,
}

/// Half-radius estimator against the random-graph correction, both fed the
/// depth-`i` neighbourhood of uniformly drawn seeds; `x` is the node degree.
pub fn run_rmse_comparison(cfg: &ExperimentConfig) -> Result<RmseTable> {
    cfg.validate()?;
    let g = GraphFactory::new(cfg)?.replica(0)?;
    let x: Vec<f64> = g.degrees().into_iter().map(|k| k as f64).collect();
    let rmse_cfg = RmseConfig {
        depth: cfg.depth,
        replicas: cfg.replicas,
        rng_seed: cfg.rng_seed,
        schemes: vec![SchemeKind::HalfRadius],
        mode: AccessMode::SampleOnly,
    };
    let rows = in_pool(cfg.workers, || rmse_compare(&g, &x, &rmse_cfg))??;
    Ok(RmseTable {
        graph: cfg.graph.describe(),
        nodes: g.node_count(),
        edges: g.edge_count(),
        truth: x.iter().sum::<f64>() / x.len() as f64,
        depth: cfg.depth,
        rng_seed: cfg.rng_seed,
        rows,
    })
}

pub fn write_rmse_table_csv<W: Write>(table: &RmseTable, mut out: W) -> Result<()> {
    let replicas = table.rows.first().map_or(0, |r| r.replicas);
    write_meta(
        &mut out,
        "rmse_compare",
        &table.graph,
        replicas,
        table.rng_seed,
    )?;
    writeln!(out, "# nodes={}", table.nodes)?;
    writeln!(out, "# edges={}", table.edges)?;
    writeln!(out, "# depth={}", table.depth)?;
    writeln!(out, "# truth_mean_degree={}", table.truth)?;
    write_rmse_csv(&table.rows, out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    /// `None` for the unrewired baseline.
    pub target: Option<f64>,
    /// Mean assortativity over the replicas used.
    pub achieved_r: Option<f64>,
    pub replicas_used: usize,
    pub diagnostic: Option<String>,
    pub rows: Vec<CurveRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub graph: String,
    pub replicas: usize,
    pub rng_seed: u64,
    pub points: Vec<SweepPoint>,
}

/// Bias curves on the unrewired graph and on graphs rewired to each target
/// assortativity. Replicas whose rewiring misses the target by more than
/// [`REWIRE_TOLERANCE`] are dropped; a target with no usable replica is
/// reported with a diagnostic and no rows.
pub fn run_assortativity_sweep(cfg: &ExperimentConfig) -> Result<SweepTable> {
    cfg.validate()?;
    if !matches!(cfg.graph, GraphSource::Generated { .. }) {
        return Err(Error::Config(
            "the assortativity sweep needs a generated graph".into(),
        ));
    }
    let factory = GraphFactory::new(cfg)?;
    let reference = factory.reference_distribution()?;
    let n = factory.replica(0)?.node_count();
    let targets: Vec<Option<f64>> = std::iter::once(None)
        .chain(cfg.assortativity_targets.iter().copied().map(Some))
        .collect();
    let mut points = Vec::new();
    for target in targets {
        let outcomes = in_pool(cfg.workers, || {
            (0..cfg.replicas)
                .into_par_iter()
                .map(|r| match factory.replica_with_target(r, target) {
                    Ok(g) => replica_curves(cfg, &g, r).map(Ok),
                    Err(e @ (Error::Unsupported(_) | Error::UndefinedAssortativity)) => {
                        Ok(Err(e.to_string()))
                    }
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<_>>>()
        })??;
        let failures: Vec<String> = outcomes
            .iter()
            .filter_map(|o| o.as_ref().err().cloned())
            .collect();
        let used: Vec<ReplicaCurves> = outcomes.into_iter().filter_map(|o| o.ok()).collect();
        let diagnostic = (!failures.is_empty()).then(|| {
            format!(
                "{} of {} replicas failed: {}",
                failures.len(),
                cfg.replicas,
                failures[0]
            )
        });
        if used.is_empty() {
            points.push(SweepPoint {
                target,
                achieved_r: None,
                replicas_used: 0,
                diagnostic,
                rows: Vec::new(),
            });
            continue;
        }
        let rs: Vec<f64> = used.iter().filter_map(|u| u.assortativity).collect();
        points.push(SweepPoint {
            target,
            achieved_r: (!rs.is_empty()).then(|| rs.iter().sum::<f64>() / rs.len() as f64),
            replicas_used: used.len(),
            diagnostic,
            rows: summarize_curves(cfg, &reference, n, &used)?,
        });
    }
    Ok(SweepTable {
        graph: cfg.graph.describe(),
        replicas: cfg.replicas,
        rng_seed: cfg.rng_seed,
        points,
    })
}

pub fn write_sweep_csv<W: Write>(table: &SweepTable, mut out: W) -> Result<()> {
    write_meta(
        &mut out,
        "assortativity_sweep",
        &table.graph,
        table.replicas,
        table.rng_seed,
    )?;
    for p in &table.points {
        if let Some(d) = &p.diagnostic {
            writeln!(
                out,
                "# target={} {d}",
                p.target.map_or("none".into(), |t| t.to_string())
            )?;
        }
    }
    writeln!(out, "target_r,achieved_r,replicas_used,{CURVES_CSV_HEADER}")?;
    for p in &table.points {
        let target = p.target.map_or("none".into(), |t| t.to_string());
        for r in &p.rows {
            writeln!(
                out,
                "{target},{},{},{}",
                fmt_opt(p.achieved_r),
                p.replicas_used,
                curve_fields(r)
            )?;
        }
    }
    Ok(())
}
