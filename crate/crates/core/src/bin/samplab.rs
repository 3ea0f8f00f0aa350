use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use samplab::analytic::{bias_curve, write_curve_csv};
use samplab::edgelist::{load_edge_list_file, write_edge_list, GraphStats, LoadOptions};
use samplab::estimate::{bfs_correct, mhrw_correct, rw_correct, EstimationReport};
use samplab::generate::{
    configuration_model, degree_sequence_from_distribution, rewire_to_assortativity, RewireOptions,
};
use samplab::harness::{self, DegreeModel, ExperimentConfig, GraphFactory};
use samplab::sampling::{sample, SamplerParams, Technique};
use samplab::{Error, Result, SampleTrace};

#[derive(Parser)]
#[command(
    name = "samplab",
    version,
    about = "Graph exploration sampling and bias correction"
)]
struct Cli {
    /// Master random seed.
    #[arg(long, global = true)]
    rng_seed: Option<u64>,
    /// Replica count for experiment subcommands.
    #[arg(long, global = true)]
    replicas: Option<usize>,
    /// Output directory; single-result commands print to stdout without it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size, degree moments and assortativity of an edge list.
    Stats {
        edgelist: PathBuf,
        /// Skip deduplication, self-loop removal and component extraction.
        #[arg(long)]
        raw: bool,
    },
    /// Configuration-model graph as an edge list.
    Generate {
        /// `powerlaw:EXP[:KMIN[:KMAX]]`, `regular:K`, or `k:p,k:p,...`.
        #[arg(long)]
        pk: String,
        #[arg(long)]
        nodes: usize,
        /// Rewire toward this assortativity.
        #[arg(long, allow_negative_numbers = true)]
        assortativity: Option<f64>,
    },
    /// One exploration of an edge-list graph, written as a trace CSV.
    Sample {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_technique)]
        technique: Technique,
        /// Seed node label as written in the edge list.
        #[arg(long)]
        seed_node: u64,
        /// Distinct nodes for traversals, steps for walks.
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = SamplerParams::default().burn_probability)]
        burn_probability: f64,
        #[arg(long, default_value_t = SamplerParams::default().names)]
        names: usize,
    },
    /// Empirical and analytic degree-bias curves.
    Curves {
        #[arg(long)]
        config: PathBuf,
    },
    /// Corrects a trace CSV; the estimator follows the trace technique.
    Correct {
        #[arg(long)]
        trace: PathBuf,
        /// True coverage of the trace (traversals only).
        #[arg(long)]
        f: Option<f64>,
    },
    /// RMSE of the half-radius estimator against the random-graph correction.
    Compare {
        #[arg(long)]
        config: PathBuf,
    },
    /// Sampled, BFS-corrected and walk-corrected means over a coverage grid.
    Evaluate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Bias curves across assortativity targets.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_technique(s: &str) -> std::result::Result<Technique, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_)
        | Error::InvalidArgument(_)
        | Error::InvalidDistribution(_)
        | Error::UnknownNode(_)
        | Error::UnreachableCoverage { .. } => 2,
        Error::NonConvergence { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Writes to `dir/name` when an output directory is set, else to stdout.
fn emit(
    dir: Option<&Path>,
    name: &str,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            let mut w = BufWriter::new(File::create(&path)?);
            body(&mut w)?;
            w.flush()?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn load_config(
    cli_seed: Option<u64>,
    replicas: Option<usize>,
    out: &Option<PathBuf>,
    path: &Path,
) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(s) = cli_seed {
        cfg.rng_seed = s;
    }
    if let Some(r) = replicas {
        cfg.replicas = r;
    }
    if let Some(o) = out {
        cfg.output_dir = o.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn print_report(report: &EstimationReport, w: &mut dyn Write) -> Result<()> {
    writeln!(
        w,
        "method,value,mean_degree,t,iterations,residual,distribution_json"
    )?;
    let d = report.diagnostics;
    writeln!(
        w,
        "{},{},{},{},{},{},\"{}\"",
        report.method,
        report.value,
        report
            .mean_degree
            .map(|m| m.to_string())
            .unwrap_or_default(),
        d.map(|d| d.t.to_string()).unwrap_or_default(),
        d.map(|d| d.iterations.to_string()).unwrap_or_default(),
        d.map(|d| format!("{:e}", d.residual)).unwrap_or_default(),
        report
            .distribution
            .as_ref()
            .map(|p| p.to_json())
            .unwrap_or_default()
            .replace('"', "\"\""),
    )?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.rng_seed.unwrap_or(0);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Stats { edgelist, raw } => {
            let options = if raw {
                LoadOptions::raw()
            } else {
                LoadOptions::default()
            };
            let g = load_edge_list_file(&edgelist, options)?;
            let stats = GraphStats::of(&g)?;
            emit(out, "stats.csv", |w| {
                writeln!(w, "{}", GraphStats::CSV_HEADER)?;
                writeln!(w, "{}", stats.csv_row())?;
                Ok(())
            })
        }
        Command::Generate {
            pk,
            nodes,
            assortativity,
        } => {
            let d = DegreeModel::parse_spec(&pk)?.distribution()?;
            let seq = degree_sequence_from_distribution(&d, nodes)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = configuration_model(&seq, &mut rng)?;
            if let Some(r) = assortativity {
                let outcome = rewire_to_assortativity(&g, r, &mut rng, RewireOptions::default())?;
                eprintln!(
                    "assortativity {:.4} -> {:.4}",
                    outcome.initial_r, outcome.achieved_r
                );
                g = outcome.graph;
            }
            emit(out, "graph.txt", |w| write_edge_list(&g, w))
        }
        Command::Sample {
            graph,
            technique,
            seed_node,
            budget,
            burn_probability,
            names,
        } => {
            let g = load_edge_list_file(&graph, LoadOptions::default())?;
            let start = (0..g.node_count())
                .find(|&v| g.label(v) == seed_node)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "seed node {seed_node} is not in the largest component"
                    ))
                })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params = SamplerParams {
                burn_probability,
                names,
            };
            let mut trace = sample(&g, technique, start, budget, params, &mut rng)?;
            for r in &mut trace.records {
                r.node = g.label(r.node) as usize;
            }
            trace.seed = seed_node as usize;
            trace.rng_seed = Some(seed);
            emit(out, "trace.csv", |w| trace.write_csv(w))
        }
        Command::Correct { trace, f } => {
            let t = SampleTrace::read_csv(BufReader::new(File::open(&trace)?))?;
            let x = t.x_or_degree();
            let report = match t.technique {
                Technique::RandomWalk => rw_correct(&t, &x)?,
                Technique::Mhrw => mhrw_correct(&t, &x)?,
                _ => {
                    let f = f
                        .or((t.coverage.is_finite()).then_some(t.coverage))
                        .ok_or_else(|| {
                            Error::InvalidArgument("coverage unknown: pass --f".into())
                        })?;
                    bfs_correct(&t, &x, f)?
                }
            };
            emit(out, "correction.csv", |w| print_report(&report, w))
        }
        Command::Curves { config } => {
            let cfg = load_config(cli.rng_seed, cli.replicas, &cli.out, &config)?;
            let table = harness::run_bias_curves(&cfg)?;
            let reference = GraphFactory::new(&cfg)?.reference_distribution()?;
            let analytic = bias_curve(&reference, &cfg.f_grid)?;
            let dir = Some(cfg.output_dir.as_path());
            emit(dir, "curves.csv", |w| harness::write_curves_csv(&table, w))?;
            emit(dir, "analytic_curve.csv", |w| write_curve_csv(&analytic, w))
        }
        Command::Compare { config } => {
            let cfg = load_config(cli.rng_seed, cli.replicas, &cli.out, &config)?;
            let table = harness::run_rmse_comparison(&cfg)?;
            emit(Some(cfg.output_dir.as_path()), "rmse.csv", |w| {
                harness::write_rmse_table_csv(&table, w)
            })
        }
        Command::Evaluate { config } => {
            let cfg = load_config(cli.rng_seed, cli.replicas, &cli.out, &config)?;
            let table = harness::run_correction_eval(&cfg)?;
            let dir = Some(cfg.output_dir.as_path());
            emit(dir, "corrections.csv", |w| {
                harness::write_corrections_csv(&table, w)
            })?;
            emit(dir, "correction_runs.csv", |w| {
                harness::write_correction_runs_csv(&table, w)
            })
        }
        Command::Sweep { config } => {
            let cfg = load_config(cli.rng_seed, cli.replicas, &cli.out, &config)?;
            let table = harness::run_assortativity_sweep(&cfg)?;
            emit(Some(cfg.output_dir.as_path()), "assortativity.csv", |w| {
                harness::write_sweep_csv(&table, w)
            })
        }
    }
}
