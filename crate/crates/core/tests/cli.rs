use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use samplab::harness::{DegreeModel, ExperimentConfig, GraphSource, TechniqueConfig};
use samplab::Technique;

fn samplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_samplab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn small_config(dir: &Path, seed: u64) -> std::path::PathBuf {
    let mut cfg = ExperimentConfig::new(GraphSource::Generated {
        degrees: DegreeModel::default(),
        nodes: 300,
        assortativity: None,
    });
    cfg.techniques = [Technique::Bfs, Technique::ForestFire, Technique::RandomWalk]
        .into_iter()
        .map(TechniqueConfig::new)
        .collect();
    cfg.f_grid = vec![0.1, 0.5];
    cfg.replicas = 5;
    cfg.rng_seed = seed;
    cfg.output_dir = dir.join("out");
    let path = dir.join("config.json");
    fs::write(&path, cfg.to_json()).unwrap();
    path
}

#[test]
fn generate_then_stats_and_sample() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let text = stdout(&samplab(&[
        "generate",
        "--pk",
        "regular:3",
        "--nodes",
        "50",
        "--rng-seed",
        "4",
    ]));
    fs::write(&graph, &text).unwrap();
    let again = stdout(&samplab(&[
        "generate",
        "--pk",
        "regular:3",
        "--nodes",
        "50",
        "--rng-seed",
        "4",
    ]));
    assert_eq!(text, again);

    let stats = stdout(&samplab(&["stats", "--raw", graph.to_str().unwrap()]));
    let mut lines = stats.lines();
    assert_eq!(
        lines.next(),
        Some("nodes,edges,mean_degree,k2_over_k,assortativity")
    );
    assert!(lines
        .next()
        .unwrap()
        .starts_with("50,75,3.000000,3.000000,"));

    let label = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .to_string();
    let trace = stdout(&samplab(&[
        "sample",
        "--graph",
        graph.to_str().unwrap(),
        "--technique",
        "bfs",
        "--seed-node",
        &label,
        "--budget",
        "10",
    ]));
    assert!(trace.contains("# technique=bfs"));
    assert!(trace.contains("position,node,degree,x_value"));
    let rows: Vec<&str> = trace
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert!(!rows.is_empty() && rows.len() <= 10);
    assert_eq!(rows[0].split(',').nth(1), Some(label.as_str()));
}

#[test]
fn sample_then_correct() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    fs::write(
        &graph,
        stdout(&samplab(&[
            "generate",
            "--pk",
            "regular:4",
            "--nodes",
            "100",
        ])),
    )
    .unwrap();
    let label = fs::read_to_string(&graph)
        .unwrap()
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .to_string();
    let out = dir.path().join("s");
    let o = samplab(&[
        "--out",
        out.to_str().unwrap(),
        "sample",
        "--graph",
        graph.to_str().unwrap(),
        "--technique",
        "bfs",
        "--seed-node",
        &label,
        "--budget",
        "30",
    ]);
    stdout(&o);
    let trace = out.join("trace.csv");
    assert!(trace.exists());
    let report = stdout(&samplab(&[
        "correct",
        "--trace",
        trace.to_str().unwrap(),
        "--f",
        "0.3",
    ]));
    let mut lines = report.lines();
    assert_eq!(
        lines.next(),
        Some("method,value,mean_degree,t,iterations,residual,distribution_json")
    );
    let row = lines.next().unwrap();
    let value: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 4.0).abs() < 1e-9, "{row}");

    let bad = samplab(&["correct", "--trace", trace.to_str().unwrap(), "--f", "1.7"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn experiment_commands_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path(), 3);
    let cfg = cfg.to_str().unwrap();
    for cmd in ["curves", "evaluate", "compare"] {
        stdout(&samplab(&[cmd, "--config", cfg, "--replicas", "3"]));
    }
    let out = dir.path().join("out");
    for f in [
        "curves.csv",
        "analytic_curve.csv",
        "corrections.csv",
        "correction_runs.csv",
        "rmse.csv",
    ] {
        let text = fs::read_to_string(out.join(f)).unwrap();
        assert!(text.lines().any(|l| !l.starts_with('#')), "{f} is empty");
    }
    let curves = fs::read_to_string(out.join("curves.csv")).unwrap();
    assert!(curves.contains("# replicas=3"));
    assert!(curves.contains("# rng_seed=3"));
}

#[test]
fn experiment_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path(), 9);
    let run = |out: &str| {
        let out = dir.path().join(out);
        stdout(&samplab(&[
            "--out",
            out.to_str().unwrap(),
            "curves",
            "--config",
            cfg.to_str().unwrap(),
        ]));
        fs::read(out.join("curves.csv")).unwrap()
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(
        &cfg,
        r#"{"graph": {"kind": "generated", "nodes": 10}, "bogus": 1}"#,
    )
    .unwrap();
    assert_eq!(
        samplab(&["curves", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let o = samplab(&["generate", "--pk", "nonsense", "--nodes", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let o = samplab(&[
        "sample",
        "--graph",
        "x",
        "--technique",
        "crawl",
        "--seed-node",
        "1",
        "--budget",
        "2",
    ]);
    assert!(!o.status.success());
}
