//! Acceptance suite. Prints one `criterion N: PASS|FAIL|SKIP` line per
//! criterion and exits non-zero if any criterion fails.
//!
//! Dataset-dependent criteria read edge lists from `$SAMPLAB_DATA`
//! (`ca-CondMat.txt`, `email-EuAll.txt`, `p2p-Gnutella31.txt`).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use samplab::analytic::{exact_step_distribution, f_of_t, mean_q_of_f, t_of_f};
use samplab::edgelist::{load_edge_list_file, GraphStats, LoadOptions};
use samplab::estimate::{
    arbitrary_topology_estimate, mhrw_correct, oracle_inclusion, rmse_compare, rw_correct,
    AccessMode, NeighborhoodScheme, RmseConfig, SchemeKind, RG_METHOD,
};
use samplab::generate::{
    configuration_model, degree_sequence_from_distribution, rewire_to_assortativity, RewireOptions,
};
use samplab::harness::{
    run_assortativity_sweep, run_bias_curves, run_correction_eval, DegreeModel, ExperimentConfig,
    GraphSource, TechniqueConfig, REWIRE_TOLERANCE,
};
use samplab::sampling::{
    assign_stub_indices, mhrw, random_walk, stub_level_traversal, weighted_without_replacement,
    QueueDiscipline,
};
use samplab::{DegreeDistribution, Graph, Technique};

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn distributions() -> Vec<(&'static str, DegreeDistribution)> {
    vec![
        ("regular(4)", DegreeDistribution::regular(4).unwrap()),
        (
            "bimodal{1,3}",
            DegreeDistribution::new([(1, 0.5), (3, 0.5)]).unwrap(),
        ),
        (
            "powerlaw(2.5,2,100)",
            DegreeModel::default().distribution().unwrap(),
        ),
    ]
}

fn base_config(nodes: usize, replicas: usize, seed: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(GraphSource::Generated {
        degrees: DegreeModel::default(),
        nodes,
        assortativity: None,
    });
    cfg.replicas = replicas;
    cfg.rng_seed = seed;
    cfg
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, d) in distributions() {
        let (mean, k2k) = d.moments().unwrap();
        let low = mean_q_of_f(&d, 1e-6).unwrap();
        let high = mean_q_of_f(&d, 1.0).unwrap();
        let grid: Vec<f64> = (1..=100).map(|i| i as f64 / 100.0).collect();
        let curve: Vec<f64> = grid.iter().map(|&f| mean_q_of_f(&d, f).unwrap()).collect();
        // A single-degree distribution has a flat curve; others must fall strictly.
        let shape = if d.len() == 1 {
            curve.iter().all(|&m| (m - mean).abs() <= 1e-12)
        } else {
            curve.windows(2).all(|w| w[1] < w[0])
        };
        let pass = rel(low, k2k) <= 1e-3 && (high - mean).abs() <= 1e-9 && shape;
        ok &= pass;
        notes.push(format!(
            "{name}: low_rel={:.1e} high_abs={:.1e} shape={shape}",
            rel(low, k2k),
            (high - mean).abs()
        ));
    }
    verdict(ok, notes.join("; "))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for (_, d) in distributions() {
        for i in 1..=999 {
            let f = i as f64 / 1000.0;
            let t = t_of_f(&d, f).unwrap();
            worst = worst.max((f_of_t(&d, t).unwrap() - f).abs());
        }
    }
    verdict(worst <= 1e-10, format!("max |f(t(f)) - f| = {worst:.2e}"))
}

fn criterion_3() -> Outcome {
    let mut cfg = base_config(10_000, 200, 3);
    cfg.f_grid = vec![0.1, 0.3, 0.5, 0.7, 0.9];
    let mut ff = TechniqueConfig::new(Technique::ForestFire);
    ff.burn_probability = Some(0.7);
    cfg.techniques = vec![
        TechniqueConfig::new(Technique::Bfs),
        TechniqueConfig::new(Technique::Dfs),
        ff,
        TechniqueConfig::new(Technique::WeightedWithoutReplacement),
    ];
    let table = match run_bias_curves(&cfg) {
        Ok(t) => t,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let mut worst_rel: f64 = 0.0;
    let mut worst_pair: f64 = 0.0;
    let mut ok = true;
    for row in &table.rows {
        let Some(theory) = row.analytic_mean_q else {
            ok = false;
            continue;
        };
        ok &= row.replicas == cfg.replicas;
        worst_rel = worst_rel.max(rel(row.mean_sampled_degree, theory));
    }
    for a in &table.rows {
        for b in table
            .rows
            .iter()
            .filter(|b| b.f == a.f && b.technique > a.technique)
        {
            let noise = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
            worst_pair =
                worst_pair.max((a.mean_sampled_degree - b.mean_sampled_degree).abs() / noise);
        }
    }
    ok &= worst_rel <= 0.03 && worst_pair <= 4.0;
    verdict(
        ok,
        format!("max rel dev {worst_rel:.4}, max pairwise gap {worst_pair:.2} combined SE"),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    let mut failures = 0;
    for _ in 0..500 {
        let mut seq: Vec<usize> = (0..50).map(|_| rng.random_range(1..=6)).collect();
        if seq.iter().sum::<usize>() % 2 == 1 {
            seq[0] += 1;
        }
        let a = assign_stub_indices(&seq, &mut rng);
        let seed = rng.random_range(0..50);
        let traces: Vec<Vec<usize>> = [
            QueueDiscipline::Fifo,
            QueueDiscipline::Lifo,
            QueueDiscipline::RandomizedFifo(0.5),
        ]
        .into_iter()
        .map(|d| {
            stub_level_traversal(&a, seed, d, 50, &mut rng)
                .unwrap()
                .trace
                .nodes()
        })
        .collect();
        let mut by_index: Vec<usize> = (0..50).filter(|&v| v != seed).collect();
        by_index.sort_by(|&u, &v| a.min_index(u).unwrap().total_cmp(&a.min_index(v).unwrap()));
        let mut good = true;
        for t in &traces {
            good &= t[0] == seed && t[1..] == by_index[..t.len() - 1];
            for u in &traces {
                let m = t.len().min(u.len());
                good &= t[..m] == u[..m];
            }
        }
        checked += 1;
        failures += usize::from(!good);
    }
    verdict(
        failures == 0,
        format!("{checked} assignments, {failures} mismatches"),
    )
}

fn criterion_5() -> Outcome {
    let seq = [1usize, 1, 2];
    let exact2 = exact_step_distribution(&seq, 2).unwrap();
    let exact3 = exact_step_distribution(&seq, 3).unwrap();
    let hand2 = [1.0 / 3.0; 3];
    let hand3 = [5.0 / 12.0, 5.0 / 12.0, 1.0 / 6.0];
    let exact_ok = exact2
        .iter()
        .zip(hand2)
        .chain(exact3.iter().zip(hand3))
        .all(|(a, b)| (a - b).abs() <= 1e-15);

    let replicas = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counts = [0usize; 3];
    let mut exhausted = 0;
    for _ in 0..replicas {
        let a = assign_stub_indices(&seq, &mut rng);
        let seed = weighted_without_replacement(&seq, 1, &mut rng)[0];
        let trace = stub_level_traversal(&a, seed, QueueDiscipline::Fifo, 2, &mut rng)
            .unwrap()
            .trace
            .nodes();
        let second = if trace.len() == 2 {
            trace[1]
        } else {
            // The seed closed on itself; the next node in stub-index order
            // continues the sequence.
            exhausted += 1;
            (0..3)
                .filter(|&v| v != seed)
                .min_by(|&u, &v| a.min_index(u).unwrap().total_cmp(&a.min_index(v).unwrap()))
                .unwrap()
        };
        counts[second] += 1;
    }
    let p: Vec<f64> = counts.iter().map(|&c| c as f64 / replicas as f64).collect();
    let worst = p.iter().map(|&x| rel(x, 1.0 / 3.0)).fold(0.0, f64::max);
    verdict(
        exact_ok && worst <= 0.01,
        format!(
            "P(X2)=({:.4},{:.4},{:.4}) max rel {worst:.4}, {exhausted} self-closed seeds, exact tables {}",
            p[0],
            p[1],
            p[2],
            if exact_ok { "match" } else { "differ" }
        ),
    )
}

fn connected_config_graph(n: usize, seed: u64) -> Graph {
    let seq = degree_sequence_from_distribution(&DegreeModel::default().distribution().unwrap(), n)
        .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    configuration_model(&seq, &mut rng)
        .unwrap()
        .largest_component()
}

fn criterion_6() -> Outcome {
    let g = connected_config_graph(10_000, 6);
    let truth = 2.0 * g.edge_count() as f64 / g.node_count() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    let start = rng.random_range(0..g.node_count());
    let walk = random_walk(&g, start, 1_000_000, &mut rng).unwrap();
    let rw = rw_correct(&walk, &walk.x_or_degree()).unwrap().value;
    let mh = mhrw(&g, start, 1_000_000, &mut rng).unwrap();
    let mh_raw = mhrw_correct(&mh, &mh.x_or_degree()).unwrap().value;
    verdict(
        rel(rw, truth) <= 0.02 && rel(mh_raw, truth) <= 0.02,
        format!(
            "<k>={truth:.4} rw_corrected={rw:.4} mhrw_raw={mh_raw:.4} (n={})",
            g.node_count()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut cfg = base_config(10_000, 200, 7);
    cfg.f_grid = vec![0.1, 0.3];
    cfg.techniques = vec![TechniqueConfig::new(Technique::Bfs)];
    let table = match run_correction_eval(&cfg) {
        Ok(t) => t,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let truth_mean = table.truth.mean();
    let mut ok = true;
    let mut notes = Vec::new();
    for &f in &cfg.f_grid {
        let row = table.rows.iter().find(|r| r.f == f).unwrap();
        let mean_rel = rel(row.bfs_corrected_mean, truth_mean);
        ok &= mean_rel <= 0.03 && row.failures == 0;
        let dists: Vec<&DegreeDistribution> = table
            .runs
            .iter()
            .filter(|r| r.f == f)
            .filter_map(|r| r.corrected.as_ref())
            .collect();
        let m = dists.len() as f64;
        let mut worst_z: f64 = 0.0;
        for (k, pk) in table.truth.iter().filter(|&(_, p)| p >= 0.01) {
            let xs: Vec<f64> = dists.iter().map(|d| d.get(k)).collect();
            let mean = xs.iter().sum::<f64>() / m;
            let se = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0) / m).sqrt();
            worst_z = worst_z.max((mean - pk).abs() / se);
        }
        ok &= worst_z <= 3.0;
        notes.push(format!(
            "f={f}: corrected={:.4} vs {truth_mean:.4} (rel {mean_rel:.4}), max per-k z={worst_z:.2}",
            row.bfs_corrected_mean
        ));
    }
    verdict(ok, notes.join("; "))
}

fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)).collect()).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.random_range(2..=50);
    let m = rng.random_range(1..=2 * n);
    let edges = (0..m)
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Largest relative gap between the seed-averaged estimate and the total.
fn lemma_gap(g: &Graph, x: &[f64], scheme: &NeighborhoodScheme, mode: AccessMode) -> f64 {
    let n = g.node_count();
    let p = scheme
        .seed_probabilities
        .clone()
        .unwrap_or_else(|| vec![1.0 / n as f64; n]);
    let total: f64 = x.iter().sum();
    let avg: f64 = (0..n)
        .map(|w| {
            p[w] * arbitrary_topology_estimate(g, x, w, scheme, mode)
                .unwrap()
                .value
        })
        .sum();
    (avg - total).abs() / total.abs().max(1e-300)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut graphs: Vec<Graph> = (0..20).map(|_| random_graph(&mut rng)).collect();
    graphs.push(path(3));
    for g in &graphs {
        let n = g.node_count();
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..10.0)).collect();
        let mut p: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= s);
        let extreme = rng.random_range(0..n);
        for depth in [2, 4] {
            for (kind, mode) in [
                (SchemeKind::Trivial, AccessMode::SampleOnly),
                (SchemeKind::Extreme(extreme), AccessMode::SampleOnly),
                (SchemeKind::HalfRadius, AccessMode::SampleOnly),
                (SchemeKind::HalfRadiusExtended, AccessMode::Oracle),
            ] {
                let uniform = NeighborhoodScheme::new(kind, depth);
                worst = worst.max(lemma_gap(g, &x, &uniform, mode));
                // Non-uniform seeds need inclusion terms of unsampled nodes.
                let weighted =
                    NeighborhoodScheme::new(kind, depth).with_seed_probabilities(p.clone());
                worst = worst.max(lemma_gap(g, &x, &weighted, AccessMode::Oracle));
            }
        }
    }
    ok &= worst <= 1e-9;

    // Path 0-1-2, uniform seeds, depth 2, half radius: inclusion (2/3, 1, 2/3).
    let p3 = path(3);
    let hr = NeighborhoodScheme::new(SchemeKind::HalfRadius, 2);
    let pi = oracle_inclusion(&p3, &hr).unwrap();
    let hand_pi = [2.0 / 3.0, 1.0, 2.0 / 3.0];
    let x = [1.0, 2.0, 1.0];
    let estimates: Vec<f64> = (0..3)
        .map(|w| {
            arbitrary_topology_estimate(&p3, &x, w, &hr, AccessMode::SampleOnly)
                .unwrap()
                .value
        })
        .collect();
    let hand_est = [3.5, 5.0, 3.5];
    let path_ok = pi.iter().zip(hand_pi).all(|(a, b)| (a - b).abs() <= 1e-12)
        && estimates
            .iter()
            .zip(hand_est)
            .all(|(a, b)| (a - b).abs() <= 1e-12);
    ok &= path_ok;
    verdict(
        ok,
        format!(
            "{} graphs, max rel gap {worst:.1e}; path estimates ({:.3}, {:.3}, {:.3})",
            graphs.len(),
            estimates[0],
            estimates[1],
            estimates[2]
        ),
    )
}

fn data_file(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os("SAMPLAB_DATA")?;
    let p = PathBuf::from(dir).join(name);
    p.exists().then_some(p)
}

fn criterion_9() -> Outcome {
    let (Some(condmat), Some(email)) = (data_file("ca-CondMat.txt"), data_file("email-EuAll.txt"))
    else {
        return Outcome::Skip(
            "set SAMPLAB_DATA to a directory with ca-CondMat.txt and email-EuAll.txt".into(),
        );
    };
    let load = |p: &PathBuf| {
        GraphStats::of(&load_edge_list_file(p, LoadOptions::default()).unwrap()).unwrap()
    };
    let c = load(&condmat);
    let e = load(&email);
    let ok = c.nodes == 21_363
        && c.edges == 91_341
        && (c.mean_degree - 8.6).abs() <= 0.1
        && (c.k2_over_k - 22.5).abs() <= 0.5
        && (e.mean_degree - 3.0).abs() <= 0.1
        && (e.k2_over_k - 567.9).abs() <= 5.0;
    verdict(
        ok,
        format!(
            "ca-CondMat n={} m={} <k>={:.2} <k2>/<k>={:.2}; email-EuAll <k>={:.2} <k2>/<k>={:.2}",
            c.nodes, c.edges, c.mean_degree, c.k2_over_k, e.mean_degree, e.k2_over_k
        ),
    )
}

fn criterion_10() -> Outcome {
    let (Some(condmat), Some(gnutella)) =
        (data_file("ca-CondMat.txt"), data_file("p2p-Gnutella31.txt"))
    else {
        return Outcome::Skip(
            "set SAMPLAB_DATA to a directory with ca-CondMat.txt and p2p-Gnutella31.txt".into(),
        );
    };
    let mut ok = true;
    let mut notes = Vec::new();
    for (path, rg_ref, hr_ref) in [(condmat, 3.3, 10.3), (gnutella, 1.6, 4.6)] {
        let g = load_edge_list_file(&path, LoadOptions::default()).unwrap();
        let x: Vec<f64> = g.degrees().into_iter().map(|k| k as f64).collect();
        let cfg = RmseConfig {
            replicas: 1000,
            rng_seed: 10,
            ..RmseConfig::default()
        };
        let rows = rmse_compare(&g, &x, &cfg).unwrap();
        let rg = rows.iter().find(|r| r.method == RG_METHOD).unwrap().rmse;
        let hr = rows.iter().find(|r| r.method != RG_METHOD).unwrap().rmse;
        ok &= rg < hr && rel(rg, rg_ref) <= 0.3 && rel(hr, hr_ref) <= 0.3;
        notes.push(format!(
            "{}: rg={rg:.2} half_radius={hr:.2}",
            path.display()
        ));
    }
    verdict(ok, notes.join("; "))
}

fn criterion_11() -> Outcome {
    // Degree multiset preserved by a direct rewiring in both directions.
    let g = connected_config_graph(10_000, 11);
    let mut sorted = g.degrees();
    sorted.sort_unstable();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut ok = true;
    let mut notes = Vec::new();
    for target in [0.2, -0.2] {
        match rewire_to_assortativity(&g, target, &mut rng, RewireOptions::default()) {
            Ok(out) => {
                let mut d = out.graph.degrees();
                d.sort_unstable();
                let hit = (out.achieved_r - target).abs() <= REWIRE_TOLERANCE;
                ok &= hit && d == sorted;
                notes.push(format!("r {:.3}->{:.3}", out.initial_r, out.achieved_r));
            }
            Err(e) => {
                ok = false;
                notes.push(e.to_string());
            }
        }
    }

    let mut cfg = base_config(10_000, 100, 11);
    cfg.f_grid = vec![0.05];
    cfg.assortativity_targets = vec![0.2, -0.2];
    let mut rw = TechniqueConfig::new(Technique::RandomWalk);
    rw.steps = Some(100_000);
    cfg.techniques = vec![TechniqueConfig::new(Technique::Bfs), rw];
    let table = match run_assortativity_sweep(&cfg) {
        Ok(t) => t,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let mean = |i: usize, tech: &str| {
        table.points[i]
            .rows
            .iter()
            .find(|r| r.technique == tech)
            .map_or(f64::NAN, |r| r.mean_sampled_degree)
    };
    let (b0, bp, bn) = (mean(0, "bfs"), mean(1, "bfs"), mean(2, "bfs"));
    let (r0, rp, rn) = (
        mean(0, "rw(steps=100000)"),
        mean(1, "rw(steps=100000)"),
        mean(2, "rw(steps=100000)"),
    );
    ok &= table.points.iter().all(|p| p.replicas_used == cfg.replicas);
    ok &= bp > b0 && bn < b0;
    ok &= rel(rp, r0) <= 0.02 && rel(rn, r0) <= 0.02;
    notes.push(format!(
        "bfs(f=0.05) r=0:{b0:.3} +0.2:{bp:.3} -0.2:{bn:.3}; rw {r0:.3}/{rp:.3}/{rn:.3}"
    ));
    verdict(ok, notes.join("; "))
}

fn criterion_12() -> Outcome {
    Outcome::Skip(
        "excluded: proprietary crawl data; estimator math covered by criteria 6 and 7".into(),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome, Duration); 12] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(1)),
        (3, criterion_3, Duration::from_secs(600)),
        (4, criterion_4, Duration::MAX),
        (5, criterion_5, Duration::from_secs(30)),
        (6, criterion_6, Duration::from_secs(120)),
        (7, criterion_7, Duration::from_secs(600)),
        (8, criterion_8, Duration::from_secs(60)),
        (9, criterion_9, Duration::MAX),
        (10, criterion_10, Duration::from_secs(900)),
        (11, criterion_11, Duration::MAX),
        (12, criterion_12, Duration::MAX),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, run, limit) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Outcome::Pass(d) if elapsed > limit => {
                Outcome::Fail(format!("{d}; over time limit {limit:?}"))
            }
            o => o,
        };
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!(
            "criterion {id}: {tag} ({:.2}s) {detail}",
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
