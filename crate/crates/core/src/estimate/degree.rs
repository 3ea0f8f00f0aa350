use std::collections::BTreeMap;

use super::{EstimationReport, SolveMethod, SolverDiagnostics};
use crate::analytic::{inclusion_weight, t_of_f};
use crate::distribution::DegreeDistribution;
use crate::error::{Error, Result};
use crate::sampling::SampleTrace;

/// Observed degree distribution of a trace, repeated visits included.
pub fn empirical_q(trace: &SampleTrace) -> Result<DegreeDistribution> {
    if trace.is_empty() {
        return Err(Error::InvalidArgument("empty trace".into()));
    }
    let mut counts = BTreeMap::new();
    for r in &trace.records {
        *counts.entry(r.degree).or_insert(0) += 1;
    }
    DegreeDistribution::from_counts(&counts)
}

fn check_x(trace: &SampleTrace, x: &[f64]) -> Result<()> {
    if trace.is_empty() {
        return Err(Error::InvalidArgument("empty trace".into()));
    }
    if x.len() != trace.len() {
        return Err(Error::InvalidArgument(format!(
            "{} attribute values for {} records",
            x.len(),
            trace.len()
        )));
    }
    Ok(())
}

fn check_positive_degrees(trace: &SampleTrace) -> Result<()> {
    if let Some(r) = trace.records.iter().find(|r| r.degree == 0) {
        return Err(Error::InvalidArgument(format!(
            "node {} has degree zero",
            r.node
        )));
    }
    Ok(())
}

fn mean_of(d: &DegreeDistribution) -> f64 {
    d.iter().map(|(k, p)| k as f64 * p).sum()
}

/// Mean degree of a random-walk trace after reweighting by `1/k`:
/// `|S| / Σ 1/k_v`.
pub fn rw_mean_degree(trace: &SampleTrace) -> Result<f64> {
    check_positive_degrees(trace)?;
    let inv: f64 = trace.records.iter().map(|r| 1.0 / r.degree as f64).sum();
    Ok(trace.len() as f64 / inv)
}

/// Hansen-Hurwitz ratio estimator for random walks: each visit is weighted
/// by the inverse of the node degree.
pub fn rw_correct(trace: &SampleTrace, x: &[f64]) -> Result<EstimationReport> {
    check_x(trace, x)?;
    check_positive_degrees(trace)?;
    let (mut num, mut den) = (0.0, 0.0);
    let mut per_degree = BTreeMap::new();
    for (r, &xv) in trace.records.iter().zip(x) {
        let w = 1.0 / r.degree as f64;
        num += xv * w;
        den += w;
        *per_degree.entry(r.degree).or_insert(0.0) += w;
    }
    let p = DegreeDistribution::from_weights(per_degree)?;
    Ok(EstimationReport {
        method: "rw".into(),
        mean_degree: Some(rw_mean_degree(trace)?),
        distribution: Some(p),
        value: num / den,
        diagnostics: None,
    })
}

/// A Metropolis-Hastings walk already samples nodes uniformly, so the plain
/// sample mean is the estimate.
pub fn mhrw_correct(trace: &SampleTrace, x: &[f64]) -> Result<EstimationReport> {
    check_x(trace, x)?;
    let q = empirical_q(trace)?;
    Ok(EstimationReport {
        method: "mhrw".into(),
        mean_degree: Some(mean_of(&q)),
        distribution: Some(q),
        value: x.iter().sum::<f64>() / x.len() as f64,
        diagnostics: None,
    })
}

/// Undoes BFS degree bias at a known time `t`: each observed fraction is
/// divided by the inclusion weight `1 - (1 - t)^k`, then renormalized.
pub fn bfs_correct_at_t(qhat: &DegreeDistribution, t: f64) -> Result<DegreeDistribution> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::InvalidArgument(format!("time {t} outside (0, 1]")));
    }
    if qhat.get(0) > 0.0 {
        return Err(Error::InvalidArgument(
            "degree-zero mass cannot be reweighted".into(),
        ));
    }
    DegreeDistribution::from_weights(qhat.iter().map(|(k, q)| (k, q / inclusion_weight(k, t))))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BfsSolverOptions {
    /// Accept `|residual| <= tolerance * min(1, f_real)`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Weight of the new iterate in the fixed-point fallback.
    pub damping: f64,
}

impl Default for BfsSolverOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iterations: 500,
            damping: 0.5,
        }
    }
}

/// Coverage implied by correcting `qhat` at time `t`, minus the target.
///
/// With `p̂` the correction of `qhat` at `t`, the implied coverage
/// `Σ p̂_k w_k(t)` collapses to `1 / Σ qhat_k / w_k(t)`, which increases
/// with `t` because every weight does.
fn residual(qhat: &[(usize, f64)], t: f64, f_real: f64) -> f64 {
    let s: f64 = qhat.iter().map(|&(k, q)| q / inclusion_weight(k, t)).sum();
    1.0 / s - f_real
}

fn solve_bisection(
    qhat: &[(usize, f64)],
    f_real: f64,
    tol: f64,
    max_iterations: usize,
) -> Result<SolverDiagnostics> {
    let done = |iterations, t, residual| SolverDiagnostics {
        iterations,
        t,
        residual,
        method: SolveMethod::Bisection,
    };
    let r_hi = residual(qhat, 1.0, f_real);
    if r_hi.abs() <= tol {
        return Ok(done(0, 1.0, r_hi));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut best = (f64::INFINITY, 1.0);
    for i in 1..=max_iterations {
        let mid = 0.5 * (lo + hi);
        let r = residual(qhat, mid, f_real);
        if r.abs() < best.0.abs() {
            best = (r, mid);
        }
        if r.abs() <= tol {
            return Ok(done(i, mid, r));
        }
        if mid <= lo || mid >= hi {
            break;
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iterations,
        residual: best.0.abs(),
    })
}

/// Damped iteration `t <- (1 - d) t + d t(f_real; p̂(t))`.
pub(crate) fn solve_fixed_point(
    qhat: &DegreeDistribution,
    f_real: f64,
    options: BfsSolverOptions,
) -> Result<SolverDiagnostics> {
    let pairs: Vec<_> = qhat.iter().collect();
    let tol = options.tolerance * f_real.min(1.0);
    let mut t = t_of_f(qhat, f_real)?;
    let mut best = f64::INFINITY;
    for i in 1..=options.max_iterations {
        let r = residual(&pairs, t, f_real);
        best = best.min(r.abs());
        if r.abs() <= tol {
            return Ok(SolverDiagnostics {
                iterations: i,
                t,
                residual: r,
                method: SolveMethod::FixedPoint,
            });
        }
        let target = t_of_f(&bfs_correct_at_t(qhat, t)?, f_real)?;
        t = (1.0 - options.damping) * t + options.damping * target;
    }
    Err(Error::NonConvergence {
        iterations: options.max_iterations,
        residual: best,
    })
}

/// Horvitz-Thompson correction of a BFS-style trace that covers a fraction
/// `f_real` of the graph, with the default solver settings.
pub fn bfs_correct(trace: &SampleTrace, x: &[f64], f_real: f64) -> Result<EstimationReport> {
    bfs_correct_with(trace, x, f_real, BfsSolverOptions::default())
}

/// Solves for the time `t` at which the corrected distribution predicts the
/// observed coverage, then reweights every record by `1 / w(k_v, t)`.
pub fn bfs_correct_with(
    trace: &SampleTrace,
    x: &[f64],
    f_real: f64,
    options: BfsSolverOptions,
) -> Result<EstimationReport> {
    if trace.with_replacement {
        return Err(Error::InvalidArgument(
            "BFS correction needs a trace without replacement".into(),
        ));
    }
    if !(f_real > 0.0 && f_real <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "coverage {f_real} outside (0, 1]"
        )));
    }
    check_x(trace, x)?;
    check_positive_degrees(trace)?;
    let qhat = empirical_q(trace)?;
    let pairs: Vec<_> = qhat.iter().collect();
    let tol = options.tolerance * f_real.min(1.0);

    let bracketed = residual(&pairs, 0.0, f_real) < 0.0 && residual(&pairs, 1.0, f_real) >= -tol;
    let diag = if bracketed {
        solve_bisection(&pairs, f_real, tol, options.max_iterations)?
    } else {
        solve_fixed_point(&qhat, f_real, options)?
    };

    let p = bfs_correct_at_t(&qhat, diag.t)?;
    let (mut num, mut den) = (0.0, 0.0);
    for (r, &xv) in trace.records.iter().zip(x) {
        let inv = 1.0 / inclusion_weight(r.degree, diag.t);
        num += xv * inv;
        den += inv;
    }
    Ok(EstimationReport {
        method: "bfs".into(),
        mean_degree: Some(mean_of(&p)),
        distribution: Some(p),
        value: num / den,
        diagnostics: Some(diag),
    })
}
