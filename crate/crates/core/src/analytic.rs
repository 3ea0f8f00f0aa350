//! Expected BFS degree bias on configuration-model graphs.
//!
//! A BFS on a random graph with degree distribution `p_k` is modelled in
//! continuous time `t ∈ [0, 1]`: a node of degree `k` has been reached by time
//! `t` with probability `1 - (1 - t)^k`. Coverage `f` and time `t` are linked
//! through a monotone map, inverted numerically.

use std::io::Write;

use serde::Serialize;

use crate::distribution::DegreeDistribution;
use crate::error::{Error, Result};

const T_TOLERANCE: f64 = 1e-10;
const T_MAX_ITERATIONS: usize = 200;

/// Probability `1 - (1 - t)^k` that a degree-`k` node is reached by time `t`.
/// Evaluated as `-expm1(k ln(1 - t))`, which stays accurate for tiny `t` and
/// large `k`.
pub fn inclusion_weight(k: usize, t: f64) -> f64 {
    if t >= 1.0 {
        return if k == 0 { 0.0 } else { 1.0 };
    }
    -(k as f64 * (-t).ln_1p()).exp_m1()
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("time {t} outside [0, 1]")));
    }
    Ok(())
}

/// Expected fraction of all nodes that have degree `k` and are sampled by
/// time `t`, for every `k` in the support.
pub fn f_k_of_t(d: &DegreeDistribution, t: f64) -> Result<Vec<(usize, f64)>> {
    check_t(t)?;
    Ok(d.iter()
        .map(|(k, p)| (k, p * inclusion_weight(k, t)))
        .collect())
}

/// Expected sampled fraction of nodes at time `t`.
pub fn f_of_t(d: &DegreeDistribution, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(coverage_at(d, t))
}

fn coverage_at(d: &DegreeDistribution, t: f64) -> f64 {
    d.iter().map(|(k, p)| p * inclusion_weight(k, t)).sum()
}

/// Largest reachable coverage, `1 - p_0`.
pub fn max_coverage(d: &DegreeDistribution) -> f64 {
    1.0 - d.get(0)
}

/// Time at which the expected coverage reaches `f`, by bisection.
pub fn t_of_f(d: &DegreeDistribution, f: f64) -> Result<f64> {
    let f_max = max_coverage(d);
    if !(f >= 0.0) {
        return Err(Error::InvalidArgument(format!("coverage {f} is negative")));
    }
    if f > f_max + 1e-12 {
        return Err(Error::UnreachableCoverage {
            requested: f,
            max: f_max,
        });
    }
    if f == 0.0 {
        return Ok(0.0);
    }
    if f >= f_max {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut best = (f64::INFINITY, 0.5);
    for _ in 0..T_MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let r = coverage_at(d, mid) - f;
        if r.abs() < best.0 {
            best = (r.abs(), mid);
        }
        if r.abs() <= 0.01 * T_TOLERANCE || hi - lo <= f64::EPSILON * mid {
            break;
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if best.0 > T_TOLERANCE {
        return Err(Error::NonConvergence {
            iterations: T_MAX_ITERATIONS,
            residual: best.0,
        });
    }
    Ok(best.1)
}

/// Degree distribution seen by a random walk: `k p_k / ⟨k⟩`, with mean
/// `⟨k²⟩/⟨k⟩`.
pub fn rw_expected(d: &DegreeDistribution) -> Result<(DegreeDistribution, f64)> {
    let (_, mean) = d.moments()?;
    let q = DegreeDistribution::from_weights(d.iter().map(|(k, p)| (k, k as f64 * p)))?;
    Ok((q, mean))
}

/// Expected degree distribution of a BFS sample covering a fraction `f` of
/// the nodes. At `f = 0` this is the random-walk limit.
pub fn q_k_of_f(d: &DegreeDistribution, f: f64) -> Result<DegreeDistribution> {
    let t = t_of_f(d, f)?;
    if t == 0.0 {
        return rw_expected(d).map(|(q, _)| q);
    }
    DegreeDistribution::from_weights(d.iter().map(|(k, p)| (k, p * inclusion_weight(k, t))))
}

/// Expected mean degree of a BFS sample at coverage `f`.
pub fn mean_q_of_f(d: &DegreeDistribution, f: f64) -> Result<f64> {
    let t = t_of_f(d, f)?;
    if t == 0.0 {
        return d.moments().map(|(_, m)| m);
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (k, p) in d.iter() {
        let w = p * inclusion_weight(k, t);
        num += k as f64 * w;
        den += w;
    }
    Ok(num / den)
}

/// Exact law of the `step`-th node (1-based) drawn by degree-proportional
/// sampling without replacement from the degree sequence `seq`.
pub fn exact_step_distribution(seq: &[usize], step: usize) -> Result<Vec<f64>> {
    if step == 0 || step > 3 {
        return Err(Error::Unsupported(format!(
            "step {step}; only steps 1 to 3 are tabulated"
        )));
    }
    if step == 3 && seq.len() > 12 {
        return Err(Error::Unsupported(format!(
            "step 3 enumeration limited to 12 nodes, got {}",
            seq.len()
        )));
    }
    let z: usize = seq.iter().sum();
    if z == 0 {
        return Err(Error::InvalidArgument(
            "degree sequence has no stubs".into(),
        ));
    }
    let mut out = vec![0.0; seq.len()];
    let mut taken = vec![false; seq.len()];
    descend(seq, step, z, 1.0, &mut taken, &mut out)?;
    Ok(out)
}

fn descend(
    seq: &[usize],
    remaining_steps: usize,
    remaining_degree: usize,
    prob: f64,
    taken: &mut [bool],
    out: &mut [f64],
) -> Result<()> {
    if remaining_degree == 0 {
        return Err(Error::InvalidArgument(
            "sequence runs out of degree before the requested step".into(),
        ));
    }
    for v in 0..seq.len() {
        if taken[v] || seq[v] == 0 {
            continue;
        }
        let p = prob * seq[v] as f64 / remaining_degree as f64;
        if remaining_steps == 1 {
            out[v] += p;
        } else {
            taken[v] = true;
            descend(
                seq,
                remaining_steps - 1,
                remaining_degree - seq[v],
                p,
                taken,
                out,
            )?;
            taken[v] = false;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub f: f64,
    pub t: f64,
    pub mean_q: f64,
    pub q: DegreeDistribution,
}

/// Analytic bias curve over a grid of coverages.
pub fn bias_curve(d: &DegreeDistribution, grid: &[f64]) -> Result<Vec<CurvePoint>> {
    grid.iter()
        .map(|&f| {
            Ok(CurvePoint {
                f,
                t: t_of_f(d, f)?,
                mean_q: mean_q_of_f(d, f)?,
                q: q_k_of_f(d, f)?,
            })
        })
        .collect()
}

pub const CURVE_CSV_HEADER: [&str; 4] = ["f", "t", "mean_q", "q_k_json"];

pub fn write_curve_csv<W: Write>(points: &[CurvePoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CURVE_CSV_HEADER)?;
    for p in points {
        w.write_record([
            p.f.to_string(),
            p.t.to_string(),
            p.mean_q.to_string(),
            p.q.to_json(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
