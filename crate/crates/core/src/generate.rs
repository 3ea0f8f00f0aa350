//! Configuration-model generation and degree-preserving rewiring.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::distribution::DegreeDistribution;
use crate::error::{Error, Result};
use crate::graph::{EdgeDegreeSums, Graph, NodeId};

/// Degree sequence of `n` nodes realizing `d` with largest-remainder rounding.
///
/// If the stub total comes out odd, one node of the class with the largest
/// rounding deficit gets one extra stub. The sequence is sorted by degree.
pub fn degree_sequence_from_distribution(d: &DegreeDistribution, n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidArgument("node count must be positive".into()));
    }
    let classes: Vec<(usize, f64)> = d.iter().collect();
    let mut counts: Vec<usize> = classes
        .iter()
        .map(|&(_, p)| (p * n as f64).floor() as usize)
        .collect();
    let assigned: usize = counts.iter().sum();
    let mut by_remainder: Vec<usize> = (0..classes.len()).collect();
    let remainder = |i: usize, counts: &[usize]| classes[i].1 * n as f64 - counts[i] as f64;
    by_remainder.sort_by(|&a, &b| {
        remainder(b, &counts)
            .total_cmp(&remainder(a, &counts))
            .then(a.cmp(&b))
    });
    for &i in by_remainder.iter().cycle().take(n.saturating_sub(assigned)) {
        counts[i] += 1;
    }

    let stubs: usize = classes.iter().zip(&counts).map(|(&(k, _), &c)| k * c).sum();
    if stubs % 2 == 1 {
        let bump = (0..classes.len())
            .filter(|&i| counts[i] > 0)
            .max_by(|&a, &b| {
                remainder(a, &counts)
                    .total_cmp(&remainder(b, &counts))
                    .then(b.cmp(&a))
            })
            .expect("some class is populated");
        let mut seq = expand(&classes, &counts);
        let pos = seq.iter().position(|&k| k == classes[bump].0).unwrap();
        seq[pos] += 1;
        seq.sort_unstable();
        return Ok(seq);
    }
    Ok(expand(&classes, &counts))
}

fn expand(classes: &[(usize, f64)], counts: &[usize]) -> Vec<usize> {
    classes
        .iter()
        .zip(counts)
        .flat_map(|(&(k, _), &c)| std::iter::repeat_n(k, c))
        .collect()
}

/// Uniform random matching of stubs: shuffle the stub array and pair
/// consecutive entries. The result may have self-loops and parallel edges.
pub fn configuration_model<R: Rng + ?Sized>(seq: &[usize], rng: &mut R) -> Result<Graph> {
    let total: usize = seq.iter().sum();
    if total % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "degree sequence has odd stub total {total}"
        )));
    }
    let mut stubs: Vec<NodeId> = seq
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_n(v, k))
        .collect();
    stubs.shuffle(rng);
    let edges = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    Graph::from_edges(seq.len(), edges)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RewireOptions {
    pub tolerance: f64,
    /// `None` means 100 proposals per edge.
    pub max_steps: Option<usize>,
}

impl Default for RewireOptions {
    fn default() -> Self {
        Self {
            tolerance: 0.01,
            max_steps: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RewireOutcome {
    pub graph: Graph,
    pub initial_r: f64,
    pub achieved_r: f64,
    pub proposals: usize,
    pub accepted: usize,
}

/// Pairwise edge rewiring toward `target_r`, keeping every node degree.
///
/// Draws edges `{v1, w1}`, `{v2, w2}` and replaces them by `{v1, w2}`,
/// `{v2, w1}` only when that strictly reduces `|r - target_r|`. Swaps that
/// would create a self-loop or duplicate an existing edge are rejected.
pub fn rewire_to_assortativity<R: Rng + ?Sized>(
    g: &Graph,
    target_r: f64,
    rng: &mut R,
    options: RewireOptions,
) -> Result<RewireOutcome> {
    if g.edge_count() < 2 {
        return Err(Error::InvalidArgument(
            "rewiring needs at least two edges".into(),
        ));
    }
    if !(target_r > -1.0 && target_r < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "target assortativity {target_r} outside (-1, 1)"
        )));
    }
    let sums = EdgeDegreeSums::new(g);
    let initial_r = sums.coefficient()?;
    let degree: Vec<f64> = g.degrees().into_iter().map(|k| k as f64).collect();
    let mut edges = g.edges().to_vec();
    let mut multiplicity: HashMap<(NodeId, NodeId), u32> = HashMap::new();
    for &(u, v) in &edges {
        *multiplicity.entry(key(u, v)).or_default() += 1;
    }

    let max_steps = options.max_steps.unwrap_or(100 * edges.len());
    let mut sum_prod = sums.sum_prod;
    let mut r = initial_r;
    let mut proposals = 0;
    let mut accepted = 0;
    let m = edges.len();

    while (r - target_r).abs() > options.tolerance && proposals < max_steps {
        proposals += 1;
        let i = rng.random_range(0..m);
        let mut j = rng.random_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let (v1, w1) = edges[i];
        let (mut v2, mut w2) = edges[j];
        if rng.random_bool(0.5) {
            std::mem::swap(&mut v2, &mut w2);
        }
        let (a, b) = ((v1, w2), (v2, w1));
        if a.0 == a.1 || b.0 == b.1 || key(a.0, a.1) == key(b.0, b.1) {
            continue;
        }
        if multiplicity.contains_key(&key(a.0, a.1)) || multiplicity.contains_key(&key(b.0, b.1)) {
            continue;
        }
        let delta = degree[v1] * degree[w2] + degree[v2] * degree[w1]
            - degree[v1] * degree[w1]
            - degree[v2] * degree[w2];
        let candidate = sums.coefficient_with(sum_prod + delta)?;
        if (candidate - target_r).abs() >= (r - target_r).abs() {
            continue;
        }
        for old in [edges[i], edges[j]] {
            let k = key(old.0, old.1);
            let c = multiplicity.get_mut(&k).expect("edge is tracked");
            *c -= 1;
            if *c == 0 {
                multiplicity.remove(&k);
            }
        }
        *multiplicity.entry(key(a.0, a.1)).or_default() += 1;
        *multiplicity.entry(key(b.0, b.1)).or_default() += 1;
        edges[i] = a;
        edges[j] = b;
        sum_prod += delta;
        r = candidate;
        accepted += 1;
    }

    let mut graph = Graph::from_edges(g.node_count(), edges)?;
    if let Some(labels) = g.labels() {
        graph = graph.with_labels(labels.to_vec())?;
    }
    // Recompute from scratch so the reported value carries no drift.
    let achieved_r = graph.assortativity()?;
    Ok(RewireOutcome {
        graph,
        initial_r,
        achieved_r,
        proposals,
        accepted,
    })
}

fn key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    (u.min(v), u.max(v))
}
