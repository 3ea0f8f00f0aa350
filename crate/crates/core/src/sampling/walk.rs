//! Random walks (with replacement). Parallel edges and self-loops are
//! separate neighbor slots, so they weight the transition accordingly.

use rand::Rng;

use super::trace::{SampleTrace, Technique};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

fn check(g: &Graph, seed: NodeId, steps: usize) -> Result<()> {
    g.check_node(seed)?;
    if steps == 0 {
        return Err(Error::InvalidArgument(
            "walk needs at least one step".into(),
        ));
    }
    Ok(())
}

/// Simple random walk of `steps` records starting with `seed`. An isolated
/// node repeats itself.
pub fn random_walk<R: Rng + ?Sized>(
    g: &Graph,
    seed: NodeId,
    steps: usize,
    rng: &mut R,
) -> Result<SampleTrace> {
    check(g, seed, steps)?;
    let mut nodes = Vec::with_capacity(steps);
    let mut u = seed;
    nodes.push(u);
    for _ in 1..steps {
        let nbrs = g.neighbors(u);
        if !nbrs.is_empty() {
            u = nbrs[rng.random_range(0..nbrs.len())];
        }
        nodes.push(u);
    }
    Ok(SampleTrace::from_nodes(
        g,
        Technique::RandomWalk,
        seed,
        nodes,
    ))
}

/// Metropolis-Hastings random walk targeting the uniform distribution:
/// a proposed neighbor `w` is accepted with probability `min(1, k_u / k_w)`,
/// otherwise the walk records `u` again.
pub fn mhrw<R: Rng + ?Sized>(
    g: &Graph,
    seed: NodeId,
    steps: usize,
    rng: &mut R,
) -> Result<SampleTrace> {
    check(g, seed, steps)?;
    let mut nodes = Vec::with_capacity(steps);
    let mut u = seed;
    nodes.push(u);
    for _ in 1..steps {
        let nbrs = g.neighbors(u);
        if !nbrs.is_empty() {
            let w = nbrs[rng.random_range(0..nbrs.len())];
            let (ku, kw) = (nbrs.len() as f64, g.degree(w) as f64);
            if kw <= ku || rng.random::<f64>() * kw < ku {
                u = w;
            }
        }
        nodes.push(u);
    }
    Ok(SampleTrace::from_nodes(g, Technique::Mhrw, seed, nodes))
}

/// Probability of one MHRW step from `u` to its neighbor `w` (summed over
/// parallel slots).
pub fn mhrw_transition(g: &Graph, u: NodeId, w: NodeId) -> f64 {
    let ku = g.degree(u) as f64;
    let kw = g.degree(w) as f64;
    let slots = g.neighbors(u).iter().filter(|&&x| x == w).count() as f64;
    slots / ku * (ku / kw).min(1.0)
}
