//! Exploration techniques producing ordered node samples.

mod ppswor;
mod stub;
mod trace;
mod traversal;
mod walk;

pub use ppswor::weighted_without_replacement;
pub use stub::{
    assign_stub_indices, stub_level_traversal, QueueDiscipline, StubAssignment, StubTraversal,
};
pub use trace::{SampleTrace, Technique, TraceRecord};
pub use traversal::{bfs, dfs, forest_fire, snowball};
pub use walk::{mhrw, mhrw_transition, random_walk};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Tunable knobs for [`sample`]; unused fields are ignored by techniques
/// that do not need them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplerParams {
    /// Forest Fire burn probability, also the stub keep probability.
    pub burn_probability: f64,
    /// Snowball names per node.
    pub names: usize,
}

impl Default for SamplerParams {
    fn default() -> Self {
        Self {
            burn_probability: 0.7,
            names: 2,
        }
    }
}

/// Runs one technique on `g` from `seed`. `budget` counts distinct nodes for
/// traversals and steps for walks. The stub-level technique treats the
/// degree sequence of `g` as stubs and re-matches them.
pub fn sample<R: Rng + ?Sized>(
    g: &Graph,
    technique: Technique,
    seed: NodeId,
    budget: usize,
    params: SamplerParams,
    rng: &mut R,
) -> Result<SampleTrace> {
    match technique {
        Technique::Bfs => bfs(g, seed, budget),
        Technique::Dfs => dfs(g, seed, budget),
        Technique::ForestFire => forest_fire(g, seed, budget, params.burn_probability, rng),
        Technique::Snowball => snowball(g, seed, budget, params.names, rng),
        Technique::RandomWalk => random_walk(g, seed, budget, rng),
        Technique::Mhrw => mhrw(g, seed, budget, rng),
        Technique::WeightedWithoutReplacement => {
            if budget == 0 {
                return Err(Error::InvalidArgument("budget must be at least 1".into()));
            }
            let nodes = weighted_without_replacement(&g.degrees(), budget, rng);
            let first = nodes.first().copied().unwrap_or(seed);
            Ok(SampleTrace::from_nodes(g, technique, first, nodes))
        }
        Technique::StubLevel => {
            g.check_node(seed)?;
            let assignment = assign_stub_indices(&g.degrees(), rng);
            Ok(stub_level_traversal(&assignment, seed, QueueDiscipline::Fifo, budget, rng)?.trace)
        }
    }
}
