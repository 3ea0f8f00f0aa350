//! Stub-level traversal on the configuration model with on-the-fly matching.
//!
//! Every stub carries an independent uniform index in `[0, 1]`. Whenever a
//! queued stub is followed, its partner is the unmatched stub with the
//! smallest index, so the random graph is realized only as far as the
//! traversal explores it.

use std::collections::VecDeque;

use rand::Rng;

use super::trace::{SampleTrace, Technique, TraceRecord};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Per-node stub indices, stored contiguously.
#[derive(Clone, Debug, PartialEq)]
pub struct StubAssignment {
    offsets: Vec<usize>,
    indices: Vec<f64>,
}

impl StubAssignment {
    /// Explicit assignment, one list of indices per node.
    pub fn from_indices(per_node: Vec<Vec<f64>>) -> Result<Self> {
        let mut offsets = vec![0];
        let mut indices = Vec::new();
        for stubs in per_node {
            for &t in &stubs {
                if !(0.0..=1.0).contains(&t) {
                    return Err(Error::InvalidArgument(format!(
                        "stub index {t} outside [0, 1]"
                    )));
                }
            }
            indices.extend(stubs);
            offsets.push(indices.len());
        }
        let a = Self { offsets, indices };
        if !a.all_distinct() {
            return Err(Error::InvalidArgument(
                "stub indices must be distinct".into(),
            ));
        }
        Ok(a)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn total_stubs(&self) -> usize {
        self.indices.len()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn stubs(&self, v: NodeId) -> &[f64] {
        &self.indices[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Smallest index among the stubs of `v`; `None` for isolated nodes.
    pub fn min_index(&self, v: NodeId) -> Option<f64> {
        self.stubs(v).iter().copied().reduce(f64::min)
    }

    fn all_distinct(&self) -> bool {
        let mut sorted = self.indices.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// Draws one uniform index per stub. Collisions (probability zero in exact
/// arithmetic) trigger a full redraw.
pub fn assign_stub_indices<R: Rng + ?Sized>(seq: &[usize], rng: &mut R) -> StubAssignment {
    let mut offsets = Vec::with_capacity(seq.len() + 1);
    offsets.push(0);
    for &k in seq {
        offsets.push(offsets.last().unwrap() + k);
    }
    let total = *offsets.last().unwrap();
    loop {
        let indices = (0..total).map(|_| rng.random::<f64>()).collect();
        let a = StubAssignment {
            offsets: offsets.clone(),
            indices,
        };
        if a.all_distinct() {
            return a;
        }
    }
}

/// Scheduling of followed stubs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QueueDiscipline {
    /// Breadth-first.
    Fifo,
    /// Depth-first.
    Lifo,
    /// Forest-Fire style: FIFO where each stub is enqueued only with
    /// probability `p`; lost stubs stay unmatched.
    RandomizedFifo(f64),
}

#[derive(Clone, Debug)]
pub struct StubTraversal {
    /// Multigraph of the edges matched so far, over all nodes.
    pub graph: Graph,
    pub trace: SampleTrace,
}

/// Stub-level traversal from `seed`, stopping after `budget` nodes or when
/// the queue empties.
pub fn stub_level_traversal<R: Rng + ?Sized>(
    assignment: &StubAssignment,
    seed: NodeId,
    discipline: QueueDiscipline,
    budget: usize,
    rng: &mut R,
) -> Result<StubTraversal> {
    let n = assignment.node_count();
    if seed >= n {
        return Err(Error::UnknownNode(seed));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let total = assignment.total_stubs();
    if total % 2 == 1 {
        return Err(Error::InvalidArgument(format!("odd stub total {total}")));
    }
    if let QueueDiscipline::RandomizedFifo(p) = discipline {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "stub keep probability {p} outside (0, 1]"
            )));
        }
    }

    let mut owner = vec![0; total];
    for v in 0..n {
        owner[assignment.offsets[v]..assignment.offsets[v + 1]].fill(v);
    }
    let mut by_index: Vec<usize> = (0..total).collect();
    by_index.sort_by(|&a, &b| assignment.indices[a].total_cmp(&assignment.indices[b]));
    let mut cursor = 0;

    let mut matched = vec![false; total];
    let mut sampled = vec![false; n];
    let mut order = vec![seed];
    sampled[seed] = true;
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();

    let enqueue = |queue: &mut VecDeque<usize>, v: NodeId, skip: Option<usize>, rng: &mut R| {
        for stub in assignment.offsets[v]..assignment.offsets[v + 1] {
            if Some(stub) == skip {
                continue;
            }
            if let QueueDiscipline::RandomizedFifo(p) = discipline {
                if !rng.random_bool(p) {
                    continue;
                }
            }
            queue.push_back(stub);
        }
    };
    enqueue(&mut queue, seed, None, rng);

    while order.len() < budget {
        let next = match discipline {
            QueueDiscipline::Lifo => queue.pop_back(),
            _ => queue.pop_front(),
        };
        let Some(a) = next else { break };
        // Stubs matched as partners were removed from the queue.
        if matched[a] {
            continue;
        }
        matched[a] = true;
        while cursor < total && matched[by_index[cursor]] {
            cursor += 1;
        }
        let Some(&b) = by_index.get(cursor) else {
            break;
        };
        matched[b] = true;
        edges.push((owner[a], owner[b]));
        let vb = owner[b];
        if !sampled[vb] {
            sampled[vb] = true;
            order.push(vb);
            enqueue(&mut queue, vb, Some(b), rng);
        }
    }

    let records = order
        .iter()
        .map(|&v| TraceRecord {
            node: v,
            degree: assignment.degree(v),
            x: None,
        })
        .collect();
    Ok(StubTraversal {
        graph: Graph::from_edges(n, edges)?,
        trace: SampleTrace::with_population(records, Technique::StubLevel, seed, n),
    })
}
