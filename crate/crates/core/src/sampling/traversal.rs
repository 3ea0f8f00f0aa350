//! Graph traversals: every node is sampled at most once.
//!
//! Traces record nodes in discovery order. Neighbors are examined in
//! adjacency storage order; a node reached through several parallel edges is
//! discovered once.

use std::collections::VecDeque;

use rand::seq::index;
use rand::Rng;

use super::trace::{SampleTrace, Technique};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

fn check(g: &Graph, seed: NodeId, budget: usize) -> Result<()> {
    g.check_node(seed)?;
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    Ok(())
}

/// Breadth-first search: the earliest discovered, not yet expanded node is
/// expanded next.
pub fn bfs(g: &Graph, seed: NodeId, budget: usize) -> Result<SampleTrace> {
    check(g, seed, budget)?;
    let mut visited = vec![false; g.node_count()];
    let mut order = vec![seed];
    visited[seed] = true;
    let mut head = 0;
    'outer: while head < order.len() && order.len() < budget {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if !visited[w] {
                visited[w] = true;
                order.push(w);
                if order.len() == budget {
                    break 'outer;
                }
            }
        }
    }
    Ok(SampleTrace::from_nodes(g, Technique::Bfs, seed, order))
}

/// Depth-first search: the most recently discovered unvisited node is
/// visited next.
pub fn dfs(g: &Graph, seed: NodeId, budget: usize) -> Result<SampleTrace> {
    check(g, seed, budget)?;
    let mut visited = vec![false; g.node_count()];
    let mut order = Vec::new();
    let mut stack = vec![seed];
    while let Some(u) = stack.pop() {
        if visited[u] {
            continue;
        }
        visited[u] = true;
        order.push(u);
        if order.len() == budget {
            break;
        }
        stack.extend(g.neighbors(u).iter().rev().filter(|&&w| !visited[w]));
    }
    Ok(SampleTrace::from_nodes(g, Technique::Dfs, seed, order))
}

/// Shared frontier machinery for the randomized BFS variants.
struct Frontier {
    visited: Vec<bool>,
    order: Vec<NodeId>,
    queue: VecDeque<NodeId>,
    budget: usize,
}

impl Frontier {
    fn new(g: &Graph, seed: NodeId, budget: usize) -> Self {
        let mut visited = vec![false; g.node_count()];
        visited[seed] = true;
        Self {
            visited,
            order: vec![seed],
            queue: VecDeque::from([seed]),
            budget,
        }
    }

    fn full(&self) -> bool {
        self.order.len() >= self.budget
    }

    fn discover(&mut self, w: NodeId) {
        if !self.visited[w] && !self.full() {
            self.visited[w] = true;
            self.order.push(w);
            self.queue.push_back(w);
        }
    }

    /// Uniform choice among sampled nodes that still have an unvisited
    /// neighbor; `None` once the component is exhausted.
    fn revival<R: Rng + ?Sized>(&self, g: &Graph, rng: &mut R) -> Option<NodeId> {
        let open = |v: NodeId| g.neighbors(v).iter().any(|&w| !self.visited[w]);
        // Rejection sampling is exact and cheap while open nodes are common.
        for _ in 0..64 {
            let v = self.order[rng.random_range(0..self.order.len())];
            if open(v) {
                return Some(v);
            }
        }
        let candidates: Vec<NodeId> = self.order.iter().copied().filter(|&v| open(v)).collect();
        if candidates.is_empty() {
            None
        } else {
            Some(candidates[rng.random_range(0..candidates.len())])
        }
    }

    fn run<R, F>(mut self, g: &Graph, rng: &mut R, mut expand: F) -> Vec<NodeId>
    where
        R: Rng + ?Sized,
        F: FnMut(&mut Self, NodeId, &mut R),
    {
        loop {
            while let Some(u) = self.queue.pop_front() {
                if self.full() {
                    return self.order;
                }
                expand(&mut self, u, rng);
            }
            if self.full() {
                return self.order;
            }
            match self.revival(g, rng) {
                Some(v) => self.queue.push_back(v),
                None => return self.order,
            }
        }
    }
}

/// Forest Fire: each incident edge of the expanded node is followed with
/// probability `p`. When the fire dies out it is revived from a random
/// sampled node that still has unvisited neighbors. With `p = 1` this is BFS.
pub fn forest_fire<R: Rng + ?Sized>(
    g: &Graph,
    seed: NodeId,
    budget: usize,
    p: f64,
    rng: &mut R,
) -> Result<SampleTrace> {
    check(g, seed, budget)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "burn probability {p} outside (0, 1]"
        )));
    }
    let order = Frontier::new(g, seed, budget).run(g, rng, |fr, u, rng| {
        for &w in g.neighbors(u) {
            if !fr.visited[w] && rng.random_bool(p) {
                fr.discover(w);
            }
        }
    });
    Ok(SampleTrace::from_nodes(
        g,
        Technique::ForestFire,
        seed,
        order,
    ))
}

/// n-name snowball sampling: from each expanded node, `min(names, k_v)`
/// uniformly chosen neighbor slots are scheduled (in adjacency order).
pub fn snowball<R: Rng + ?Sized>(
    g: &Graph,
    seed: NodeId,
    budget: usize,
    names: usize,
    rng: &mut R,
) -> Result<SampleTrace> {
    check(g, seed, budget)?;
    if names == 0 {
        return Err(Error::InvalidArgument(
            "snowball needs at least one name".into(),
        ));
    }
    let order = Frontier::new(g, seed, budget).run(g, rng, |fr, u, rng| {
        let neighbors = g.neighbors(u);
        let k = neighbors.len();
        if names >= k {
            neighbors.iter().for_each(|&w| fr.discover(w));
        } else {
            let mut slots = index::sample(rng, k, names).into_vec();
            slots.sort_unstable();
            slots.into_iter().for_each(|i| fr.discover(neighbors[i]));
        }
    });
    Ok(SampleTrace::from_nodes(g, Technique::Snowball, seed, order))
}
