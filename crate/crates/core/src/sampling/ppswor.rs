//! Successive sampling proportional to degree, without replacement.

use rand::Rng;

use crate::graph::NodeId;

/// Fenwick tree over integer weights with weighted descent.
struct WeightTree {
    tree: Vec<u64>,
    total: u64,
}

impl WeightTree {
    fn new(weights: &[u64]) -> Self {
        let n = weights.len();
        let mut tree = vec![0; n + 1];
        for (i, &w) in weights.iter().enumerate() {
            tree[i + 1] += w;
            let parent = (i + 1) + ((i + 1) & (i + 1).wrapping_neg());
            if parent <= n {
                tree[parent] += tree[i + 1];
            }
        }
        Self {
            tree,
            total: weights.iter().sum(),
        }
    }

    fn remove(&mut self, index: usize, weight: u64) {
        self.total -= weight;
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] -= weight;
            i += i & i.wrapping_neg();
        }
    }

    /// Smallest index whose prefix sum exceeds `target`.
    fn find(&self, mut target: u64) -> usize {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

/// Draws up to `budget` distinct nodes; each draw picks among the remaining
/// nodes with probability proportional to degree. Stops early once only
/// zero-degree nodes remain.
pub fn weighted_without_replacement<R: Rng + ?Sized>(
    degrees: &[usize],
    budget: usize,
    rng: &mut R,
) -> Vec<NodeId> {
    let weights: Vec<u64> = degrees.iter().map(|&k| k as u64).collect();
    let mut tree = WeightTree::new(&weights);
    let mut out = Vec::with_capacity(budget.min(degrees.len()));
    while out.len() < budget && tree.total > 0 {
        let v = tree.find(rng.random_range(0..tree.total));
        tree.remove(v, weights[v]);
        out.push(v);
    }
    out
}
