//! Undirected multigraph over dense node ids.
//!
//! Adjacency is stored in CSR form. A self-loop `{u, u}` appears twice in the
//! neighbor list of `u`, so it contributes 2 to the degree, and parallel edges
//! appear once per copy. This is the stub accounting of the configuration
//! model: `sum(degree) == 2 * edge_count` always holds.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::distribution::DegreeDistribution;
use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph on `node_count` nodes. Neighbor lists follow edge order.
    pub fn from_edges(node_count: usize, edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        let mut counts = vec![0usize; node_count + 1];
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= node_count {
                    return Err(Error::UnknownNode(w));
                }
            }
            counts[u + 1] += 1;
            counts[v + 1] += 1;
        }
        for i in 0..node_count {
            counts[i + 1] += counts[i];
        }
        let offsets = counts;
        let mut cursor = offsets.clone();
        let mut targets = vec![0; 2 * edges.len()];
        for &(u, v) in &edges {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        Ok(Self {
            offsets,
            targets,
            edges,
            labels: None,
        })
    }

    /// Attaches original node labels (one per node) for reporting.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != self.node_count() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.node_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|v| self.degree(v)).collect()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v < self.node_count()
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownNode(v))
        }
    }

    /// Original label of `v`, or `v` itself when the graph was built directly.
    pub fn label(&self, v: NodeId) -> u64 {
        match &self.labels {
            Some(labels) => labels[v],
            None => v as u64,
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn degree_distribution(&self) -> DegreeDistribution {
        let mut counts = BTreeMap::new();
        for v in 0..self.node_count() {
            *counts.entry(self.degree(v)).or_insert(0usize) += 1;
        }
        DegreeDistribution::from_counts(&counts).expect("non-empty graph has a valid distribution")
    }

    /// Pearson correlation of endpoint degrees over all edges, each edge
    /// counted in both orientations. Parallel edges count separately.
    pub fn assortativity(&self) -> Result<f64> {
        if self.edges.is_empty() {
            return Err(Error::InvalidArgument(
                "assortativity needs at least one edge".into(),
            ));
        }
        let stats = EdgeDegreeSums::new(self);
        stats.coefficient()
    }

    /// All nodes within `radius` hops of `u`, in BFS order.
    pub fn ball(&self, u: NodeId, radius: usize) -> Result<Vec<NodeId>> {
        self.check_node(u)?;
        Ok(self
            .ball_with_depth(u, radius)
            .into_iter()
            .map(|(v, _)| v)
            .collect())
    }

    /// Like [`Graph::ball`], pairing each node with its hop distance from `u`.
    pub fn ball_with_depth(&self, u: NodeId, radius: usize) -> Vec<(NodeId, usize)> {
        let mut seen = HashSet::from([u]);
        let mut out = vec![(u, 0)];
        let mut head = 0;
        while head < out.len() {
            let (v, d) = out[head];
            head += 1;
            if d == radius {
                continue;
            }
            for &w in self.neighbors(v) {
                if seen.insert(w) {
                    out.push((w, d + 1));
                }
            }
        }
        out
    }

    /// Connected components as a node -> component index map plus sizes.
    pub fn components(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            comp[s] = id;
            queue.push_back(s);
            let mut size = 0;
            while let Some(v) = queue.pop_front() {
                size += 1;
                for &w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            sizes.push(size);
        }
        (comp, sizes)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1.len() <= 1
    }

    /// Nodes of the component containing `v`.
    pub fn component_of(&self, v: NodeId) -> Result<Vec<NodeId>> {
        self.check_node(v)?;
        Ok(self.ball(v, usize::MAX)?)
    }

    /// Induced subgraph of the largest connected component (ties broken by
    /// the component holding the smallest node id). Node ids are renumbered
    /// in increasing order of the old ids; labels are carried along.
    pub fn largest_component(&self) -> Graph {
        let (comp, sizes) = self.components();
        let Some(best) = sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
        else {
            return self.clone();
        };
        if sizes.len() == 1 {
            return self.clone();
        }
        let keep: Vec<bool> = comp.iter().map(|&c| c == best).collect();
        self.induced(&keep)
    }

    /// Induced subgraph over nodes flagged in `keep`.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let mut remap = vec![usize::MAX; self.node_count()];
        let mut labels = Vec::new();
        for (v, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            remap[v] = labels.len();
            labels.push(self.label(v));
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (remap[u], remap[v]))
            .collect();
        let g = Graph::from_edges(labels.len(), edges).expect("remapped ids are in range");
        g.with_labels(labels).expect("one label per kept node")
    }
}

/// Sufficient statistics of the edge degree-degree correlation.
///
/// With `m` edges and both orientations counted, the marginal of either
/// endpoint is the same, so `r = (Sxy/m - (S1/2m)^2) / (S2/2m - (S1/2m)^2)`.
/// Degree-preserving rewiring only changes `Sxy`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EdgeDegreeSums {
    pub edges: f64,
    pub sum: f64,
    pub sum_sq: f64,
    pub sum_prod: f64,
}

impl EdgeDegreeSums {
    pub fn new(g: &Graph) -> Self {
        let mut s = Self {
            edges: g.edge_count() as f64,
            sum: 0.0,
            sum_sq: 0.0,
            sum_prod: 0.0,
        };
        for &(u, v) in g.edges() {
            let (a, b) = (g.degree(u) as f64, g.degree(v) as f64);
            s.sum += a + b;
            s.sum_sq += a * a + b * b;
            s.sum_prod += a * b;
        }
        s
    }

    pub fn coefficient(&self) -> Result<f64> {
        self.coefficient_with(self.sum_prod)
    }

    pub fn coefficient_with(&self, sum_prod: f64) -> Result<f64> {
        let mean = self.sum / (2.0 * self.edges);
        let var = self.sum_sq / (2.0 * self.edges) - mean * mean;
        if var <= 1e-12 * (mean * mean).max(1.0) {
            return Err(Error::UndefinedAssortativity);
        }
        let cov = sum_prod / self.edges - mean * mean;
        Ok((cov / var).clamp(-1.0, 1.0))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }
}
