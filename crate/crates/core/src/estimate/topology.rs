//! Estimators for population totals that make no assumption on topology.
//!
//! A seed `U` is drawn with probability `p(U)`, a ball of depth `i` around it
//! is explored, and a selection rule picks a subset `Q(U)` of the explored
//! nodes. With `π(v) = Σ_{w : v ∈ Q(w)} p(w)`, the weighted sum
//! `Σ_{v ∈ Q(U)} x(v) / π(v)` is unbiased for `Σ_v x(v)`.

use super::EstimationReport;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    /// Only the seed itself.
    Trivial,
    /// The whole ball for one designated node, the seed alone otherwise.
    Extreme(NodeId),
    /// The ball of half the exploration depth (rounded down).
    HalfRadius,
    /// Half-radius ball plus every node whose full-depth ball lies inside
    /// the seed's full-depth ball.
    HalfRadiusExtended,
}

impl SchemeKind {
    pub fn tag(self) -> &'static str {
        match self {
            SchemeKind::Trivial => "trivial",
            SchemeKind::Extreme(_) => "extreme",
            SchemeKind::HalfRadius => "half_radius",
            SchemeKind::HalfRadiusExtended => "half_radius_extended",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodScheme {
    pub kind: SchemeKind,
    /// Number of BFS stages explored around the seed.
    pub depth: usize,
    /// Seed probabilities per node; `None` means uniform.
    pub seed_probabilities: Option<Vec<f64>>,
}

impl NeighborhoodScheme {
    pub fn new(kind: SchemeKind, depth: usize) -> Self {
        Self {
            kind,
            depth,
            seed_probabilities: None,
        }
    }

    pub fn with_seed_probabilities(mut self, p: Vec<f64>) -> Self {
        self.seed_probabilities = Some(p);
        self
    }

    fn half(&self) -> usize {
        self.depth / 2
    }

    fn seed_probability(&self, n: usize, w: NodeId) -> f64 {
        match &self.seed_probabilities {
            Some(p) => p[w],
            None => 1.0 / n as f64,
        }
    }

    fn is_uniform(&self) -> bool {
        match &self.seed_probabilities {
            None => true,
            Some(p) => p.iter().all(|&x| (x - p[0]).abs() <= 1e-15 * p[0]),
        }
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        if self.depth == 0 {
            return Err(Error::InvalidArgument(
                "exploration depth must be at least 1".into(),
            ));
        }
        if let SchemeKind::Extreme(v) = self.kind {
            g.check_node(v)?;
        }
        if let Some(p) = &self.seed_probabilities {
            if p.len() != g.node_count() {
                return Err(Error::InvalidArgument(format!(
                    "{} seed probabilities for {} nodes",
                    p.len(),
                    g.node_count()
                )));
            }
            if p.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
                return Err(Error::InvalidArgument(
                    "seed probabilities must be positive".into(),
                ));
            }
            let total: f64 = p.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "seed probabilities sum to {total}"
                )));
            }
        }
        Ok(())
    }
}

/// Where the estimator may look.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AccessMode {
    /// Only what the depth-`i` exploration from the seed reveals.
    SampleOnly,
    /// Full topology; inclusion probabilities by enumeration over all seeds.
    Oracle,
}

/// Nodes selected from the exploration around `u`, with full graph access.
pub fn selection_set(g: &Graph, scheme: &NeighborhoodScheme, u: NodeId) -> Result<Vec<NodeId>> {
    scheme.validate(g)?;
    g.check_node(u)?;
    Ok(Selector::new(g, scheme).select(u))
}

struct Selector<'a> {
    g: &'a Graph,
    scheme: &'a NeighborhoodScheme,
    /// Full-depth balls, needed by the extended rule.
    balls: Option<Vec<Vec<NodeId>>>,
}

impl<'a> Selector<'a> {
    fn new(g: &'a Graph, scheme: &'a NeighborhoodScheme) -> Self {
        let balls = (scheme.kind == SchemeKind::HalfRadiusExtended).then(|| {
            (0..g.node_count())
                .map(|v| ball(g, v, scheme.depth))
                .collect()
        });
        Self { g, scheme, balls }
    }

    fn select(&self, u: NodeId) -> Vec<NodeId> {
        let i = self.scheme.depth;
        match self.scheme.kind {
            SchemeKind::Trivial => vec![u],
            SchemeKind::Extreme(star) if star == u => ball(self.g, u, i),
            SchemeKind::Extreme(_) => vec![u],
            SchemeKind::HalfRadius => ball(self.g, u, self.scheme.half()),
            SchemeKind::HalfRadiusExtended => {
                let balls = self.balls.as_ref().expect("built for extended scheme");
                let mut inside = vec![false; self.g.node_count()];
                balls[u].iter().for_each(|&v| inside[v] = true);
                let mut chosen = vec![false; self.g.node_count()];
                for v in ball(self.g, u, self.scheme.half()) {
                    chosen[v] = true;
                }
                for &v in &balls[u] {
                    if balls[v].iter().all(|&w| inside[w]) {
                        chosen[v] = true;
                    }
                }
                balls[u].iter().copied().filter(|&v| chosen[v]).collect()
            }
        }
    }
}

fn ball(g: &Graph, u: NodeId, r: usize) -> Vec<NodeId> {
    g.ball_with_depth(u, r)
        .into_iter()
        .map(|(v, _)| v)
        .collect()
}

/// Inclusion probability of every node, by enumerating all seeds.
pub fn oracle_inclusion(g: &Graph, scheme: &NeighborhoodScheme) -> Result<Vec<f64>> {
    scheme.validate(g)?;
    let n = g.node_count();
    let selector = Selector::new(g, scheme);
    let mut pi = vec![0.0; n];
    for w in 0..n {
        let pw = scheme.seed_probability(n, w);
        for v in selector.select(w) {
            pi[v] += pw;
        }
    }
    Ok(pi)
}

/// Oracle-mode estimator with inclusion probabilities computed once, for
/// evaluating many seeds on the same graph.
pub struct TopologyEstimator<'a> {
    selector: Selector<'a>,
    pi: Vec<f64>,
}

impl<'a> TopologyEstimator<'a> {
    pub fn new(g: &'a Graph, scheme: &'a NeighborhoodScheme) -> Result<Self> {
        Ok(Self {
            pi: oracle_inclusion(g, scheme)?,
            selector: Selector::new(g, scheme),
        })
    }

    pub fn inclusion(&self) -> &[f64] {
        &self.pi
    }

    /// Estimated total of `x` when the exploration starts at `seed`.
    pub fn estimate(&self, x: &[f64], seed: NodeId) -> Result<f64> {
        self.selector.g.check_node(seed)?;
        check_len(self.selector.g, x)?;
        Ok(self
            .selector
            .select(seed)
            .into_iter()
            .map(|v| x[v] / self.pi[v])
            .sum())
    }
}

fn check_len(g: &Graph, x: &[f64]) -> Result<()> {
    if x.len() != g.node_count() {
        return Err(Error::InvalidArgument(format!(
            "{} attribute values for {} nodes",
            x.len(),
            g.node_count()
        )));
    }
    Ok(())
}

/// What a depth-`i` exploration from one seed reveals: adjacency lists of
/// nodes at depth below `i`, and attribute values of explored nodes. Any
/// other access is reported as infeasible.
struct SampleView<'a> {
    g: &'a Graph,
    depth: Vec<usize>,
    radius: usize,
    x: &'a [f64],
}

impl<'a> SampleView<'a> {
    fn new(g: &'a Graph, seed: NodeId, radius: usize, x: &'a [f64]) -> Self {
        let mut depth = vec![usize::MAX; g.node_count()];
        for (v, d) in g.ball_with_depth(seed, radius) {
            depth[v] = d;
        }
        Self {
            g,
            depth,
            radius,
            x,
        }
    }

    fn contains(&self, v: NodeId) -> bool {
        self.depth[v] != usize::MAX
    }

    fn neighbors(&self, v: NodeId) -> Result<&'a [NodeId]> {
        if self.depth[v] < self.radius {
            Ok(self.g.neighbors(v))
        } else {
            Err(Error::Infeasible(format!(
                "adjacency of node {v} was not explored"
            )))
        }
    }

    fn x(&self, v: NodeId) -> Result<f64> {
        if self.contains(v) {
            Ok(self.x[v])
        } else {
            Err(Error::Infeasible(format!(
                "attribute of node {v} lies outside the sample"
            )))
        }
    }

    fn ball(&self, u: NodeId, r: usize) -> Result<Vec<NodeId>> {
        let mut seen = std::collections::HashSet::from([u]);
        let mut out = vec![u];
        let mut frontier = vec![u];
        for _ in 0..r {
            let mut next = Vec::new();
            for &v in &frontier {
                for &w in self.neighbors(v)? {
                    if seen.insert(w) {
                        out.push(w);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

fn sample_only_total(
    g: &Graph,
    x: &[f64],
    seed: NodeId,
    scheme: &NeighborhoodScheme,
) -> Result<f64> {
    let n = g.node_count();
    let view = SampleView::new(g, seed, scheme.depth, x);
    let p = |w| scheme.seed_probability(n, w);
    match scheme.kind {
        SchemeKind::Trivial => Ok(view.x(seed)? / p(seed)),
        SchemeKind::Extreme(star) if star == seed => {
            let mut total = 0.0;
            for v in view.ball(seed, scheme.depth)? {
                let pi = if v == star { p(star) } else { p(v) + p(star) };
                total += view.x(v)? / pi;
            }
            Ok(total)
        }
        SchemeKind::Extreme(star) => {
            // The seed lies in the designated ball iff the designated node
            // was explored from the seed.
            let extra = if view.contains(star) { p(star) } else { 0.0 };
            Ok(view.x(seed)? / (p(seed) + extra))
        }
        SchemeKind::HalfRadius => {
            if !scheme.is_uniform() {
                return Err(Error::Unsupported(
                    "half-radius inclusion probabilities need uniform seeds in sample-only mode"
                        .into(),
                ));
            }
            let h = scheme.half();
            let mut total = 0.0;
            for v in view.ball(seed, h)? {
                let pi = view.ball(v, h)?.len() as f64 / n as f64;
                total += view.x(v)? / pi;
            }
            Ok(total)
        }
        SchemeKind::HalfRadiusExtended => Err(Error::Unsupported(
            "the extended half-radius rule is only available with full topology".into(),
        )),
    }
}

/// Estimated population total of `x` from the exploration around `seed`.
pub fn arbitrary_topology_estimate(
    g: &Graph,
    x: &[f64],
    seed: NodeId,
    scheme: &NeighborhoodScheme,
    mode: AccessMode,
) -> Result<EstimationReport> {
    scheme.validate(g)?;
    g.check_node(seed)?;
    check_len(g, x)?;
    let value = match mode {
        AccessMode::SampleOnly => sample_only_total(g, x, seed, scheme)?,
        AccessMode::Oracle => TopologyEstimator::new(g, scheme)?.estimate(x, seed)?,
    };
    Ok(EstimationReport {
        method: scheme.kind.tag().into(),
        distribution: None,
        mean_degree: None,
        value,
        diagnostics: None,
    })
}
