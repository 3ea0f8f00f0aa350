use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technique {
    Bfs,
    Dfs,
    #[serde(rename = "ff")]
    ForestFire,
    #[serde(rename = "sbs")]
    Snowball,
    #[serde(rename = "rw")]
    RandomWalk,
    Mhrw,
    /// Degree-weighted node sampling without replacement.
    #[serde(rename = "wwr")]
    WeightedWithoutReplacement,
    #[serde(rename = "stub")]
    StubLevel,
}

impl Technique {
    pub const ALL: [Technique; 8] = [
        Technique::Bfs,
        Technique::Dfs,
        Technique::ForestFire,
        Technique::Snowball,
        Technique::RandomWalk,
        Technique::Mhrw,
        Technique::WeightedWithoutReplacement,
        Technique::StubLevel,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Technique::Bfs => "bfs",
            Technique::Dfs => "dfs",
            Technique::ForestFire => "ff",
            Technique::Snowball => "sbs",
            Technique::RandomWalk => "rw",
            Technique::Mhrw => "mhrw",
            Technique::WeightedWithoutReplacement => "wwr",
            Technique::StubLevel => "stub",
        }
    }

    /// Walks revisit nodes; everything else is a traversal.
    pub fn with_replacement(self) -> bool {
        matches!(self, Technique::RandomWalk | Technique::Mhrw)
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Technique {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Technique::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown technique {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRecord {
    pub node: NodeId,
    pub degree: usize,
    pub x: Option<f64>,
}

/// Ordered sample produced by one exploration run.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleTrace {
    pub records: Vec<TraceRecord>,
    pub with_replacement: bool,
    /// Fraction of the population covered by distinct sampled nodes.
    pub coverage: f64,
    pub seed: NodeId,
    pub technique: Technique,
    /// Number of nodes in the sampled graph, when known.
    pub population: Option<usize>,
    pub rng_seed: Option<u64>,
}

impl SampleTrace {
    /// Trace over nodes of `g`; coverage is computed from the graph size.
    pub fn from_nodes(g: &Graph, technique: Technique, seed: NodeId, nodes: Vec<NodeId>) -> Self {
        let records = nodes
            .into_iter()
            .map(|v| TraceRecord {
                node: v,
                degree: g.degree(v),
                x: None,
            })
            .collect();
        Self::with_population(records, technique, seed, g.node_count())
    }

    pub fn with_population(
        records: Vec<TraceRecord>,
        technique: Technique,
        seed: NodeId,
        population: usize,
    ) -> Self {
        let mut t = Self {
            records,
            with_replacement: technique.with_replacement(),
            coverage: 0.0,
            seed,
            technique,
            population: Some(population),
            rng_seed: None,
        };
        t.coverage = t.distinct_count() as f64 / population as f64;
        t
    }

    /// Trace with a caller-supplied coverage fraction (population unknown).
    pub fn with_coverage(
        records: Vec<TraceRecord>,
        technique: Technique,
        seed: NodeId,
        coverage: f64,
    ) -> Self {
        Self {
            records,
            with_replacement: technique.with_replacement(),
            coverage,
            seed,
            technique,
            population: None,
            rng_seed: None,
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn nodes(&self) -> Vec<NodeId> {
        self.records.iter().map(|r| r.node).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.degree).collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.records
            .iter()
            .map(|r| r.node)
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn mean_degree(&self) -> f64 {
        self.records.iter().map(|r| r.degree as f64).sum::<f64>() / self.len() as f64
    }

    /// Attribute values if every record carries one.
    pub fn x_values(&self) -> Option<Vec<f64>> {
        self.records.iter().map(|r| r.x).collect()
    }

    /// Attribute values, falling back to node degree.
    pub fn x_or_degree(&self) -> Vec<f64> {
        self.records
            .iter()
            .map(|r| r.x.unwrap_or(r.degree as f64))
            .collect()
    }

    /// Fills `x` from a per-node attribute table.
    pub fn attach_attribute(&mut self, per_node: &[f64]) {
        for r in &mut self.records {
            r.x = Some(per_node[r.node]);
        }
    }

    /// First `len` records, with coverage recomputed when the population is known.
    pub fn prefix(&self, len: usize) -> SampleTrace {
        let mut t = self.clone();
        t.records.truncate(len);
        if let Some(n) = t.population {
            t.coverage = t.distinct_count() as f64 / n as f64;
        }
        t
    }

    pub const CSV_HEADER: &'static str = "position,node,degree,x_value";

    /// `#`-prefixed metadata lines followed by one row per record.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# technique={}", self.technique)?;
        writeln!(out, "# seed={}", self.seed)?;
        writeln!(out, "# f={}", self.coverage)?;
        writeln!(out, "# with_replacement={}", self.with_replacement)?;
        if let Some(n) = self.population {
            writeln!(out, "# population={n}")?;
        }
        match self.rng_seed {
            Some(s) => writeln!(out, "# rng_seed={s}")?,
            None => writeln!(out, "# rng_seed=none")?,
        }
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for (i, r) in self.records.iter().enumerate() {
            let x = r.x.map(|x| x.to_string()).unwrap_or_default();
            writeln!(out, "{},{},{},{}", i, r.node, r.degree, x)?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut technique = None;
        let mut seed = None;
        let mut coverage = None;
        let mut with_replacement = None;
        let mut population = None;
        let mut rng_seed = None;
        let mut records = Vec::new();
        let mut header_seen = false;

        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let line_no = i + 1;
            let text = line.trim();
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            if text.is_empty() {
                continue;
            }
            if let Some(meta) = text.strip_prefix('#') {
                let Some((key, value)) = meta.trim().split_once('=') else {
                    continue;
                };
                let value = value.trim();
                let bad = |_| parse_err(format!("bad value for {key}: {value:?}"));
                match key.trim() {
                    "technique" => technique = Some(value.parse::<Technique>()?),
                    "seed" => seed = Some(value.parse::<usize>().map_err(|e| bad(e.to_string()))?),
                    "f" => coverage = Some(value.parse::<f64>().map_err(|e| bad(e.to_string()))?),
                    "with_replacement" => {
                        with_replacement =
                            Some(value.parse::<bool>().map_err(|e| bad(e.to_string()))?)
                    }
                    "population" => {
                        population = Some(value.parse::<usize>().map_err(|e| bad(e.to_string()))?)
                    }
                    "rng_seed" if value != "none" => {
                        rng_seed = Some(value.parse::<u64>().map_err(|e| bad(e.to_string()))?)
                    }
                    _ => {}
                }
                continue;
            }
            if !header_seen {
                if text != Self::CSV_HEADER {
                    return Err(parse_err(format!("expected header {:?}", Self::CSV_HEADER)));
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = text.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(parse_err(format!(
                    "expected 4 fields, got {}",
                    fields.len()
                )));
            }
            let node = fields[1]
                .parse()
                .map_err(|_| parse_err(format!("invalid node {:?}", fields[1])))?;
            let degree = fields[2]
                .parse()
                .map_err(|_| parse_err(format!("invalid degree {:?}", fields[2])))?;
            let x = if fields[3].is_empty() {
                None
            } else {
                Some(
                    fields[3]
                        .parse()
                        .map_err(|_| parse_err(format!("invalid x_value {:?}", fields[3])))?,
                )
            };
            records.push(TraceRecord { node, degree, x });
        }

        let technique = technique.unwrap_or(Technique::Bfs);
        Ok(Self {
            seed: seed
                .or_else(|| records.first().map(|r| r.node))
                .unwrap_or(0),
            with_replacement: with_replacement.unwrap_or(technique.with_replacement()),
            coverage: coverage.unwrap_or(f64::NAN),
            records,
            technique,
            population,
            rng_seed,
        })
    }
}
