use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::distribution::DegreeDistribution;
use crate::error::{Error, Result};
use crate::sampling::{SamplerParams, Technique};

/// Degree model of a generated graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum DegreeModel {
    /// Truncated power law `p_k ∝ k^(-exponent)` on `[k_min, k_max]`.
    PowerLaw {
        exponent: f64,
        #[serde(default = "default_k_min")]
        k_min: usize,
        #[serde(default = "default_k_max")]
        k_max: usize,
    },
    Regular {
        degree: usize,
    },
    Explicit {
        pk: DegreeDistribution,
    },
}

fn default_k_min() -> usize {
    2
}

fn default_k_max() -> usize {
    100
}

impl Default for DegreeModel {
    fn default() -> Self {
        DegreeModel::PowerLaw {
            exponent: 2.5,
            k_min: default_k_min(),
            k_max: default_k_max(),
        }
    }
}

impl DegreeModel {
    pub fn distribution(&self) -> Result<DegreeDistribution> {
        match self {
            DegreeModel::PowerLaw {
                exponent,
                k_min,
                k_max,
            } => DegreeDistribution::power_law(*exponent, *k_min, *k_max),
            DegreeModel::Regular { degree } => DegreeDistribution::regular(*degree),
            DegreeModel::Explicit { pk } => Ok(pk.clone()),
        }
    }

    /// Parses `powerlaw:EXP[:KMIN[:KMAX]]`, `regular:K`, or explicit
    /// `k:p,k:p,...` (weights are normalized).
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let bad = |why: &str| Error::Config(format!("degree spec {spec:?}: {why}"));
        let parts: Vec<&str> = spec.split(':').collect();
        match parts[0] {
            "powerlaw" => {
                if !(2..=4).contains(&parts.len()) {
                    return Err(bad("expected powerlaw:EXP[:KMIN[:KMAX]]"));
                }
                let exponent = parts[1].parse().map_err(|_| bad("bad exponent"))?;
                let k_min = match parts.get(2) {
                    Some(s) => s.parse().map_err(|_| bad("bad k_min"))?,
                    None => default_k_min(),
                };
                let k_max = match parts.get(3) {
                    Some(s) => s.parse().map_err(|_| bad("bad k_max"))?,
                    None => default_k_max(),
                };
                Ok(DegreeModel::PowerLaw {
                    exponent,
                    k_min,
                    k_max,
                })
            }
            "regular" => {
                if parts.len() != 2 {
                    return Err(bad("expected regular:K"));
                }
                Ok(DegreeModel::Regular {
                    degree: parts[1].parse().map_err(|_| bad("bad degree"))?,
                })
            }
            _ => {
                let weights = spec
                    .split(',')
                    .map(|pair| {
                        let (k, p) = pair
                            .split_once(':')
                            .ok_or_else(|| bad("expected k:p pairs"))?;
                        let k: usize = k.trim().parse().map_err(|_| bad("bad degree"))?;
                        let p: f64 = p.trim().parse().map_err(|_| bad("bad fraction"))?;
                        Ok((k, p))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let pk = DegreeDistribution::from_weights(weights)
                    .map_err(|e| Error::Config(e.to_string()))?;
                Ok(DegreeModel::Explicit { pk })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSource {
    /// Configuration model regenerated for every replica.
    Generated {
        #[serde(default)]
        degrees: DegreeModel,
        nodes: usize,
        /// Rewire each generated graph toward this assortativity.
        #[serde(default)]
        assortativity: Option<f64>,
    },
    /// Edge list, preprocessed to its simple largest component.
    File { path: PathBuf },
}

impl GraphSource {
    pub fn describe(&self) -> String {
        match self {
            GraphSource::Generated {
                degrees,
                nodes,
                assortativity,
            } => {
                let model = match degrees {
                    DegreeModel::PowerLaw {
                        exponent,
                        k_min,
                        k_max,
                    } => {
                        format!("powerlaw:{exponent}:{k_min}:{k_max}")
                    }
                    DegreeModel::Regular { degree } => format!("regular:{degree}"),
                    DegreeModel::Explicit { pk } => format!("explicit:{}", pk.to_json()),
                };
                match assortativity {
                    Some(r) => format!("generated {model} n={nodes} r={r}"),
                    None => format!("generated {model} n={nodes}"),
                }
            }
            GraphSource::File { path } => format!("file {}", path.display()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechniqueConfig {
    pub technique: Technique,
    /// Forest Fire burn probability.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burn_probability: Option<f64>,
    /// Snowball names per node.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<usize>,
    /// Fixed walk length; by default a walk takes `round(f |V|)` steps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

impl TechniqueConfig {
    pub fn new(technique: Technique) -> Self {
        Self {
            technique,
            burn_probability: None,
            names: None,
            steps: None,
        }
    }

    pub fn params(&self) -> SamplerParams {
        let d = SamplerParams::default();
        SamplerParams {
            burn_probability: self.burn_probability.unwrap_or(d.burn_probability),
            names: self.names.unwrap_or(d.names),
        }
    }

    /// Tag used for rng derivation and output rows, e.g. `ff` or `ff(p=0.5)`.
    pub fn label(&self) -> String {
        let mut label = self.technique.tag().to_string();
        let mut extra = Vec::new();
        if let Some(p) = self.burn_probability {
            extra.push(format!("p={p}"));
        }
        if let Some(n) = self.names {
            extra.push(format!("n={n}"));
        }
        if let Some(s) = self.steps {
            extra.push(format!("steps={s}"));
        }
        if !extra.is_empty() {
            label.push_str(&format!("({})", extra.join(",")));
        }
        label
    }
}

fn default_techniques() -> Vec<TechniqueConfig> {
    [
        Technique::Bfs,
        Technique::Dfs,
        Technique::ForestFire,
        Technique::RandomWalk,
        Technique::Mhrw,
    ]
    .into_iter()
    .map(TechniqueConfig::new)
    .collect()
}

fn default_f_grid() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

fn default_replicas() -> usize {
    200
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_depth() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    #[serde(default = "default_techniques")]
    pub techniques: Vec<TechniqueConfig>,
    #[serde(default = "default_f_grid")]
    pub f_grid: Vec<f64>,
    #[serde(default = "default_replicas")]
    pub replicas: usize,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Worker threads; all cores when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    /// Targets for the assortativity sweep.
    #[serde(default)]
    pub assortativity_targets: Vec<f64>,
    /// Exploration depth for the RMSE comparison.
    #[serde(default = "default_depth")]
    pub depth: usize,
}

impl ExperimentConfig {
    /// Defaults around a given graph source.
    pub fn new(graph: GraphSource) -> Self {
        Self {
            graph,
            techniques: default_techniques(),
            f_grid: default_f_grid(),
            replicas: default_replicas(),
            rng_seed: 0,
            output_dir: default_output_dir(),
            workers: None,
            assortativity_targets: Vec::new(),
            depth: default_depth(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.replicas == 0 {
            return bad("replicas must be at least 1".into());
        }
        if self.f_grid.is_empty() {
            return bad("f_grid is empty".into());
        }
        if let Some(f) = self.f_grid.iter().find(|&&f| !(f > 0.0 && f <= 1.0)) {
            return bad(format!("f_grid value {f} outside (0, 1]"));
        }
        if self.techniques.is_empty() {
            return bad("no techniques".into());
        }
        for t in &self.techniques {
            if let Some(p) = t.burn_probability {
                if !(p > 0.0 && p <= 1.0) {
                    return bad(format!("burn probability {p} outside (0, 1]"));
                }
            }
            if t.names == Some(0) {
                return bad("snowball names must be at least 1".into());
            }
            if t.steps == Some(0) {
                return bad("walk steps must be at least 1".into());
            }
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1".into());
        }
        if self.depth == 0 {
            return bad("depth must be at least 1".into());
        }
        if let Some(r) = self.assortativity_targets.iter().find(|r| !(r.abs() < 1.0)) {
            return bad(format!("assortativity target {r} outside (-1, 1)"));
        }
        match &self.graph {
            GraphSource::Generated {
                degrees,
                nodes,
                assortativity,
            } => {
                if *nodes == 0 {
                    return bad("generated graph needs nodes > 0".into());
                }
                degrees
                    .distribution()
                    .map_err(|e| Error::Config(e.to_string()))?;
                if let Some(r) = assortativity {
                    if !(r.abs() < 1.0) {
                        return bad(format!("assortativity {r} outside (-1, 1)"));
                    }
                }
            }
            GraphSource::File { path } => {
                if path.as_os_str().is_empty() {
                    return bad("empty graph path".into());
                }
            }
        }
        Ok(())
    }
}
