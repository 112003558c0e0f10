use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::RevenueObjective;
use crate::rng::derive_seed;

use super::{gen_alphas, gen_er, load_edge_list, read_instance, InstanceDump, WeightDist, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Source {
    Er {
        n: usize,
        p: f64,
        #[serde(default = "default_er_weights")]
        weights: WeightDist,
    },
    EdgeList {
        path: PathBuf,
        #[serde(default = "default_file_weights")]
        weights: WeightDist,
    },
    /// A previously dumped instance file; graph, weights and exponents are taken verbatim.
    Instance { path: PathBuf },
}

fn default_er_weights() -> WeightDist {
    WeightDist::Uniform { low: 0.0, high: 1.0 }
}

fn default_file_weights() -> WeightDist {
    WeightDist::Unit
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaDist {
    pub low: f64,
    pub high: f64,
}

impl Default for AlphaDist {
    fn default() -> Self {
        AlphaDist { low: 0.3, high: 0.9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub source: Source,
    pub k: usize,
    #[serde(default)]
    pub alpha: AlphaDist,
    #[serde(default)]
    pub seed: u64,
}

impl DatasetSpec {
    pub fn er(n: usize, p: f64, k: usize, seed: u64) -> Self {
        DatasetSpec {
            source: Source::Er {
                n,
                p,
                weights: default_er_weights(),
            },
            k,
            alpha: AlphaDist::default(),
            seed,
        }
    }

    /// Checks field ranges, naming the offending field path.
    pub fn validate(&self, prefix: &str) -> Result<()> {
        if self.k < 2 {
            return Err(Error::config(format!("{prefix}.k"), "must be >= 2"));
        }
        let AlphaDist { low, high } = self.alpha;
        if !(low > 0.0 && low < high && high < 1.0) {
            return Err(Error::config(format!("{prefix}.alpha"), "need 0 < low < high < 1"));
        }
        match &self.source {
            Source::Er { n, p, weights } => {
                if *n < 1 {
                    return Err(Error::config(format!("{prefix}.source.n"), "must be >= 1"));
                }
                if !(*p > 0.0 && *p <= 1.0) {
                    return Err(Error::config(format!("{prefix}.source.p"), "must be in (0, 1]"));
                }
                weights
                    .validate()
                    .map_err(|e| Error::config(format!("{prefix}.source.weights"), e.to_string()))
            }
            Source::EdgeList { weights, .. } => weights
                .validate()
                .map_err(|e| Error::config(format!("{prefix}.source.weights"), e.to_string())),
            Source::Instance { .. } => Ok(()),
        }
    }
}

/// A constructed revenue instance plus everything needed to describe or dump it.
#[derive(Debug, Clone)]
pub struct Dataset {
    /// Self-describing label, e.g. `er(n=100;p=0.05;w=uniform[0,1];alpha=[0.3,0.9];seed=7)`.
    pub label: String,
    pub objective: RevenueObjective,
    pub weights: WeightDist,
    pub alpha: AlphaDist,
    pub seed: u64,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.objective.graph().n()
    }

    pub fn to_dump(&self) -> InstanceDump {
        InstanceDump {
            source: self.label.clone(),
            seed: self.seed,
            weights: self.weights,
            alpha_dist: self.alpha,
            graph: self.objective.graph().clone(),
            alpha: self.objective.alpha().clone(),
        }
    }
}

pub fn build_dataset(spec: &DatasetSpec) -> Result<Dataset> {
    spec.validate("dataset")?;
    let graph_seed = derive_seed(spec.seed, "graph");
    let alpha_seed = derive_seed(spec.seed, "alpha");
    let AlphaDist { low, high } = spec.alpha;
    let (label, graph, weights): (String, WeightedGraph, WeightDist) = match &spec.source {
        Source::Er { n, p, weights } => (
            format!("er(n={n};p={p};w={weights};alpha=[{low},{high}];seed={})", spec.seed),
            gen_er(*n, *p, *weights, graph_seed)?,
            *weights,
        ),
        Source::EdgeList { path, weights } => {
            let name = path.file_name().map_or_else(
                || path.display().to_string(),
                |f| f.to_string_lossy().into_owned(),
            );
            (
                format!("edgelist({name};w={weights};alpha=[{low},{high}];seed={})", spec.seed),
                load_edge_list(path, *weights, graph_seed)?,
                *weights,
            )
        }
        Source::Instance { path } => {
            let file = File::open(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            let dump = read_instance(BufReader::new(file), path)?;
            if dump.alpha.k() != spec.k {
                return Err(Error::config(
                    "dataset.k",
                    format!("instance file has k = {}, config says {}", dump.alpha.k(), spec.k),
                ));
            }
            return Ok(Dataset {
                label: dump.source.clone(),
                objective: RevenueObjective::new(Arc::new(dump.graph), dump.alpha)?,
                weights: dump.weights,
                alpha: dump.alpha_dist,
                seed: dump.seed,
            });
        }
    };
    let alpha = gen_alphas(graph.n(), spec.k, low, high, alpha_seed)?;
    Ok(Dataset {
        label,
        objective: RevenueObjective::new(Arc::new(graph), alpha)?,
        weights,
        alpha: spec.alpha,
        seed: spec.seed,
    })
}
