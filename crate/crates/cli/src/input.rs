//! Graph sources, node lists and small argument grammars.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use netrobust::attacks::Selector;
use netrobust::generators::{self, GeneratorParams};
use netrobust::io::{load_labeled_edge_list, LabeledGraph};
use netrobust::{Graph, NodeId};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn labeled(graph: Graph) -> LabeledGraph {
    let labels = (0..graph.id_bound() as i64).collect();
    LabeledGraph { graph, labels }
}

fn parse_params(family: &str, text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("generator `{family}`: expected key=value, got `{part}`")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

struct Params {
    family: String,
    map: BTreeMap<String, String>,
}

impl Params {
    fn get<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError> {
        match self.map.remove(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| usage(format!("generator `{}`: invalid value `{v}` for `{key}`", self.family))),
        }
    }

    fn need<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, CliError> {
        self.get(key)?.ok_or_else(|| usage(format!("generator `{}` needs `{key}=`", self.family)))
    }

    fn seed(&mut self, fallback: Option<u64>) -> Result<u64, CliError> {
        self.get("seed")?.or(fallback).ok_or_else(|| {
            usage(format!("generator `{}` is random: give `seed=` in the spec or --seed", self.family))
        })
    }

    fn finish(self) -> Result<(), CliError> {
        match self.map.keys().next() {
            Some(k) => Err(usage(format!("generator `{}`: unknown parameter `{k}`", self.family))),
            None => Ok(()),
        }
    }
}

fn generate(spec: &str, seed: Option<u64>) -> Result<LabeledGraph, CliError> {
    let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut p = Params { family: family.to_string(), map: parse_params(family, rest)? };
    let positive = |v: usize, what: &str| {
        if v == 0 {
            Err(usage(format!("generator `{family}`: `{what}` must be positive")))
        } else {
            Ok(v)
        }
    };
    let g = match family {
        "csf" => {
            let params = GeneratorParams::new(p.need("n")?, p.get("m")?.unwrap_or(2), p.get("p")?.unwrap_or(0.3), p.seed(seed)?);
            params.validate().map_err(|e| usage(e.to_string()))?;
            generators::generate_clustered_scale_free(params)?
        }
        "complete" => generators::complete(positive(p.need("n")?, "n")?),
        "path" => generators::path(positive(p.need("n")?, "n")?),
        "cycle" => {
            let n: usize = p.need("n")?;
            if n < 3 {
                return Err(usage("generator `cycle` needs n >= 3"));
            }
            generators::cycle(n)
        }
        "star" => generators::star(positive(p.need("leaves")?, "leaves")?),
        "barbell" => generators::barbell(positive(p.need("k")?, "k")?),
        "grid" => {
            let rows = positive(p.need("rows")?, "rows")?;
            let cols = positive(p.need("cols")?, "cols")?;
            match p.get::<usize>("shortcuts")? {
                Some(s) if s > 0 => {
                    let seed = p.seed(seed)?;
                    generators::grid_with_shortcuts(rows, cols, s, seed).map_err(|e| usage(e.to_string()))?
                }
                _ => generators::grid(rows, cols),
            }
        }
        "gnp" => {
            let n = positive(p.need("n")?, "n")?;
            let prob: f64 = p.need("p")?;
            if !(0.0..=1.0).contains(&prob) {
                return Err(usage("generator `gnp`: p must lie in [0, 1]"));
            }
            generators::gnp(n, prob, p.seed(seed)?)
        }
        other => return Err(usage(format!("unknown generator `{other}`"))),
    };
    p.finish()?;
    Ok(labeled(g))
}

/// Loads an edge-list file or runs a `gen:` generator spec.
pub fn load_graph(source: &str, seed: Option<u64>) -> Result<LabeledGraph, CliError> {
    if let Some(spec) = source.strip_prefix("gen:") {
        return generate(spec, seed);
    }
    let text = std::fs::read_to_string(source).map_err(|e| usage(format!("cannot read `{source}`: {e}")))?;
    load_labeled_edge_list(&text).map_err(|e| usage(format!("`{source}`: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphDigest {
    pub n: usize,
    pub m: usize,
    /// SHA-256 of the normalized labeled edge list.
    pub sha256: String,
}

pub fn digest(lg: &LabeledGraph) -> GraphDigest {
    let text = netrobust::io::serialize_labeled_edge_list(lg);
    GraphDigest {
        n: lg.graph.node_count(),
        m: lg.graph.edge_count(),
        sha256: hex::encode(Sha256::digest(text.as_bytes())),
    }
}

/// `strategy:count`, e.g. `rb:30`.
pub fn parse_attack_spec(spec: &str) -> Result<(Selector, usize), CliError> {
    let (s, c) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("attack spec `{spec}` should look like `id:4`")))?;
    let selector: Selector = s.parse().map_err(|e: netrobust::Error| usage(e.to_string()))?;
    let count = c.parse().map_err(|_| usage(format!("attack spec `{spec}`: `{c}` is not a count")))?;
    Ok((selector, count))
}

/// Node labels from a netshield JSON file (`{"nodes": [...]}`), a JSON array, or plain text.
pub fn read_node_file(path: &Path) -> Result<Vec<i64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read `{}`: {e}", path.display())))?;
    let bad = |what: &str| usage(format!("`{}`: {what}", path.display()));
    if let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) {
        let list = match &value {
            serde_json::Value::Array(a) => a,
            serde_json::Value::Object(o) => match o.get("nodes") {
                Some(serde_json::Value::Array(a)) => a,
                _ => return Err(bad("expected a `nodes` array")),
            },
            _ => return Err(bad("expected node labels")),
        };
        return list.iter().map(|v| v.as_i64().ok_or_else(|| bad("node labels must be integers"))).collect();
    }
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| bad(&format!("`{t}` is not a node label"))))
        .collect()
}

pub fn labels_to_ids(lg: &LabeledGraph, labels: &[i64]) -> Result<Vec<NodeId>, CliError> {
    let index: HashMap<i64, NodeId> = lg.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    labels
        .iter()
        .map(|l| index.get(l).copied().ok_or_else(|| usage(format!("node {l} is not in the graph"))))
        .collect()
}

/// Inclusive `start:stop:step` range or a comma-separated list.
pub fn parse_k_grid(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || usage(format!("invalid k grid `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let nums: Vec<usize> = parts.iter().map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        if nums[2] == 0 || nums[0] > nums[1] {
            return Err(bad());
        }
        return Ok((nums[0]..=nums[1]).step_by(nums[2]).collect());
    }
    let ks: Vec<usize> = text.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    if ks.is_empty() {
        return Err(bad());
    }
    Ok(ks)
}
