//! Plain-text edge lists.
//!
//! One edge per line as two whitespace-separated integers (spaces or tabs).
//! Lines starting with `#` and blank lines are ignored. Labels are compacted
//! to dense ids in order of first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Raw integer pairs as they appear in the input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeList {
    pub edges: Vec<(i64, i64)>,
}

impl EdgeList {
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let mut next = |what: &str| -> Result<i64> {
                let tok = tokens.next().ok_or_else(|| Error::Parse {
                    line: idx + 1,
                    message: format!("missing {what} endpoint"),
                })?;
                tok.parse::<i64>().map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("`{tok}` is not an integer node id"),
                })
            };
            let u = next("first")?;
            let v = next("second")?;
            edges.push((u, v));
        }
        Ok(EdgeList { edges })
    }

    /// Normalized pairs: `u < v`, no self-loops, sorted, deduplicated.
    pub fn normalized(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// A graph together with the external label of every dense node id.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<i64>,
}

pub fn load_edge_list(text: &str) -> Result<Graph> {
    load_labeled_edge_list(text).map(|lg| lg.graph)
}

pub fn load_labeled_edge_list(text: &str) -> Result<LabeledGraph> {
    let list = EdgeList::parse(text)?;
    if list.edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut index: HashMap<i64, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut id_of = |label: i64| {
        *index.entry(label).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        })
    };
    let pairs: Vec<(NodeId, NodeId)> = list.edges.iter().map(|&(u, v)| (id_of(u), id_of(v))).collect();
    let graph = Graph::from_edges(labels.len(), pairs)?;
    Ok(LabeledGraph { graph, labels })
}

/// One `u v` line per edge, `u < v`, sorted by dense id.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Like [`serialize_edge_list`] but written with external labels, normalized and sorted by label.
pub fn serialize_labeled_edge_list(lg: &LabeledGraph) -> String {
    let list = EdgeList {
        edges: lg
            .graph
            .edges()
            .map(|(u, v)| (lg.labels[u], lg.labels[v]))
            .collect(),
    };
    let mut out = String::new();
    for (u, v) in list.normalized() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
