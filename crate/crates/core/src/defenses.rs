//! Edge addition and rewiring defenses, and greedy Netshield node selection.

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::attacks::{CurveConfig, Perturbation, PerturbationTrace};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::spectral::{leading_adjacency_pair, SpectrumResult};

/// Resampling attempts before an action is declared infeasible.
pub const MAX_TRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefenseKind {
    RandomAddition,
    PreferentialAddition,
    RandomEdgeRewiring,
    RandomNeighborRewiring,
    PreferentialRandomEdgeRewiring,
    Netshield,
}

impl DefenseKind {
    pub const ALL: [DefenseKind; 6] = [
        DefenseKind::RandomAddition,
        DefenseKind::PreferentialAddition,
        DefenseKind::RandomEdgeRewiring,
        DefenseKind::RandomNeighborRewiring,
        DefenseKind::PreferentialRandomEdgeRewiring,
        DefenseKind::Netshield,
    ];

    pub const HEURISTICS: [DefenseKind; 5] = [
        DefenseKind::RandomAddition,
        DefenseKind::PreferentialAddition,
        DefenseKind::RandomEdgeRewiring,
        DefenseKind::RandomNeighborRewiring,
        DefenseKind::PreferentialRandomEdgeRewiring,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DefenseKind::RandomAddition => "random_addition",
            DefenseKind::PreferentialAddition => "preferential_addition",
            DefenseKind::RandomEdgeRewiring => "random_edge_rewiring",
            DefenseKind::RandomNeighborRewiring => "random_neighbor_rewiring",
            DefenseKind::PreferentialRandomEdgeRewiring => "preferential_random_edge_rewiring",
            DefenseKind::Netshield => "netshield",
        }
    }

    pub fn is_addition(self) -> bool {
        matches!(self, DefenseKind::RandomAddition | DefenseKind::PreferentialAddition)
    }

    pub fn is_rewiring(self) -> bool {
        !self.is_addition() && self != DefenseKind::Netshield
    }
}

impl fmt::Display for DefenseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DefenseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DefenseKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown defense strategy `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefenseStrategy {
    pub kind: DefenseKind,
    /// Edges to add or rewire, or nodes to monitor for Netshield.
    pub budget: usize,
    pub seed: u64,
}

impl DefenseStrategy {
    pub fn new(kind: DefenseKind, budget: usize, seed: u64) -> Self {
        DefenseStrategy { kind, budget, seed }
    }
}

fn infeasible(what: &str) -> Error {
    Error::Infeasible { tries: MAX_TRIES, what: what.to_string() }
}

fn ordered(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    (u.min(v), u.max(v))
}

/// A uniformly random absent pair other than `forbidden`.
fn random_absent_pair(
    g: &Graph,
    nodes: &[NodeId],
    forbidden: Option<(NodeId, NodeId)>,
    rng: &mut ChaCha8Rng,
) -> Result<(NodeId, NodeId)> {
    for _ in 0..MAX_TRIES {
        let u = *nodes.choose(rng).ok_or_else(|| infeasible("edge addition on an empty graph"))?;
        let v = *nodes.choose(rng).expect("non-empty");
        if u != v && !g.has_edge(u, v) && Some(ordered(u, v)) != forbidden {
            return Ok(ordered(u, v));
        }
    }
    Err(infeasible("random edge addition"))
}

/// Absent pair with the lowest degrees, ties by lowest id.
fn lowest_degree_absent_pair(g: &Graph) -> Option<(NodeId, NodeId)> {
    let mut nodes: Vec<NodeId> = g.nodes().collect();
    nodes.sort_by_key(|&v| (g.degree(v), v));
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            if !g.has_edge(u, v) {
                return Some(ordered(u, v));
            }
        }
    }
    None
}

fn is_complete(g: &Graph) -> bool {
    let n = g.node_count();
    g.edge_count() == n * n.saturating_sub(1) / 2
}

/// Applies one action of `kind` to `g` in place.
fn defense_step(g: &mut Graph, kind: DefenseKind, rng: &mut ChaCha8Rng) -> Result<Perturbation> {
    let nodes: Vec<NodeId> = g.nodes().collect();
    if kind.is_addition() && is_complete(g) {
        return Err(infeasible("edge addition on a complete graph"));
    }
    if kind.is_rewiring() && g.edge_count() == 0 {
        return Err(infeasible("rewiring on a graph without edges"));
    }
    let action = match kind {
        DefenseKind::RandomAddition => {
            let (u, v) = random_absent_pair(g, &nodes, None, rng)?;
            Perturbation::AddEdge(u, v)
        }
        DefenseKind::PreferentialAddition => {
            let (u, v) = lowest_degree_absent_pair(g).ok_or_else(|| infeasible("edge addition"))?;
            Perturbation::AddEdge(u, v)
        }
        DefenseKind::RandomEdgeRewiring => {
            let edges: Vec<_> = g.edges().collect();
            let removed = edges[rng.random_range(0..edges.len())];
            let h = g.remove_edge(removed.0, removed.1)?;
            let added = random_absent_pair(&h, &nodes, Some(removed), rng)?;
            Perturbation::Rewire { removed, added }
        }
        DefenseKind::RandomNeighborRewiring => {
            let mut pick = None;
            for _ in 0..MAX_TRIES {
                let v = *nodes.choose(rng).expect("graph has edges");
                if let Some(&w) = g.neighbors(v).choose(rng) {
                    pick = Some(ordered(v, w));
                    break;
                }
            }
            let removed = pick.ok_or_else(|| infeasible("neighbor rewiring"))?;
            let h = g.remove_edge(removed.0, removed.1)?;
            let added = random_absent_pair(&h, &nodes, Some(removed), rng)?;
            Perturbation::Rewire { removed, added }
        }
        DefenseKind::PreferentialRandomEdgeRewiring => {
            let edges: Vec<_> = g.edges().collect();
            let (u, v) = edges[rng.random_range(0..edges.len())];
            // Ties drop the larger id, which is `v`.
            let (high, low) = if g.degree(u) > g.degree(v) { (u, v) } else { (v, u) };
            let mut added = None;
            for _ in 0..MAX_TRIES {
                let w = *nodes.choose(rng).expect("graph has nodes");
                if w != low && w != high && !g.has_edge(low, w) {
                    added = Some(ordered(low, w));
                    break;
                }
            }
            let added = added.ok_or_else(|| infeasible("preferential edge rewiring"))?;
            Perturbation::Rewire { removed: (u, v), added }
        }
        DefenseKind::Netshield => {
            return Err(Error::InvalidParameter(
                "netshield selects monitored nodes; use netshield_select".into(),
            ))
        }
    };
    action.apply(g)?;
    Ok(action)
}

/// Applies `strategy.budget` heuristic actions and returns the defended graph with its action log.
pub fn apply_heuristic_defense(g: &Graph, strategy: &DefenseStrategy) -> Result<(Graph, Vec<Perturbation>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed);
    let mut h = g.clone();
    let mut log = Vec::with_capacity(strategy.budget);
    for _ in 0..strategy.budget {
        log.push(defense_step(&mut h, strategy.kind, &mut rng)?);
    }
    Ok((h, log))
}

/// Records `curve.measure` before and after every defense action.
///
/// Produces the same actions as [`apply_heuristic_defense`] for the same strategy.
pub fn run_defense(g_attacked: &Graph, strategy: &DefenseStrategy, curve: &CurveConfig) -> Result<PerturbationTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed);
    let mut h = g_attacked.clone();
    let mut points = vec![curve.point(&h)];
    let mut snapshots = curve.keep_snapshots.then(|| vec![h.clone()]);
    let mut steps = Vec::with_capacity(strategy.budget);
    for _ in 0..strategy.budget {
        steps.push(defense_step(&mut h, strategy.kind, &mut rng)?);
        points.push(curve.point(&h));
        if let Some(s) = snapshots.as_mut() {
            s.push(h.clone());
        }
    }
    Ok(PerturbationTrace { measure: curve.measure, steps, curve: points, graph_snapshots: snapshots })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonitoredSet {
    /// Node ids in selection order.
    pub nodes: Vec<NodeId>,
    pub shield_value: f64,
    /// λ₁(g) − λ₁(g with the set removed).
    pub eigendrop: f64,
}

fn shield(u: &[f64], lambda: f64, g: &Graph, set: &[NodeId]) -> f64 {
    let mut sv: f64 = set.iter().map(|&i| 2.0 * lambda * u[i] * u[i]).sum();
    for &i in set {
        for &j in set {
            if g.has_edge(i, j) {
                sv -= u[i] * u[j];
            }
        }
    }
    sv
}

/// Shield value of `set` from the leading eigenpair in `spectrum`; pairs are ordered.
pub fn shield_value(g: &Graph, set: &[NodeId], spectrum: &SpectrumResult) -> Result<f64> {
    let (lambda, u) = spectrum
        .leading()
        .ok_or_else(|| Error::Precondition("spectrum has no leading eigenvector".into()))?;
    if let Some(&bad) = set.iter().find(|&&v| v >= u.len()) {
        return Err(Error::Precondition(format!("node {bad} outside the spectrum")));
    }
    Ok(shield(u, lambda, g, set))
}

fn leading_eigenvalue(g: &Graph) -> Result<f64> {
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    Ok(leading_adjacency_pair(g)?.0)
}

/// Greedy selection of `k` nodes whose removal most reduces λ₁.
pub fn netshield_select(g: &Graph, k: usize) -> Result<MonitoredSet> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("netshield needs 1 <= k <= {n}, got {k}")));
    }
    if !g.is_connected() {
        return Err(Error::Domain("netshield needs a connected graph".into()));
    }
    let (lambda, u) = leading_adjacency_pair(g)?;
    let mut chosen = vec![false; g.id_bound()];
    let mut penalty = vec![0.0; g.id_bound()];
    let mut nodes = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(NodeId, f64)> = None;
        for v in g.nodes().filter(|&v| !chosen[v]) {
            let gain = 2.0 * lambda * u[v] * u[v] - 2.0 * penalty[v];
            if best.is_none_or(|(_, b)| gain > b) {
                best = Some((v, gain));
            }
        }
        let (v, _) = best.expect("k <= n");
        chosen[v] = true;
        nodes.push(v);
        for &w in g.neighbors(v) {
            penalty[w] += u[v] * u[w];
        }
    }
    let shield_value = shield(&u, lambda, g, &nodes);
    let mut rest = g.clone();
    for &v in &nodes {
        rest.remove_node_mut(v)?;
    }
    let eigendrop = lambda - leading_eigenvalue(&rest)?;
    Ok(MonitoredSet { nodes, shield_value, eigendrop })
}
