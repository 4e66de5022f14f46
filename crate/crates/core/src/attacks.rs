//! Node and edge attack strategies and the removal campaign runner.
//!
//! Initial strategies rank targets once on the intact graph. Recalculated
//! strategies re-rank after every removal. Equal scores are ordered by a
//! seeded shuffle of the id-sorted tie group, so runs are reproducible for a
//! fixed seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::measures::{self, MeasureId, MeasureOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Node,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    Random,
    InitialDegree,
    RecalculatedDegree,
    InitialBetweenness,
    RecalculatedBetweenness,
}

impl Selector {
    pub const ALL: [Selector; 5] = [
        Selector::Random,
        Selector::InitialDegree,
        Selector::RecalculatedDegree,
        Selector::InitialBetweenness,
        Selector::RecalculatedBetweenness,
    ];

    /// Short code: `rnd`, `id`, `rd`, `ib`, `rb`.
    pub fn code(self) -> &'static str {
        match self {
            Selector::Random => "rnd",
            Selector::InitialDegree => "id",
            Selector::RecalculatedDegree => "rd",
            Selector::InitialBetweenness => "ib",
            Selector::RecalculatedBetweenness => "rb",
        }
    }

    fn recalculated(self) -> bool {
        matches!(self, Selector::RecalculatedDegree | Selector::RecalculatedBetweenness)
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Selector::ALL
            .iter()
            .copied()
            .find(|sel| sel.code() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown attack strategy `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackStrategy {
    pub target_kind: TargetKind,
    pub selector: Selector,
    pub seed: u64,
}

impl AttackStrategy {
    pub fn node(selector: Selector, seed: u64) -> Self {
        AttackStrategy { target_kind: TargetKind::Node, selector, seed }
    }

    pub fn edge(selector: Selector, seed: u64) -> Self {
        AttackStrategy { target_kind: TargetKind::Edge, selector, seed }
    }
}

/// One change applied to a graph during an attack or defense campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Perturbation {
    RemoveNode(NodeId),
    RemoveEdge(NodeId, NodeId),
    AddEdge(NodeId, NodeId),
    Rewire { removed: (NodeId, NodeId), added: (NodeId, NodeId) },
}

impl Perturbation {
    pub fn apply(&self, g: &mut Graph) -> Result<()> {
        match *self {
            Perturbation::RemoveNode(v) => g.remove_node_mut(v),
            Perturbation::RemoveEdge(u, v) => g.remove_edge_mut(u, v),
            Perturbation::AddEdge(u, v) => g.add_edge_mut(u, v),
            Perturbation::Rewire { removed, added } => {
                g.remove_edge_mut(removed.0, removed.1)?;
                g.add_edge_mut(added.0, added.1)
            }
        }
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Perturbation::RemoveNode(v) => write!(f, "{v}"),
            Perturbation::RemoveEdge(u, v) => write!(f, "{u}-{v}"),
            Perturbation::AddEdge(u, v) => write!(f, "+{u}-{v}"),
            Perturbation::Rewire { removed, added } => {
                write!(f, "-{}-{} +{}-{}", removed.0, removed.1, added.0, added.1)
            }
        }
    }
}

/// A measure value on the curve; `flagged` marks values that needed a
/// convention or could not be evaluated (stored as NaN).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub value: f64,
    pub flagged: bool,
}

/// Which measure a campaign records after each step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveConfig {
    pub measure: MeasureId,
    pub options: MeasureOptions,
    pub keep_snapshots: bool,
}

impl CurveConfig {
    pub fn new(measure: MeasureId) -> Self {
        CurveConfig { measure, options: MeasureOptions::default(), keep_snapshots: false }
    }

    /// Largest-component fraction, the default attack curve.
    pub fn lcc() -> Self {
        CurveConfig::new(MeasureId::Lcc)
    }

    pub(crate) fn point(&self, g: &Graph) -> CurvePoint {
        match measures::evaluate(g, self.measure, &self.options) {
            Ok(r) => CurvePoint { value: r.value, flagged: r.flagged },
            Err(_) => CurvePoint { value: f64::NAN, flagged: true },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationTrace {
    pub measure: MeasureId,
    pub steps: Vec<Perturbation>,
    /// `curve[0]` is the unperturbed graph; `curve[i]` follows `steps[i - 1]`.
    pub curve: Vec<CurvePoint>,
    pub graph_snapshots: Option<Vec<Graph>>,
}

impl PerturbationTrace {
    pub fn values(&self) -> Vec<f64> {
        self.curve.iter().map(|p| p.value).collect()
    }

    /// Trapezoidal area under the curve with the step axis scaled to `[0, 1]`.
    pub fn auc(&self) -> f64 {
        let v = self.values();
        match v.len() {
            0 => 0.0,
            1 => v[0],
            len => v.windows(2).map(|w| 0.5 * (w[0] + w[1])).sum::<f64>() / (len - 1) as f64,
        }
    }

    pub fn final_value(&self) -> f64 {
        self.curve.last().map_or(f64::NAN, |p| p.value)
    }
}

fn same_score(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Orders `(item, score)` pairs by descending score; ties are shuffled.
fn rank<T: Copy + Ord>(mut scored: Vec<(T, f64)>, rng: &mut ChaCha8Rng) -> Vec<T> {
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut out = Vec::with_capacity(scored.len());
    let mut start = 0;
    while start < scored.len() {
        let mut end = start + 1;
        while end < scored.len() && same_score(scored[start].1, scored[end].1) {
            end += 1;
        }
        let mut group: Vec<T> = scored[start..end].iter().map(|p| p.0).collect();
        group.sort();
        group.shuffle(rng);
        out.extend(group);
        start = end;
    }
    out
}

/// Best-scoring item; ties resolved by a seeded pick from the id-sorted group.
fn top<T: Copy + Ord>(scored: &[(T, f64)], rng: &mut ChaCha8Rng) -> Option<T> {
    let best = scored.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mut group: Vec<T> = scored.iter().filter(|p| same_score(p.1, best)).map(|p| p.0).collect();
    group.sort();
    group.shuffle(rng);
    group.first().copied()
}

fn node_scores(g: &Graph, selector: Selector) -> Vec<(NodeId, f64)> {
    match selector {
        Selector::InitialDegree | Selector::RecalculatedDegree => {
            g.nodes().map(|v| (v, g.degree(v) as f64)).collect()
        }
        _ => {
            let b = measures::betweenness(g);
            g.nodes().map(|v| (v, b.nodes[v])).collect()
        }
    }
}

fn edge_scores(g: &Graph, selector: Selector) -> Vec<((NodeId, NodeId), f64)> {
    match selector {
        Selector::InitialDegree | Selector::RecalculatedDegree => g
            .edges()
            .map(|(u, v)| ((u, v), (g.degree(u) + g.degree(v)) as f64))
            .collect(),
        _ => measures::betweenness(g).edges,
    }
}

/// Ordered removal targets for `count` steps of `strategy`.
pub fn select_targets(g: &Graph, strategy: &AttackStrategy, count: usize) -> Result<Vec<Perturbation>> {
    let available = match strategy.target_kind {
        TargetKind::Node => g.node_count(),
        TargetKind::Edge => g.edge_count(),
    };
    if count > available {
        return Err(Error::InvalidParameter(format!(
            "cannot remove {count} targets from {available} available"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed);
    let sel = strategy.selector;
    match strategy.target_kind {
        TargetKind::Node if sel == Selector::Random => {
            let mut nodes: Vec<NodeId> = g.nodes().collect();
            nodes.shuffle(&mut rng);
            Ok(nodes.into_iter().take(count).map(Perturbation::RemoveNode).collect())
        }
        TargetKind::Edge if sel == Selector::Random => {
            let mut edges: Vec<_> = g.edges().collect();
            edges.shuffle(&mut rng);
            Ok(edges.into_iter().take(count).map(|(u, v)| Perturbation::RemoveEdge(u, v)).collect())
        }
        TargetKind::Node if !sel.recalculated() => Ok(rank(node_scores(g, sel), &mut rng)
            .into_iter()
            .take(count)
            .map(Perturbation::RemoveNode)
            .collect()),
        TargetKind::Edge if !sel.recalculated() => Ok(rank(edge_scores(g, sel), &mut rng)
            .into_iter()
            .take(count)
            .map(|(u, v)| Perturbation::RemoveEdge(u, v))
            .collect()),
        TargetKind::Node => {
            let mut h = g.clone();
            let mut out = Vec::with_capacity(count);
            let mut scores = node_scores(&h, sel);
            for _ in 0..count {
                let v = top(&scores, &mut rng).expect("count <= node count");
                let was_isolated = h.degree(v) == 0;
                h.remove_node_mut(v)?;
                out.push(Perturbation::RemoveNode(v));
                if was_isolated {
                    // Nothing else changes: drop v and keep the other scores.
                    scores.retain(|p| p.0 != v);
                } else {
                    scores = node_scores(&h, sel);
                }
            }
            Ok(out)
        }
        TargetKind::Edge => {
            let mut h = g.clone();
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let (u, v) = top(&edge_scores(&h, sel), &mut rng).expect("count <= edge count");
                h.remove_edge_mut(u, v)?;
                out.push(Perturbation::RemoveEdge(u, v));
            }
            Ok(out)
        }
    }
}

/// Removes `count` targets one at a time, recording `curve.measure` after each.
///
/// Under the default [`CurveConfig::lcc`], the LCC fraction is normalized by the
/// intact graph's node count.
pub fn run_attack(
    g: &Graph,
    strategy: &AttackStrategy,
    count: usize,
    curve: &CurveConfig,
) -> Result<PerturbationTrace> {
    let steps = select_targets(g, strategy, count)?;
    let mut cfg = *curve;
    if cfg.options.baseline_nodes.is_none() {
        cfg.options.baseline_nodes = Some(g.node_count());
    }
    let mut h = g.clone();
    let mut points = vec![cfg.point(&h)];
    let mut snapshots = cfg.keep_snapshots.then(|| vec![h.clone()]);
    for step in &steps {
        step.apply(&mut h)?;
        points.push(cfg.point(&h));
        if let Some(s) = snapshots.as_mut() {
            s.push(h.clone());
        }
    }
    Ok(PerturbationTrace { measure: cfg.measure, steps, curve: points, graph_snapshots: snapshots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    /// Triangles {0,1,2} and {4,5,6} joined through node 3.
    fn triangles_with_bridge_node() -> Graph {
        Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)]).unwrap()
    }

    #[test]
    fn initial_degree_picks_hub() {
        let t = select_targets(&star(5), &AttackStrategy::node(Selector::InitialDegree, 0), 1).unwrap();
        assert_eq!(t, vec![Perturbation::RemoveNode(0)]);
    }

    #[test]
    fn initial_betweenness_picks_path_middle() {
        let t = select_targets(&path(5), &AttackStrategy::node(Selector::InitialBetweenness, 3), 1).unwrap();
        assert_eq!(t, vec![Perturbation::RemoveNode(2)]);
    }

    #[test]
    fn recalculated_betweenness_picks_bridge_endpoint() {
        // Triangles {0,1,2} and {3,4,5} with bridge 2-3.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        for seed in 0..10 {
            let t = select_targets(&g, &AttackStrategy::node(Selector::RecalculatedBetweenness, seed), 1).unwrap();
            assert!(matches!(t[0], Perturbation::RemoveNode(2) | Perturbation::RemoveNode(3)));
        }
    }

    #[test]
    fn clique_curve_shrinks_linearly() {
        for sel in Selector::ALL {
            let trace = run_attack(&complete(4), &AttackStrategy::node(sel, 5), 3, &CurveConfig::lcc()).unwrap();
            assert_eq!(trace.values(), vec![1.0, 0.75, 0.5, 0.25], "{sel}");
        }
    }

    #[test]
    fn bridge_node_removal_curve() {
        let g = triangles_with_bridge_node();
        let trace =
            run_attack(&g, &AttackStrategy::node(Selector::RecalculatedBetweenness, 1), 1, &CurveConfig::lcc()).unwrap();
        assert_eq!(trace.steps, vec![Perturbation::RemoveNode(3)]);
        assert_eq!(trace.values(), vec![1.0, 3.0 / 7.0]);
    }

    #[test]
    fn random_attack_is_deterministic() {
        let g = random_connected(40, 0.08, 2);
        for kind in [TargetKind::Node, TargetKind::Edge] {
            let s = AttackStrategy { target_kind: kind, selector: Selector::Random, seed: 9 };
            let a = run_attack(&g, &s, 10, &CurveConfig::lcc()).unwrap();
            let b = run_attack(&g, &s, 10, &CurveConfig::lcc()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn node_lcc_curve_is_non_increasing() {
        let g = generate_clustered_scale_free(crate::generators::GeneratorParams::new(80, 2, 0.3, 1)).unwrap();
        for sel in Selector::ALL {
            let v = run_attack(&g, &AttackStrategy::node(sel, 2), 30, &CurveConfig::lcc()).unwrap().values();
            assert!(v.windows(2).all(|w| w[1] <= w[0]), "{sel}: {v:?}");
            assert_eq!(v.len(), 31);
        }
    }

    #[test]
    fn edge_attacks() {
        // Edge betweenness on the bridged triangles singles out the bridge.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        let t = select_targets(&g, &AttackStrategy::edge(Selector::InitialBetweenness, 0), 1).unwrap();
        assert_eq!(t, vec![Perturbation::RemoveEdge(2, 3)]);
        let t = select_targets(&g, &AttackStrategy::edge(Selector::InitialDegree, 0), 1).unwrap();
        assert_eq!(t, vec![Perturbation::RemoveEdge(2, 3)]);
        let trace =
            run_attack(&g, &AttackStrategy::edge(Selector::RecalculatedBetweenness, 0), 1, &CurveConfig::lcc()).unwrap();
        assert_eq!(trace.values(), vec![1.0, 0.5]);
        let all = select_targets(&g, &AttackStrategy::edge(Selector::RecalculatedDegree, 4), 7).unwrap();
        assert_eq!(all.len(), 7);
    }

    #[test]
    fn too_many_targets() {
        assert!(select_targets(&path(3), &AttackStrategy::node(Selector::Random, 0), 4).is_err());
        assert!(select_targets(&path(3), &AttackStrategy::edge(Selector::Random, 0), 3).is_err());
    }

    #[test]
    fn failing_measures_are_flagged() {
        let g = path(4);
        let trace = run_attack(
            &g,
            &AttackStrategy::node(Selector::InitialDegree, 0),
            3,
            &CurveConfig::new(MeasureId::EffectiveResistance),
        )
        .unwrap();
        assert!(!trace.curve[0].flagged);
        assert!(trace.curve[1].flagged && trace.curve[1].value.is_nan());
    }

    #[test]
    fn auc_of_linear_curve() {
        let trace = run_attack(&complete(4), &AttackStrategy::node(Selector::Random, 0), 3, &CurveConfig::lcc()).unwrap();
        assert!((trace.auc() - 0.625).abs() < 1e-15);
    }
}
