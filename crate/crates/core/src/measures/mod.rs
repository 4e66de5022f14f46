//! Robustness measures: 17 exact measures and 5 fast approximations.
//!
//! [`evaluate`] dispatches by [`MeasureId`] and wraps the value in a
//! [`MeasureResult`] carrying its robustness direction.

pub mod connectivity;
pub mod paths;
pub mod spectral;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph};

pub use connectivity::{edge_connectivity, vertex_connectivity};
pub use paths::{
    approx_average_edge_betweenness, approx_average_vertex_betweenness, average_distance,
    average_edge_betweenness, average_inverse_distance, average_vertex_betweenness, betweenness,
    diameter, global_clustering_coefficient, sampled_betweenness, BetweennessScores, DistanceSummary,
};
pub use spectral::{
    algebraic_connectivity, approx_effective_resistance, approx_natural_connectivity,
    approx_num_spanning_trees, effective_resistance, generalized_robustness_index,
    natural_connectivity, num_spanning_trees, spectral_gap, spectral_radius, spectral_scaling,
    SpanningTrees, SpectralScalingReport,
};

/// Default pair count for spectral approximations and the generalized robustness index.
pub const DEFAULT_SPECTRAL_K: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureId {
    VertexConnectivity,
    EdgeConnectivity,
    Diameter,
    AvgDistance,
    AvgInverseDistance,
    AvgVertexBetweenness,
    AvgEdgeBetweenness,
    Clustering,
    Lcc,
    SpectralRadius,
    SpectralGap,
    NaturalConnectivity,
    SpectralScaling,
    GeneralizedRobustnessIndex,
    AlgebraicConnectivity,
    SpanningTrees,
    EffectiveResistance,
    ApproxAvgVertexBetweenness,
    ApproxAvgEdgeBetweenness,
    ApproxNaturalConnectivity,
    ApproxSpanningTrees,
    ApproxEffectiveResistance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureCategory {
    Graph,
    Adjacency,
    Laplacian,
}

impl MeasureId {
    pub const ALL: [MeasureId; 22] = [
        MeasureId::VertexConnectivity,
        MeasureId::EdgeConnectivity,
        MeasureId::Diameter,
        MeasureId::AvgDistance,
        MeasureId::AvgInverseDistance,
        MeasureId::AvgVertexBetweenness,
        MeasureId::AvgEdgeBetweenness,
        MeasureId::Clustering,
        MeasureId::Lcc,
        MeasureId::SpectralRadius,
        MeasureId::SpectralGap,
        MeasureId::NaturalConnectivity,
        MeasureId::SpectralScaling,
        MeasureId::GeneralizedRobustnessIndex,
        MeasureId::AlgebraicConnectivity,
        MeasureId::SpanningTrees,
        MeasureId::EffectiveResistance,
        MeasureId::ApproxAvgVertexBetweenness,
        MeasureId::ApproxAvgEdgeBetweenness,
        MeasureId::ApproxNaturalConnectivity,
        MeasureId::ApproxSpanningTrees,
        MeasureId::ApproxEffectiveResistance,
    ];

    pub fn as_str(self) -> &'static str {
        use MeasureId::*;
        match self {
            VertexConnectivity => "vertex_connectivity",
            EdgeConnectivity => "edge_connectivity",
            Diameter => "diameter",
            AvgDistance => "avg_distance",
            AvgInverseDistance => "avg_inverse_distance",
            AvgVertexBetweenness => "avg_vertex_betweenness",
            AvgEdgeBetweenness => "avg_edge_betweenness",
            Clustering => "clustering",
            Lcc => "lcc",
            SpectralRadius => "spectral_radius",
            SpectralGap => "spectral_gap",
            NaturalConnectivity => "natural_connectivity",
            SpectralScaling => "spectral_scaling",
            GeneralizedRobustnessIndex => "generalized_robustness_index",
            AlgebraicConnectivity => "algebraic_connectivity",
            SpanningTrees => "spanning_trees",
            EffectiveResistance => "effective_resistance",
            ApproxAvgVertexBetweenness => "approx_avg_vertex_betweenness",
            ApproxAvgEdgeBetweenness => "approx_avg_edge_betweenness",
            ApproxNaturalConnectivity => "approx_natural_connectivity",
            ApproxSpanningTrees => "approx_spanning_trees",
            ApproxEffectiveResistance => "approx_effective_resistance",
        }
    }

    /// Whether a larger value indicates a more robust graph.
    pub fn higher_is_more_robust(self) -> bool {
        use MeasureId::*;
        match self.exact_counterpart() {
            VertexConnectivity | EdgeConnectivity | AvgInverseDistance | Clustering | Lcc
            | SpectralRadius | SpectralGap | NaturalConnectivity | AlgebraicConnectivity
            | SpanningTrees => true,
            Diameter | AvgDistance | AvgVertexBetweenness | AvgEdgeBetweenness | SpectralScaling
            | GeneralizedRobustnessIndex | EffectiveResistance => false,
            _ => unreachable!("exact_counterpart never returns an approximation"),
        }
    }

    pub fn is_exact(self) -> bool {
        self.exact_counterpart() == self
    }

    /// The exact measure an approximation estimates (identity for exact measures).
    pub fn exact_counterpart(self) -> MeasureId {
        use MeasureId::*;
        match self {
            ApproxAvgVertexBetweenness => AvgVertexBetweenness,
            ApproxAvgEdgeBetweenness => AvgEdgeBetweenness,
            ApproxNaturalConnectivity => NaturalConnectivity,
            ApproxSpanningTrees => SpanningTrees,
            ApproxEffectiveResistance => EffectiveResistance,
            other => other,
        }
    }

    /// The approximation of an exact measure, if one exists.
    pub fn approximation(self) -> Option<MeasureId> {
        MeasureId::ALL
            .iter()
            .copied()
            .find(|m| !m.is_exact() && m.exact_counterpart() == self)
    }

    pub fn category(self) -> MeasureCategory {
        use MeasureId::*;
        match self.exact_counterpart() {
            SpectralRadius | SpectralGap | NaturalConnectivity | SpectralScaling
            | GeneralizedRobustnessIndex => MeasureCategory::Adjacency,
            AlgebraicConnectivity | SpanningTrees | EffectiveResistance => MeasureCategory::Laplacian,
            _ => MeasureCategory::Graph,
        }
    }

    /// Sampling-based approximations consume a seed.
    pub fn is_stochastic(self) -> bool {
        matches!(self, MeasureId::ApproxAvgVertexBetweenness | MeasureId::ApproxAvgEdgeBetweenness)
    }

    /// Measures taking a `k` parameter.
    pub fn uses_k(self) -> bool {
        !self.is_exact() || self == MeasureId::GeneralizedRobustnessIndex
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureId::ALL
            .iter()
            .copied()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown measure id `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub measure_id: MeasureId,
    pub higher_is_more_robust: bool,
    pub exact: bool,
    pub k_used: Option<usize>,
    /// Set when the value needed a convention: distances restricted to the
    /// largest component, or a zero spanning-tree count for a disconnected graph.
    pub flagged: bool,
}

impl MeasureResult {
    fn new(id: MeasureId, value: f64) -> Self {
        MeasureResult {
            value,
            measure_id: id,
            higher_is_more_robust: id.higher_is_more_robust(),
            exact: id.is_exact(),
            k_used: None,
            flagged: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureOptions {
    /// Approximation parameter; defaults to `ceil(0.1 n)` pivots for betweenness and 30 pairs for spectra.
    pub k: Option<usize>,
    /// Pivot sampling seed for the betweenness approximations.
    pub seed: u64,
    /// Node count that the LCC fraction is normalized by (defaults to the current count).
    pub baseline_nodes: Option<usize>,
}

impl MeasureOptions {
    pub fn with_k(k: usize) -> Self {
        MeasureOptions { k: Some(k), ..Default::default() }
    }

    fn resolve_k(&self, id: MeasureId, n: usize) -> usize {
        match self.k {
            Some(k) => k,
            None if id.is_stochastic() => n.div_ceil(10).max(1),
            None => DEFAULT_SPECTRAL_K.min(n).max(1),
        }
    }
}

pub fn evaluate(g: &Graph, id: MeasureId, opts: &MeasureOptions) -> Result<MeasureResult> {
    use MeasureId::*;
    let n = g.node_count();
    let mut r = MeasureResult::new(id, 0.0);
    if id.uses_k() {
        r.k_used = Some(opts.resolve_k(id, n));
    }
    let k = r.k_used.unwrap_or(0);
    r.value = match id {
        VertexConnectivity => vertex_connectivity(g)? as f64,
        EdgeConnectivity => edge_connectivity(g)? as f64,
        Diameter | AvgDistance => {
            let d = if id == Diameter { diameter(g)? } else { average_distance(g)? };
            r.flagged = d.restricted_to_lcc;
            d.value
        }
        AvgInverseDistance => average_inverse_distance(g)?,
        AvgVertexBetweenness => average_vertex_betweenness(g)?,
        AvgEdgeBetweenness => average_edge_betweenness(g)?,
        Clustering => global_clustering_coefficient(g),
        Lcc => graph::largest_connected_component_fraction_of(g, opts.baseline_nodes.unwrap_or(n)),
        SpectralRadius => spectral_radius(g)?,
        SpectralGap => spectral_gap(g)?,
        NaturalConnectivity => natural_connectivity(g)?,
        SpectralScaling => spectral_scaling(g)?.xi,
        GeneralizedRobustnessIndex => generalized_robustness_index(g, k)?.xi,
        AlgebraicConnectivity => algebraic_connectivity(g)?,
        SpanningTrees | ApproxSpanningTrees => {
            let t = if id == SpanningTrees { num_spanning_trees(g)? } else { approx_num_spanning_trees(g, k)? };
            r.flagged = t.disconnected;
            t.value
        }
        EffectiveResistance => effective_resistance(g)?,
        ApproxAvgVertexBetweenness => approx_average_vertex_betweenness(g, k, opts.seed)?,
        ApproxAvgEdgeBetweenness => approx_average_edge_betweenness(g, k, opts.seed)?,
        ApproxNaturalConnectivity => approx_natural_connectivity(g, k)?,
        ApproxEffectiveResistance => approx_effective_resistance(g, k)?,
    };
    Ok(r)
}
