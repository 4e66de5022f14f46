//! Adjacency- and Laplacian-spectrum measures and their top-k / bottom-k approximations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{
    adjacency_spectrum, bottom_k_laplacian, laplacian_spectrum, top_k_adjacency, SolverConfig,
};

fn require_nodes(g: &Graph, min: usize, what: &str) -> Result<()> {
    if g.node_count() < min {
        return Err(Error::Domain(format!("{what} needs at least {min} nodes")));
    }
    Ok(())
}

fn top_adjacency_values(g: &Graph, k: usize) -> Result<Vec<f64>> {
    let k = k.min(g.node_count());
    if g.node_count() <= 64 {
        let mut s = adjacency_spectrum(g)?.eigenvalues;
        s.truncate(k);
        Ok(s)
    } else {
        Ok(top_k_adjacency(g, &SolverConfig::with_k(k))?.eigenvalues)
    }
}

fn bottom_laplacian_values(g: &Graph, k: usize) -> Result<Vec<f64>> {
    let k = k.min(g.node_count());
    if g.node_count() <= 64 {
        let mut s = laplacian_spectrum(g)?.eigenvalues;
        s.truncate(k);
        Ok(s)
    } else {
        Ok(bottom_k_laplacian(g, &SolverConfig::with_k(k))?.eigenvalues)
    }
}

/// Largest adjacency eigenvalue λ₁.
pub fn spectral_radius(g: &Graph) -> Result<f64> {
    require_nodes(g, 1, "spectral radius")?;
    Ok(top_adjacency_values(g, 1)?[0])
}

/// λ₁ − λ₂.
pub fn spectral_gap(g: &Graph) -> Result<f64> {
    require_nodes(g, 2, "spectral gap")?;
    let top = top_adjacency_values(g, 2)?;
    Ok(top[0] - top[1])
}

/// `ln((1/n) Σ exp(λ))` with the largest exponent factored out.
fn log_mean_exp(values: &[f64], n: usize) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = values.iter().map(|l| (l - max).exp()).sum();
    max + sum.ln() - (n as f64).ln()
}

pub fn natural_connectivity(g: &Graph) -> Result<f64> {
    require_nodes(g, 1, "natural connectivity")?;
    let s = adjacency_spectrum(g)?;
    Ok(log_mean_exp(&s.eigenvalues, g.node_count()))
}

/// Natural connectivity from the `k` largest adjacency eigenvalues only (still divided by n).
pub fn approx_natural_connectivity(g: &Graph, k: usize) -> Result<f64> {
    require_nodes(g, 1, "natural connectivity")?;
    check_k(g, k)?;
    let top = top_k_adjacency(g, &SolverConfig::with_k(k))?;
    Ok(log_mean_exp(&top.eigenvalues, g.node_count()))
}

fn check_k(g: &Graph, k: usize) -> Result<()> {
    if k < 1 || k > g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must lie in 1..={}",
            g.node_count()
        )));
    }
    Ok(())
}

/// Spectral scaling ξ with the diagnostics used for the good-expansion verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralScalingReport {
    pub xi: f64,
    /// Pearson correlation of `ln u₁(i)` against `ln SC_odd(i)`; `None` when all nodes coincide.
    pub correlation: Option<f64>,
    /// Least-squares slope of the same regression (0.5 for an ideal expander).
    pub slope: Option<f64>,
    pub good_expansion: bool,
    pub pairs_used: usize,
}

/// Threshold on ξ below which a graph is classified as a good expander.
pub const GOOD_EXPANSION_XI: f64 = 1e-2;

/// `sinh(a) / sinh(b)` for `b > 0`, `|a| ≤ b`, without overflow.
fn sinh_ratio(a: f64, b: f64) -> f64 {
    ((a - b).exp() - (-a - b).exp()) / (1.0 - (-2.0 * b).exp())
}

fn spectral_scaling_from(eigenvalues: &[f64], vectors: &[Vec<f64>], g: &Graph) -> Result<SpectralScalingReport> {
    let lambda1 = eigenvalues[0];
    if !(lambda1 > 0.0) {
        return Err(Error::Domain("spectral scaling needs at least one edge".into()));
    }
    let u1 = &vectors[0];
    let nodes: Vec<usize> = g.nodes().collect();
    if nodes.iter().any(|&i| !(u1[i] > 0.0)) {
        return Err(Error::Domain(
            "leading eigenvector is not entrywise positive (graph is disconnected)".into(),
        ));
    }
    // Work with SC_odd(i) / sinh(λ₁): the ln A term then cancels the sinh(λ₁) scale.
    let mut sum_sq = 0.0;
    let mut xs = Vec::with_capacity(nodes.len());
    let mut ys = Vec::with_capacity(nodes.len());
    let mut bipartite = false;
    for &i in &nodes {
        let ratio: f64 = eigenvalues
            .iter()
            .zip(vectors)
            .map(|(&l, v)| v[i] * v[i] * sinh_ratio(l, lambda1))
            .sum();
        if !(ratio > 1e-14) {
            bipartite = true;
            break;
        }
        let term = u1[i].ln() - 0.5 * ratio.ln();
        sum_sq += term * term;
        xs.push(ratio.ln() + ln_sinh(lambda1));
        ys.push(u1[i].ln());
    }
    if bipartite {
        // No odd closed walks anywhere: log SC_odd diverges.
        return Ok(SpectralScalingReport {
            xi: f64::INFINITY,
            correlation: None,
            slope: None,
            good_expansion: false,
            pairs_used: eigenvalues.len(),
        });
    }
    let xi = (sum_sq / nodes.len() as f64).sqrt();
    let (slope, correlation) = regression(&xs, &ys);
    Ok(SpectralScalingReport {
        xi,
        correlation,
        slope,
        good_expansion: xi < GOOD_EXPANSION_XI,
        pairs_used: eigenvalues.len(),
    })
}

fn ln_sinh(x: f64) -> f64 {
    x + (0.5 * (1.0 - (-2.0 * x).exp())).ln()
}

fn regression(xs: &[f64], ys: &[f64]) -> (Option<f64>, Option<f64>) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx < 1e-20 {
        return (None, None);
    }
    let slope = sxy / sxx;
    let corr = if syy < 1e-20 { None } else { Some(sxy / (sxx * syy).sqrt()) };
    (Some(slope), corr)
}

/// Spectral scaling ξ over the full adjacency spectrum. Requires a connected graph.
pub fn spectral_scaling(g: &Graph) -> Result<SpectralScalingReport> {
    require_nodes(g, 2, "spectral scaling")?;
    if !g.is_connected() {
        return Err(Error::Domain("spectral scaling needs a connected graph".into()));
    }
    let s = adjacency_spectrum(g)?;
    spectral_scaling_from(&s.eigenvalues, s.eigenvectors.as_ref().expect("dense solver returns vectors"), g)
}

/// Spectral scaling with only the top-`k` eigenpairs contributing to `SC_odd`.
pub fn generalized_robustness_index(g: &Graph, k: usize) -> Result<SpectralScalingReport> {
    require_nodes(g, 2, "generalized robustness index")?;
    check_k(g, k)?;
    if k == g.node_count() {
        return spectral_scaling(g);
    }
    if !g.is_connected() {
        return Err(Error::Domain("generalized robustness index needs a connected graph".into()));
    }
    let s = if g.node_count() <= 64 {
        let mut s = adjacency_spectrum(g)?;
        s.eigenvalues.truncate(k);
        if let Some(v) = s.eigenvectors.as_mut() {
            v.truncate(k);
        }
        s
    } else {
        top_k_adjacency(g, &SolverConfig::with_k(k))?
    };
    spectral_scaling_from(&s.eigenvalues, s.eigenvectors.as_ref().expect("vectors requested"), g)
}

/// Second-smallest Laplacian eigenvalue μ₂.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    require_nodes(g, 2, "algebraic connectivity")?;
    Ok(bottom_laplacian_values(g, 2)?[1].max(0.0))
}

/// Spanning-tree count and whether the graph was disconnected (count 0 by convention).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanningTrees {
    pub value: f64,
    pub ln_value: f64,
    pub disconnected: bool,
}

fn spanning_trees_from(nonzero: &[f64], n: usize) -> SpanningTrees {
    let ln_value = nonzero.iter().map(|m| m.ln()).sum::<f64>() - (n as f64).ln();
    SpanningTrees { value: ln_value.exp(), ln_value, disconnected: false }
}

const DISCONNECTED_TREES: SpanningTrees =
    SpanningTrees { value: 0.0, ln_value: f64::NEG_INFINITY, disconnected: true };

/// Kirchhoff count `(1/n) Π μᵢ` over the nonzero Laplacian eigenvalues, in log space.
pub fn num_spanning_trees(g: &Graph) -> Result<SpanningTrees> {
    require_nodes(g, 1, "spanning tree count")?;
    if !g.is_connected() {
        return Ok(DISCONNECTED_TREES);
    }
    let s = laplacian_spectrum(g)?;
    Ok(spanning_trees_from(&s.eigenvalues[1..], g.node_count()))
}

/// Smallest `min(k, n−1)` nonzero Laplacian eigenvalues, skipping the zero mode.
fn smallest_nonzero_laplacian(g: &Graph, k: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    let want = (k + 1).min(n);
    let s = bottom_k_laplacian(g, &SolverConfig::with_k(want))?;
    Ok(s.eigenvalues[1..].to_vec())
}

pub fn approx_num_spanning_trees(g: &Graph, k: usize) -> Result<SpanningTrees> {
    require_nodes(g, 1, "spanning tree count")?;
    check_k(g, k)?;
    if !g.is_connected() {
        return Ok(DISCONNECTED_TREES);
    }
    let mu = smallest_nonzero_laplacian(g, k)?;
    Ok(spanning_trees_from(&mu, g.node_count()))
}

/// Effective graph resistance `n Σ 1/μᵢ` over the nonzero Laplacian eigenvalues.
pub fn effective_resistance(g: &Graph) -> Result<f64> {
    require_nodes(g, 1, "effective resistance")?;
    if !g.is_connected() {
        return Err(Error::InfiniteResistance);
    }
    let s = laplacian_spectrum(g)?;
    Ok(g.node_count() as f64 * s.eigenvalues[1..].iter().map(|m| 1.0 / m).sum::<f64>())
}

/// Effective resistance truncated to the `k` smallest nonzero eigenvalues (a lower bound).
pub fn approx_effective_resistance(g: &Graph, k: usize) -> Result<f64> {
    require_nodes(g, 1, "effective resistance")?;
    check_k(g, k)?;
    if !g.is_connected() {
        return Err(Error::InfiniteResistance);
    }
    let mu = smallest_nonzero_laplacian(g, k)?;
    Ok(g.node_count() as f64 * mu.iter().map(|m| 1.0 / m).sum::<f64>())
}
