//! Shortest-path measures: betweenness (Brandes), distances, efficiency.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, largest_component, Graph, NodeId, UNREACHABLE};

/// Per-node and per-edge betweenness summed over ordered source/target pairs.
///
/// Node scores exclude the endpoints of each pair; edge scores count every
/// pair whose shortest paths use the edge, adjacent endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct BetweennessScores {
    /// Indexed by node id (zero for removed nodes).
    pub nodes: Vec<f64>,
    /// `((u, v), score)` with `u < v`, in `Graph::edges()` order.
    pub edges: Vec<((NodeId, NodeId), f64)>,
}

impl BetweennessScores {
    pub fn node_total(&self) -> f64 {
        self.nodes.iter().sum()
    }

    pub fn edge_total(&self) -> f64 {
        self.edges.iter().map(|(_, b)| b).sum()
    }
}

const CHUNK: usize = 32;

/// Arc offsets: arc `offsets[v] + i` is `v -> g.neighbors(v)[i]`.
fn arc_offsets(g: &Graph) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(g.id_bound() + 1);
    let mut acc = 0;
    for v in 0..g.id_bound() {
        offsets.push(acc);
        acc += g.degree(v);
    }
    offsets.push(acc);
    offsets
}

struct Workspace {
    dist: Vec<usize>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<NodeId>,
    queue: VecDeque<NodeId>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            dist: vec![UNREACHABLE; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }
}

fn accumulate_source(
    g: &Graph,
    offsets: &[usize],
    s: NodeId,
    ws: &mut Workspace,
    nodes: &mut [f64],
    arcs: &mut [f64],
) {
    for &v in &ws.order {
        ws.dist[v] = UNREACHABLE;
        ws.sigma[v] = 0.0;
        ws.delta[v] = 0.0;
    }
    ws.order.clear();
    ws.dist[s] = 0;
    ws.sigma[s] = 1.0;
    ws.queue.push_back(s);
    while let Some(v) = ws.queue.pop_front() {
        ws.order.push(v);
        let dv = ws.dist[v];
        for &w in g.neighbors(v) {
            if ws.dist[w] == UNREACHABLE {
                ws.dist[w] = dv + 1;
                ws.queue.push_back(w);
            }
            if ws.dist[w] == dv + 1 {
                ws.sigma[w] += ws.sigma[v];
            }
        }
    }
    for idx in (0..ws.order.len()).rev() {
        let w = ws.order[idx];
        let dw = ws.dist[w];
        if dw == 0 {
            continue;
        }
        let coeff = (1.0 + ws.delta[w]) / ws.sigma[w];
        for (slot, &v) in g.neighbors(w).iter().enumerate() {
            if ws.dist[v] + 1 == dw {
                let c = ws.sigma[v] * coeff;
                arcs[offsets[w] + slot] += c;
                ws.delta[v] += c;
            }
        }
        nodes[w] += ws.delta[w];
    }
}

/// Brandes accumulation from the given sources (processed in the given order).
fn accumulate(g: &Graph, sources: &[NodeId]) -> (Vec<f64>, Vec<f64>) {
    let offsets = arc_offsets(g);
    let n = g.id_bound();
    let arcs_len = offsets[n];
    let partials: Vec<(Vec<f64>, Vec<f64>)> = sources
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut ws = Workspace::new(n);
            let mut nodes = vec![0.0; n];
            let mut arcs = vec![0.0; arcs_len];
            for &s in chunk {
                accumulate_source(g, &offsets, s, &mut ws, &mut nodes, &mut arcs);
            }
            (nodes, arcs)
        })
        .collect();
    // Fixed-order reduction keeps results independent of thread scheduling.
    let mut nodes = vec![0.0; n];
    let mut arcs = vec![0.0; arcs_len];
    for (pn, pa) in partials {
        nodes.iter_mut().zip(pn).for_each(|(a, b)| *a += b);
        arcs.iter_mut().zip(pa).for_each(|(a, b)| *a += b);
    }
    (nodes, arcs)
}

fn fold_arcs(g: &Graph, arcs: &[f64], scale: f64) -> Vec<((NodeId, NodeId), f64)> {
    let offsets = arc_offsets(g);
    g.edges()
        .map(|(u, v)| {
            let iu = g.neighbors(u).binary_search(&v).expect("edge present");
            let iv = g.neighbors(v).binary_search(&u).expect("edge present");
            ((u, v), scale * (arcs[offsets[u] + iu] + arcs[offsets[v] + iv]))
        })
        .collect()
}

fn scores_from_sources(g: &Graph, sources: &[NodeId], scale: f64) -> BetweennessScores {
    let (mut nodes, arcs) = accumulate(g, sources);
    if scale != 1.0 {
        nodes.iter_mut().for_each(|x| *x *= scale);
    }
    let edges = fold_arcs(g, &arcs, scale);
    BetweennessScores { nodes, edges }
}

/// Exact betweenness from every present node.
pub fn betweenness(g: &Graph) -> BetweennessScores {
    let sources: Vec<NodeId> = g.nodes().collect();
    scores_from_sources(g, &sources, 1.0)
}

/// Betweenness estimated from `k` uniformly sampled source pivots, rescaled by `n / k`.
/// With `k = n` every node is a pivot and the result equals [`betweenness`].
pub fn sampled_betweenness(g: &Graph, k: usize, seed: u64) -> Result<BetweennessScores> {
    let n = g.node_count();
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!("pivot count k = {k} must lie in 1..={n}")));
    }
    let present: Vec<NodeId> = g.nodes().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = rand::seq::index::sample(&mut rng, n, k).into_vec();
    picks.sort_unstable();
    let sources: Vec<NodeId> = picks.into_iter().map(|i| present[i]).collect();
    Ok(scores_from_sources(g, &sources, n as f64 / k as f64))
}

/// Sum of node betweenness divided by `n`.
pub fn average_vertex_betweenness(g: &Graph) -> Result<f64> {
    if g.node_count() < 3 {
        return Err(Error::Domain("average vertex betweenness needs at least 3 nodes".into()));
    }
    Ok(betweenness(g).node_total() / g.node_count() as f64)
}

/// Sum of edge betweenness divided by `m`.
pub fn average_edge_betweenness(g: &Graph) -> Result<f64> {
    if g.edge_count() < 1 {
        return Err(Error::Domain("average edge betweenness needs at least one edge".into()));
    }
    Ok(betweenness(g).edge_total() / g.edge_count() as f64)
}

pub fn approx_average_vertex_betweenness(g: &Graph, k: usize, seed: u64) -> Result<f64> {
    if g.node_count() < 3 {
        return Err(Error::Domain("average vertex betweenness needs at least 3 nodes".into()));
    }
    Ok(sampled_betweenness(g, k, seed)?.node_total() / g.node_count() as f64)
}

pub fn approx_average_edge_betweenness(g: &Graph, k: usize, seed: u64) -> Result<f64> {
    if g.edge_count() < 1 {
        return Err(Error::Domain("average edge betweenness needs at least one edge".into()));
    }
    Ok(sampled_betweenness(g, k, seed)?.edge_total() / g.edge_count() as f64)
}

/// A distance statistic and whether it was restricted to the largest component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceSummary {
    pub value: f64,
    pub restricted_to_lcc: bool,
}

fn lcc_distance_stats(g: &Graph) -> Result<(usize, f64, bool)> {
    if g.node_count() < 2 {
        return Err(Error::Domain("distance measures need at least 2 nodes".into()));
    }
    let lcc = largest_component(g);
    if lcc.len() < 2 {
        return Err(Error::Domain("largest component has a single node".into()));
    }
    let restricted = lcc.len() < g.node_count();
    let (max, sum) = lcc
        .par_iter()
        .map(|&s| {
            let d = bfs_distances(g, s).expect("source present");
            lcc.iter().fold((0usize, 0usize), |(mx, sm), &t| (mx.max(d[t]), sm + d[t]))
        })
        .reduce(|| (0, 0), |a, b| (a.0.max(b.0), a.1 + b.1));
    let pairs = (lcc.len() * (lcc.len() - 1)) as f64;
    Ok((max, sum as f64 / pairs, restricted))
}

/// Longest shortest path within the largest connected component.
pub fn diameter(g: &Graph) -> Result<DistanceSummary> {
    let (max, _, restricted) = lcc_distance_stats(g)?;
    Ok(DistanceSummary { value: max as f64, restricted_to_lcc: restricted })
}

/// Mean shortest-path length over ordered pairs of the largest connected component.
pub fn average_distance(g: &Graph) -> Result<DistanceSummary> {
    let (_, mean, restricted) = lcc_distance_stats(g)?;
    Ok(DistanceSummary { value: mean, restricted_to_lcc: restricted })
}

/// Global efficiency: mean of `1/d(s,t)` over ordered pairs, unreachable pairs counting 0.
pub fn average_inverse_distance(g: &Graph) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::Domain("distance measures need at least 2 nodes".into()));
    }
    let nodes: Vec<NodeId> = g.nodes().collect();
    let partial: Vec<f64> = nodes
        .par_chunks(CHUNK)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&s| {
                    let d = bfs_distances(g, s).expect("source present");
                    nodes
                        .iter()
                        .filter(|&&t| t != s && d[t] != UNREACHABLE)
                        .map(|&t| 1.0 / d[t] as f64)
                        .sum::<f64>()
                })
                .sum()
        })
        .collect();
    Ok(partial.iter().sum::<f64>() / (n * (n - 1)) as f64)
}

/// Transitivity: `3 × triangles / connected triples`, 0 when there are no triples.
pub fn global_clustering_coefficient(g: &Graph) -> f64 {
    let mut triangles = 0usize;
    for (u, v) in g.edges() {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i] > v {
                        triangles += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    let triples: usize = g.nodes().map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
    if triples == 0 {
        0.0
    } else {
        3.0 * triangles as f64 / triples as f64
    }
}
