//! Synthetic graph families.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Parameters of the clustered scale-free (preferential attachment with
/// triangle closing) generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub n: usize,
    pub m_attach: usize,
    pub p_triangle: f64,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn new(n: usize, m_attach: usize, p_triangle: f64, seed: u64) -> Self {
        GeneratorParams { n, m_attach, p_triangle, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_attach < 1 {
            return Err(Error::InvalidParameter("m_attach must be at least 1".into()));
        }
        if self.n < self.m_attach + 1 {
            return Err(Error::InvalidParameter(format!(
                "n = {} must be at least m_attach + 1 = {}",
                self.n,
                self.m_attach + 1
            )));
        }
        if !(0.0..=1.0).contains(&self.p_triangle) {
            return Err(Error::InvalidParameter(format!(
                "p_triangle = {} must lie in [0, 1]",
                self.p_triangle
            )));
        }
        Ok(())
    }
}

/// Holme–Kim growth: start from `m_attach` isolated nodes; every new node adds
/// `m_attach` edges, the first to a preferentially chosen target and each
/// later one either closing a triangle through the last target (probability
/// `p_triangle`) or going to the next preferential target.
///
/// Produces exactly `(n - m_attach) * m_attach` edges and a connected graph.
pub fn generate_clustered_scale_free(params: GeneratorParams) -> Result<Graph> {
    params.validate()?;
    let GeneratorParams { n, m_attach: m, p_triangle, seed } = params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    // Degree-weighted urn: each node appears once per incident edge end
    // (plus once for every initial node).
    let mut urn: Vec<NodeId> = (0..m).collect();

    for source in m..n {
        let mut targets = Vec::with_capacity(m);
        while targets.len() < m {
            let x = *urn.choose(&mut rng).expect("urn is never empty");
            if !targets.contains(&x) {
                targets.push(x);
            }
        }
        let mut target = targets.pop().expect("m >= 1");
        g.add_edge_mut(source, target)?;
        urn.push(target);
        let mut count = 1;
        while count < m {
            if rng.random::<f64>() < p_triangle {
                let closing: Vec<NodeId> = g
                    .neighbors(target)
                    .iter()
                    .copied()
                    .filter(|&w| w != source && !g.has_edge(source, w))
                    .collect();
                if let Some(&w) = closing.choose(&mut rng) {
                    g.add_edge_mut(source, w)?;
                    urn.push(w);
                    count += 1;
                    continue;
                }
            }
            // Fall back to the remaining preferential targets, skipping ones a
            // triangle step already connected.
            loop {
                target = targets.pop().expect("enough distinct targets remain");
                if !g.has_edge(source, target) {
                    break;
                }
            }
            g.add_edge_mut(source, target)?;
            urn.push(target);
            count += 1;
        }
        urn.extend(std::iter::repeat_n(source, m));
    }
    Ok(g)
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges.collect::<Vec<_>>()).expect("valid ids")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)).collect::<Vec<_>>()).expect("valid ids")
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    if n > 2 {
        edges.push((n - 1, 0));
    }
    Graph::from_edges(n, edges).expect("valid ids")
}

/// Hub `0` joined to leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)).collect::<Vec<_>>()).expect("valid ids")
}

/// Two copies of `K_k` (nodes `0..k` and `k..2k`) joined by the edge `(k-1, k)`.
pub fn barbell(k: usize) -> Graph {
    let mut edges = Vec::new();
    for offset in [0, k] {
        for u in 0..k {
            for v in u + 1..k {
                edges.push((offset + u, offset + v));
            }
        }
    }
    if k > 0 {
        edges.push((k - 1, k));
    }
    Graph::from_edges(2 * k, edges).expect("valid ids")
}

/// `rows × cols` lattice with 4-neighbor connectivity; node `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).expect("valid ids")
}

/// Lattice plus `shortcuts` random extra edges between nodes at lattice
/// distance ≥ 2, resembling the meshed-but-local layout of infrastructure grids.
pub fn grid_with_shortcuts(rows: usize, cols: usize, shortcuts: usize, seed: u64) -> Result<Graph> {
    let mut g = grid(rows, cols);
    let n = g.node_count();
    if n < 2 {
        return Ok(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    let mut tries = 0;
    while added < shortcuts {
        tries += 1;
        if tries > 100 * (shortcuts + 1) {
            return Err(Error::Infeasible { tries, what: "placing grid shortcuts".into() });
        }
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge_mut(u, v)?;
            added += 1;
        }
    }
    Ok(g)
}

/// Connected random graph: a uniformly random recursive tree plus each
/// remaining pair independently with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid ids")
}

/// Erdős–Rényi `G(n, p)`; may be disconnected.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid ids")
}
