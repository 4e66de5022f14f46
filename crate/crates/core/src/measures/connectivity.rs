//! Vertex and edge connectivity through unit-capacity max-flow.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

const INF: u32 = u32::MAX / 2;

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    cap: u32,
}

/// Residual network with paired arcs (`i ^ 1` is the reverse of `i`).
struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), out: vec![Vec::new(); n] }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// Edmonds–Karp, stopping early once `limit` units are routed.
    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let n = self.out.len();
        let mut flow = 0;
        let mut via = vec![usize::MAX; n];
        while flow < limit {
            via.iter_mut().for_each(|x| *x = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(v) = queue.pop_front() {
                for &a in &self.out[v] {
                    let Arc { to, cap } = self.arcs[a];
                    if cap > 0 && to != s && via[to] == usize::MAX {
                        via[to] = a;
                        if to == t {
                            reached = true;
                            break;
                        }
                        queue.push_back(to);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut push = u32::MAX;
            let mut v = t;
            while v != s {
                let a = via[v];
                push = push.min(self.arcs[a].cap);
                v = self.arcs[a ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.arcs[a].cap -= push;
                self.arcs[a ^ 1].cap += push;
                v = self.arcs[a ^ 1].to;
            }
            flow += push;
        }
        flow
    }
}

/// Maximum number of internally vertex-disjoint paths between non-adjacent `s` and `t`.
fn local_vertex_connectivity(g: &Graph, s: usize, t: usize, limit: u32) -> u32 {
    let n = g.id_bound();
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { INF } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
    }
    for (u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, INF);
        net.add_arc(2 * v + 1, 2 * u, INF);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

fn local_edge_connectivity(g: &Graph, s: usize, t: usize, limit: u32) -> u32 {
    let mut net = FlowNetwork::new(g.id_bound());
    for (u, v) in g.edges() {
        net.add_arc(u, v, 1);
        net.add_arc(v, u, 1);
    }
    net.max_flow(s, t, limit)
}

/// Size of a minimum vertex cut; `n − 1` for complete graphs, 0 when disconnected.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let (g, _) = g.compact();
    let n = g.node_count();
    if n < 2 {
        return Err(Error::Domain("vertex connectivity needs at least 2 nodes".into()));
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let min_degree = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    let mut best = min_degree.min(n - 1);
    // A minimum separator misses one of the first best+1 nodes; that node and
    // some later node sit on opposite sides of it.
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            let k = local_vertex_connectivity(&g, i, j, best as u32) as usize;
            best = best.min(k);
        }
        i += 1;
    }
    Ok(best)
}

/// Size of a minimum edge cut; 0 when disconnected.
pub fn edge_connectivity(g: &Graph) -> Result<usize> {
    let (g, _) = g.compact();
    let n = g.node_count();
    if n < 2 {
        return Err(Error::Domain("edge connectivity needs at least 2 nodes".into()));
    }
    let mut best = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    for t in 1..n {
        if best == 0 {
            break;
        }
        best = best.min(local_edge_connectivity(&g, 0, t, best as u32) as usize);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn known_connectivities() {
        assert_eq!(vertex_connectivity(&complete(4)).unwrap(), 3);
        assert_eq!(edge_connectivity(&complete(4)).unwrap(), 3);
        assert_eq!(vertex_connectivity(&path(5)).unwrap(), 1);
        assert_eq!(edge_connectivity(&path(5)).unwrap(), 1);
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(vertex_connectivity(&two).unwrap(), 0);
        assert_eq!(edge_connectivity(&two).unwrap(), 0);
        assert_eq!(vertex_connectivity(&cycle(6)).unwrap(), 2);
        assert_eq!(edge_connectivity(&cycle(6)).unwrap(), 2);
        assert!(vertex_connectivity(&Graph::new(1)).is_err());
    }

    #[test]
    fn bowtie_has_cut_vertex_but_two_edge_connected() {
        // Two triangles sharing node 2.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(vertex_connectivity(&g).unwrap(), 1);
        assert_eq!(edge_connectivity(&g).unwrap(), 2);
    }

    /// Smallest vertex set whose removal disconnects (or trivializes) the graph, by enumeration.
    fn brute_vertex_connectivity(g: &Graph) -> usize {
        let n = g.node_count();
        for size in 0..n - 1 {
            let mut found = false;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let mut h = g.clone();
                for v in 0..n {
                    if mask & (1 << v) != 0 {
                        h.remove_node_mut(v).unwrap();
                    }
                }
                if !h.is_connected() {
                    found = true;
                    break;
                }
            }
            if found {
                return size;
            }
        }
        n - 1
    }

    fn brute_edge_connectivity(g: &Graph) -> usize {
        let edges: Vec<_> = g.edges().collect();
        for size in 0..=edges.len() {
            for mask in 0u64..(1 << edges.len()) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let mut h = g.clone();
                for (i, &(u, v)) in edges.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        h.remove_edge_mut(u, v).unwrap();
                    }
                }
                if !h.is_connected() {
                    return size;
                }
            }
        }
        edges.len()
    }

    #[test]
    fn matches_enumeration_on_small_graphs() {
        for seed in 0..30 {
            let n = 4 + (seed as usize % 5);
            let g = gnp(n, 0.55, seed);
            assert_eq!(vertex_connectivity(&g).unwrap(), brute_vertex_connectivity(&g), "seed {seed}");
            if g.edge_count() <= 16 {
                assert_eq!(edge_connectivity(&g).unwrap(), brute_edge_connectivity(&g), "seed {seed}");
            }
        }
    }
}
