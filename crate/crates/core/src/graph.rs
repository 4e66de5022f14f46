//! Undirected, unweighted simple graphs with stable dense node ids.
//!
//! Node ids are `0..id_bound()`. Removing a node keeps its id slot reserved
//! (the node is marked absent and loses its edges), so ids recorded before a
//! perturbation stay valid afterwards. `compact()` produces a dense copy when
//! an algorithm needs contiguous indices.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Distance sentinel for unreachable nodes in [`bfs_distances`].
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    present: Vec<bool>,
    node_count: usize,
    edge_count: usize,
}

impl Graph {
    /// `n` isolated nodes.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            present: vec![true; n],
            node_count: n,
            edge_count: 0,
        }
    }

    /// Builds a simple graph, silently dropping self-loops and duplicate edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Precondition(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            if u != v {
                g.adj[u].push(v);
                g.adj[v].push(u);
            }
        }
        let mut twice_m = 0;
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        g.edge_count = twice_m / 2;
        Ok(g)
    }

    /// Size of the id space, including removed nodes.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    /// Number of present nodes.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.node_count == 0
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        v < self.present.len() && self.present[v]
    }

    /// True when ids are exactly `0..node_count()`.
    pub fn is_dense(&self) -> bool {
        self.node_count == self.adj.len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted neighbor list. Empty for removed or out-of-range ids.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        self.adj.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Present node ids in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter_map(|(v, &p)| p.then_some(v))
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    fn require_node(&self, v: NodeId) -> Result<()> {
        if self.contains_node(v) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("node {v} does not exist")))
        }
    }

    pub fn remove_node(&self, v: NodeId) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_node_mut(v)?;
        Ok(g)
    }

    pub fn remove_edge(&self, u: NodeId, v: NodeId) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_edge_mut(u, v)?;
        Ok(g)
    }

    pub fn add_edge(&self, u: NodeId, v: NodeId) -> Result<Graph> {
        let mut g = self.clone();
        g.add_edge_mut(u, v)?;
        Ok(g)
    }

    /// Removes `v` and all incident edges; the id slot stays reserved.
    pub fn remove_node_mut(&mut self, v: NodeId) -> Result<()> {
        self.require_node(v)?;
        let nbrs = std::mem::take(&mut self.adj[v]);
        for &u in &nbrs {
            if let Ok(pos) = self.adj[u].binary_search(&v) {
                self.adj[u].remove(pos);
            }
        }
        self.edge_count -= nbrs.len();
        self.present[v] = false;
        self.node_count -= 1;
        Ok(())
    }

    /// Re-inserts a previously removed node as an isolated node.
    pub fn restore_node_mut(&mut self, v: NodeId) -> Result<()> {
        if v >= self.present.len() {
            return Err(Error::Precondition(format!("node {v} is outside the id space")));
        }
        if self.present[v] {
            return Err(Error::Precondition(format!("node {v} is already present")));
        }
        self.present[v] = true;
        self.node_count += 1;
        Ok(())
    }

    pub fn remove_edge_mut(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.require_node(u)?;
        self.require_node(v)?;
        let pos_u = self.adj[u]
            .binary_search(&v)
            .map_err(|_| Error::Precondition(format!("edge ({u}, {v}) does not exist")))?;
        self.adj[u].remove(pos_u);
        if let Ok(pos_v) = self.adj[v].binary_search(&u) {
            self.adj[v].remove(pos_v);
        }
        self.edge_count -= 1;
        Ok(())
    }

    pub fn add_edge_mut(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.require_node(u)?;
        self.require_node(v)?;
        if u == v {
            return Err(Error::Precondition(format!("self-loop on node {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::Precondition(format!("edge ({u}, {v}) already exists"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos_v = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos_v, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    /// Dense copy of the present nodes; `map[i]` is the original id of compact node `i`.
    pub fn compact(&self) -> (Graph, Vec<NodeId>) {
        let map: Vec<NodeId> = self.nodes().collect();
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| self.adj[v].iter().map(|&u| index[u]).collect())
            .collect();
        let g = Graph {
            adj,
            present: vec![true; map.len()],
            node_count: map.len(),
            edge_count: self.edge_count,
        };
        (g, map)
    }

    /// Subgraph induced by `keep` (which must list present nodes), compacted to dense ids.
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> Graph {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = keep.iter().flat_map(|&v| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter(move |&&u| index[u] != usize::MAX)
                .map(move |&u| (index[v], index[u]))
        });
        Graph::from_edges(keep.len(), edges.collect::<Vec<_>>()).expect("indices are in range")
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }
}

/// Connected components of the present nodes, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<NodeId>> {
    let mut seen = vec![false; g.id_bound()];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.nodes() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Nodes of the largest connected component (lowest-id component on ties).
pub fn largest_component(g: &Graph) -> Vec<NodeId> {
    connected_components(g)
        .into_iter()
        .fold(Vec::new(), |best, c| if c.len() > best.len() { c } else { best })
}

/// `|largest component| / n` over the present nodes; 0 for an empty graph.
pub fn largest_connected_component_fraction(g: &Graph) -> f64 {
    largest_connected_component_fraction_of(g, g.node_count())
}

/// `|largest component| / baseline`, used when curves are normalized by the
/// node count of an unperturbed graph.
pub fn largest_connected_component_fraction_of(g: &Graph, baseline: usize) -> f64 {
    if baseline == 0 {
        return 0.0;
    }
    largest_component(g).len() as f64 / baseline as f64
}

/// Hop distances from `source`; unreachable and removed nodes hold [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, source: NodeId) -> Result<Vec<usize>> {
    if !g.contains_node(source) {
        return Err(Error::Precondition(format!("node {source} does not exist")));
    }
    let mut dist = vec![UNREACHABLE; g.id_bound()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if dist[u] == UNREACHABLE {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    Ok(dist)
}
