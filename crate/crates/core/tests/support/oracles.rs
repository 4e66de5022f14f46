//! Slow, independent reference computations for small graphs.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use nalgebra::DMatrix;
use netrobust::Graph;

fn hop_distances(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.id_bound()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(dist[x].unwrap() + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

fn extend_paths(g: &Graph, dist: &[Option<usize>], t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let x = *path.last().unwrap();
    if x == t {
        out.push(path.clone());
        return;
    }
    for &y in g.neighbors(x) {
        if dist[y] == Some(dist[x].unwrap() + 1) && dist[y] <= dist[t] {
            path.push(y);
            extend_paths(g, dist, t, path, out);
            path.pop();
        }
    }
}

/// Every shortest path from `s` to `t`, listed explicitly.
pub fn all_shortest_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let dist = hop_distances(g, s);
    let mut out = Vec::new();
    if dist[t].is_some() {
        extend_paths(g, &dist, t, &mut vec![s], &mut out);
    }
    out
}

/// Node and edge betweenness over ordered pairs by path enumeration.
pub fn brute_betweenness(g: &Graph) -> (Vec<f64>, HashMap<(usize, usize), f64>) {
    let nodes: Vec<usize> = g.nodes().collect();
    let mut vb = vec![0.0; g.id_bound()];
    let mut eb: HashMap<(usize, usize), f64> = g.edges().map(|e| (e, 0.0)).collect();
    for &s in &nodes {
        for &t in &nodes {
            if s == t {
                continue;
            }
            let paths = all_shortest_paths(g, s, t);
            let share = 1.0 / paths.len().max(1) as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    vb[v] += share;
                }
                for w in p.windows(2) {
                    *eb.get_mut(&(w[0].min(w[1]), w[0].max(w[1]))).unwrap() += share;
                }
            }
        }
    }
    (vb, eb)
}

pub fn brute_average_vertex_betweenness(g: &Graph) -> f64 {
    brute_betweenness(g).0.iter().sum::<f64>() / g.node_count() as f64
}

pub fn brute_average_edge_betweenness(g: &Graph) -> f64 {
    brute_betweenness(g).1.values().sum::<f64>() / g.edge_count() as f64
}

/// Laplacian assembled edge by edge over a dense relabeling of the present nodes.
pub fn dense_laplacian(g: &Graph) -> DMatrix<f64> {
    let nodes: Vec<usize> = g.nodes().collect();
    let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = nodes.len();
    let mut l = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        let (a, b) = (pos[&u], pos[&v]);
        l[(a, a)] += 1.0;
        l[(b, b)] += 1.0;
        l[(a, b)] -= 1.0;
        l[(b, a)] -= 1.0;
    }
    l
}

/// `n · trace(L⁺)` with the pseudoinverse from an SVD.
pub fn pinv_effective_resistance(g: &Graph) -> f64 {
    let l = dense_laplacian(g);
    let n = l.nrows() as f64;
    let pinv = l.pseudo_inverse(1e-10).unwrap();
    n * pinv.trace()
}

/// Determinant of the Laplacian with its first row and column deleted.
pub fn reduced_determinant_spanning_trees(g: &Graph) -> f64 {
    let l = dense_laplacian(g);
    let n = l.nrows();
    if n == 1 {
        return 1.0;
    }
    l.view((1, 1), (n - 1, n - 1)).into_owned().determinant()
}
