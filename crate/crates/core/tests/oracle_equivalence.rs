mod support;

use netrobust::generators::{complete, cycle, path, random_connected, star};
use netrobust::measures::{self, MeasureId, MeasureOptions};
use support::oracles::*;

#[test]
fn betweenness_matches_path_enumeration() {
    for seed in 0..50 {
        let n = 3 + seed as usize % 10;
        let g = random_connected(n, 0.3, seed);
        let (vb, eb) = brute_betweenness(&g);
        let fast = measures::betweenness(&g);
        for v in 0..n {
            assert!((fast.nodes[v] - vb[v]).abs() < 1e-9, "seed {seed} node {v}");
        }
        for (e, b) in &fast.edges {
            assert!((b - eb[e]).abs() < 1e-9, "seed {seed} edge {e:?}");
        }
        let avg_v = measures::average_vertex_betweenness(&g).unwrap();
        let avg_e = measures::average_edge_betweenness(&g).unwrap();
        assert!((avg_v - brute_average_vertex_betweenness(&g)).abs() < 1e-9);
        assert!((avg_e - brute_average_edge_betweenness(&g)).abs() < 1e-9);
    }
}

#[test]
fn betweenness_on_disconnected_graphs() {
    let g = netrobust::generators::gnp(12, 0.15, 3);
    let (vb, _) = brute_betweenness(&g);
    let fast = measures::betweenness(&g);
    for v in 0..12 {
        assert!((fast.nodes[v] - vb[v]).abs() < 1e-9);
    }
}

#[test]
fn effective_resistance_matches_pseudoinverse() {
    for seed in 0..20 {
        let n = 2 + seed as usize * 48 / 19;
        let g = random_connected(n, 0.1, 100 + seed);
        let r = measures::effective_resistance(&g).unwrap();
        let oracle = pinv_effective_resistance(&g);
        assert!((r - oracle).abs() < 1e-6 * oracle.max(1.0), "seed {seed}: {r} vs {oracle}");
    }
    assert!((measures::effective_resistance(&complete(3)).unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn spanning_trees_match_reduced_determinant() {
    for seed in 0..20 {
        let n = 2 + seed as usize * 28 / 19;
        let g = random_connected(n, 0.2, 200 + seed);
        let t = measures::num_spanning_trees(&g).unwrap().value;
        let oracle = reduced_determinant_spanning_trees(&g);
        assert!((t - oracle).abs() <= 1e-6 * oracle, "seed {seed}: {t} vs {oracle}");
    }
    assert_eq!(measures::num_spanning_trees(&path(6)).unwrap().value.round(), 1.0);
    assert_eq!(measures::num_spanning_trees(&star(5)).unwrap().value.round(), 1.0);
    assert!((measures::num_spanning_trees(&cycle(3)).unwrap().value - 3.0).abs() < 1e-9);
    assert!((measures::num_spanning_trees(&complete(4)).unwrap().value - 16.0).abs() < 1e-9);
}

#[test]
fn approximations_are_exact_at_full_k() {
    for seed in 0..10 {
        let n = 10 + seed as usize * 9;
        let g = random_connected(n, 0.08, 300 + seed);
        for approx in MeasureId::ALL.iter().filter(|m| !m.is_exact()) {
            let opts = MeasureOptions { k: Some(n), seed, baseline_nodes: None };
            let a = measures::evaluate(&g, *approx, &opts).unwrap().value;
            let e = measures::evaluate(&g, approx.exact_counterpart(), &opts).unwrap().value;
            let tol = if *approx == MeasureId::ApproxSpanningTrees { 1e-9 * e.abs() } else { 1e-9 };
            assert!((a - e).abs() <= tol, "{approx} n={n}: {a} vs {e}");
        }
    }
}
