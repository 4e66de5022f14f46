//! Robustness measures respond monotonically to adding an edge.

use netrobust::generators::random_connected;
use netrobust::measures;
use netrobust::Graph;
use proptest::prelude::*;

fn absent_pair(g: &Graph, pick: usize) -> Option<(usize, usize)> {
    let n = g.node_count();
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    (!pairs.is_empty()).then(|| pairs[pick % pairs.len()])
}

fn slack(x: f64) -> f64 {
    1e-9 * x.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adding_an_edge_never_hurts(n in 4usize..=40, p in 0.02f64..0.4, seed in any::<u64>(), pick in any::<usize>()) {
        let g = random_connected(n, p, seed);
        let Some((u, v)) = absent_pair(&g, pick) else { return Ok(()) };
        let h = g.add_edge(u, v).unwrap();

        let (r0, r1) = (measures::effective_resistance(&g).unwrap(), measures::effective_resistance(&h).unwrap());
        prop_assert!(r1 < r0, "resistance {r0} -> {r1}");
        let (a0, a1) = (measures::algebraic_connectivity(&g).unwrap(), measures::algebraic_connectivity(&h).unwrap());
        prop_assert!(a1 >= a0 - slack(a0));
        let (c0, c1) = (measures::natural_connectivity(&g).unwrap(), measures::natural_connectivity(&h).unwrap());
        prop_assert!(c1 >= c0 - slack(c0));
        let (s0, s1) = (measures::spectral_radius(&g).unwrap(), measures::spectral_radius(&h).unwrap());
        prop_assert!(s1 >= s0 - slack(s0));
        let (t0, t1) = (measures::num_spanning_trees(&g).unwrap(), measures::num_spanning_trees(&h).unwrap());
        prop_assert!(t1.ln_value >= t0.ln_value - slack(t0.ln_value));
        let (d0, d1) = (measures::average_distance(&g).unwrap().value, measures::average_distance(&h).unwrap().value);
        prop_assert!(d1 <= d0 + slack(d0));
    }
}
