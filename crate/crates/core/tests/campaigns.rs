//! Attack, defense and simulation runs composed end to end.

use netrobust::attacks::{run_attack, AttackStrategy, CurveConfig, Selector, TargetKind};
use netrobust::defenses::{apply_heuristic_defense, netshield_select, DefenseKind, DefenseStrategy};
use netrobust::generators::{generate_clustered_scale_free, random_connected, GeneratorParams};
use netrobust::measures::{spectral_radius, MeasureId};
use netrobust::simulators::{run_sis, EpidemicConfig, InitialInfection};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heuristic_defenses_keep_the_graph_simple(seed in 0u64..500, budget in 1usize..12, which in 0usize..5) {
        let g = random_connected(20, 0.12, seed);
        let kind = DefenseKind::HEURISTICS[which];
        let (h, log) = apply_heuristic_defense(&g, &DefenseStrategy::new(kind, budget, seed)).unwrap();
        prop_assert_eq!(log.len(), budget);
        prop_assert_eq!(h.node_count(), g.node_count());
        for (u, v) in h.edges() {
            prop_assert!(u < v);
        }
        let expected = if kind.is_addition() { g.edge_count() + budget } else { g.edge_count() };
        prop_assert_eq!(h.edge_count(), expected);
    }

    #[test]
    fn netshield_removal_lowers_spectral_radius(seed in 0u64..500, k in 1usize..6) {
        let g = random_connected(25, 0.1, seed);
        let m = netshield_select(&g, k).unwrap();
        let mut rest = g.clone();
        for &v in &m.nodes {
            rest.remove_node_mut(v).unwrap();
        }
        let after = if rest.edge_count() == 0 { 0.0 } else { spectral_radius(&rest).unwrap() };
        prop_assert!(after < spectral_radius(&g).unwrap());
        prop_assert!((m.eigendrop - (spectral_radius(&g).unwrap() - after)).abs() < 1e-8);
        prop_assert!(m.shield_value >= 0.0);
    }

    #[test]
    fn edge_attack_curves_are_deterministic(seed in 0u64..200, which in 0usize..5) {
        let g = random_connected(30, 0.1, seed);
        let s = AttackStrategy { target_kind: TargetKind::Edge, selector: Selector::ALL[which], seed };
        let a = run_attack(&g, &s, 10, &CurveConfig::lcc()).unwrap();
        prop_assert_eq!(&a, &run_attack(&g, &s, 10, &CurveConfig::lcc()).unwrap());
        prop_assert!(a.values().windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn attack_curve_with_spectral_measure() {
    let g = generate_clustered_scale_free(GeneratorParams::new(120, 2, 0.3, 5)).unwrap();
    let trace = run_attack(
        &g,
        &AttackStrategy::node(Selector::InitialDegree, 0),
        10,
        &CurveConfig::new(MeasureId::SpectralRadius),
    )
    .unwrap();
    let v = trace.values();
    assert!(v.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{v:?}");
}

#[test]
fn monitoring_hubs_slows_spreading() {
    let g = generate_clustered_scale_free(GeneratorParams::new(200, 2, 0.3, 8)).unwrap();
    let shield = netshield_select(&g, 10).unwrap().nodes;
    let lambda = spectral_radius(&g).unwrap();
    let beta = 4.0 * 0.1 / lambda;
    let mean = |monitored: &[usize]| {
        (0..8u64)
            .map(|seed| {
                let mut cfg = EpidemicConfig::new(beta, 0.1, 1500, InitialInfection::Fraction(0.1), seed);
                cfg.monitored = monitored.to_vec();
                run_sis(&g, &cfg).unwrap().tail_mean_fraction(150)
            })
            .sum::<f64>()
            / 8.0
    };
    assert!(mean(&shield) < mean(&[]));
}
