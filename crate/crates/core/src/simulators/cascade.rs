//! Load-redistribution cascading failures.
//!
//! Capacities follow min-max normalized betweenness with a floor, each node
//! starts at a random fraction of its capacity, and the load of every failed
//! node is split equally among its live neighbors. Nodes whose load exceeds
//! their capacity scaled by `1 + redundancy` fail in the next round.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::measures::betweenness;

/// Capacity of the least central node.
pub const CAPACITY_FLOOR: f64 = 0.01;
pub const DEFAULT_DEFENSE_BOOST: f64 = 0.5;
pub const DEFAULT_MAX_STEPS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeConfig {
    /// Upper bound of the initial load fraction.
    pub l_max: f64,
    pub redundancy: f64,
    pub attacked: Vec<NodeId>,
    pub defended: Vec<NodeId>,
    /// Defended capacities are multiplied by `1 + defense_boost`.
    pub defense_boost: f64,
    pub seed: u64,
    pub max_steps: usize,
}

impl CascadeConfig {
    pub fn new(l_max: f64, redundancy: f64, attacked: Vec<NodeId>, seed: u64) -> Self {
        CascadeConfig {
            l_max,
            redundancy,
            attacked,
            defended: Vec::new(),
            defense_boost: DEFAULT_DEFENSE_BOOST,
            seed,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.l_max > 0.0 && self.l_max <= 1.0) {
            return Err(Error::InvalidParameter(format!("l_max must lie in (0, 1], got {}", self.l_max)));
        }
        if !(0.0..=1.0).contains(&self.redundancy) {
            return Err(Error::InvalidParameter(format!("redundancy must lie in [0, 1], got {}", self.redundancy)));
        }
        if !(self.defense_boost >= 0.0 && self.defense_boost.is_finite()) {
            return Err(Error::InvalidParameter(format!("defense boost must be non-negative, got {}", self.defense_boost)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CascadeState {
    pub step: usize,
    /// Effective capacity per node id (redundancy and boosts applied).
    pub capacity: Vec<f64>,
    /// Absolute load per node id; zero for failed and absent nodes.
    pub load: Vec<f64>,
    /// Failed node ids, ascending.
    pub failed: Vec<NodeId>,
}

impl CascadeState {
    pub fn total_live_load(&self) -> f64 {
        self.load.iter().sum()
    }
}

/// Betweenness scaled to `[CAPACITY_FLOOR, 1]`; all ones when betweenness is constant.
pub fn base_capacities(g: &Graph) -> Vec<f64> {
    let b = betweenness(g).nodes;
    let present: Vec<NodeId> = g.nodes().collect();
    let lo = present.iter().map(|&v| b[v]).fold(f64::INFINITY, f64::min);
    let hi = present.iter().map(|&v| b[v]).fold(f64::NEG_INFINITY, f64::max);
    let mut c = vec![0.0; g.id_bound()];
    for &v in &present {
        c[v] = if hi > lo { CAPACITY_FLOOR + (1.0 - CAPACITY_FLOOR) * (b[v] - lo) / (hi - lo) } else { 1.0 };
    }
    c
}

/// States from the initial failure of the attacked set until no further node fails.
pub fn run_cascade(g: &Graph, cfg: &CascadeConfig) -> Result<Vec<CascadeState>> {
    cfg.validate()?;
    for &v in cfg.attacked.iter().chain(&cfg.defended) {
        if !g.contains_node(v) {
            return Err(Error::Precondition(format!("node {v} is not in the graph")));
        }
    }
    let base = base_capacities(g);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut load = vec![0.0; g.id_bound()];
    for v in g.nodes() {
        load[v] = rng.random_range(0.0..cfg.l_max) * base[v];
    }
    let mut capacity: Vec<f64> = base.iter().map(|c| c * (1.0 + cfg.redundancy)).collect();
    for &v in &cfg.defended {
        capacity[v] *= 1.0 + cfg.defense_boost;
    }

    let mut failed = vec![false; g.id_bound()];
    let mut pending: Vec<(NodeId, f64)> = Vec::new();
    let fail = |v: NodeId, load: &mut [f64], failed: &mut [bool], pending: &mut Vec<(NodeId, f64)>| {
        failed[v] = true;
        pending.push((v, load[v]));
        load[v] = 0.0;
    };
    let mut attacked = cfg.attacked.clone();
    attacked.sort_unstable();
    attacked.dedup();
    for &v in &attacked {
        fail(v, &mut load, &mut failed, &mut pending);
    }
    let snapshot = |step: usize, load: &[f64], failed: &[bool]| CascadeState {
        step,
        capacity: capacity.clone(),
        load: load.to_vec(),
        failed: (0..failed.len()).filter(|&v| failed[v]).collect(),
    };
    let mut states = vec![snapshot(0, &load, &failed)];

    let mut step = 0;
    while !pending.is_empty() && step < cfg.max_steps {
        step += 1;
        for (v, l) in std::mem::take(&mut pending) {
            let live: Vec<NodeId> = g.neighbors(v).iter().copied().filter(|&w| !failed[w]).collect();
            if !live.is_empty() {
                let share = l / live.len() as f64;
                for w in live {
                    load[w] += share;
                }
            }
        }
        let over: Vec<NodeId> = g.nodes().filter(|&v| !failed[v] && load[v] > capacity[v]).collect();
        for v in over {
            fail(v, &mut load, &mut failed, &mut pending);
        }
        states.push(snapshot(step, &load, &failed));
    }
    Ok(states)
}

/// Fraction of present nodes failed in the last state.
pub fn final_failure_fraction(g: &Graph, states: &[CascadeState]) -> f64 {
    states.last().map_or(0.0, |s| s.failed.len() as f64 / g.node_count() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn capacities_follow_betweenness() {
        let c = base_capacities(&path(5));
        assert_eq!(c[2], 1.0);
        assert_eq!(c[0], CAPACITY_FLOOR);
        assert!(c[1] > c[0] && c[1] < c[2]);
        assert!(base_capacities(&cycle(5)).iter().all(|&x| x == 1.0));
    }

    #[test]
    fn no_attack_no_failures() {
        let g = grid(5, 5);
        let states = run_cascade(&g, &CascadeConfig::new(0.9, 0.0, vec![], 1)).unwrap();
        assert_eq!(states.len(), 1);
        assert!(states[0].failed.is_empty());
    }

    #[test]
    fn tiny_load_stays_local() {
        let g = grid(6, 6);
        let states = run_cascade(&g, &CascadeConfig::new(1e-9, 1.0, vec![14, 15], 2)).unwrap();
        assert_eq!(states.last().unwrap().failed, vec![14, 15]);
    }

    #[test]
    fn path_hand_trace() {
        // Path 0-1-2 with betweenness [0, 2, 0]: capacities [0.01, 1, 0.01].
        let g = path(3);
        let cfg = CascadeConfig::new(0.5, 0.0, vec![1], 4);
        let states = run_cascade(&g, &cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..0.5)).collect();
        let load1 = l[1];
        // Node 1's load splits over both leaves, far above their 0.01 capacity.
        assert!(load1 / 2.0 + l[0] * 0.01 > 0.01);
        assert_eq!(states[1].failed, vec![0, 1, 2]);
        // Leaves fail with no live neighbor left; their load is dropped.
        assert_eq!(states.last().unwrap().total_live_load(), 0.0);
        assert_eq!(states.len(), 3);
    }

    #[test]
    fn invariants_hold() {
        let g = grid_with_shortcuts(10, 10, 10, 3).unwrap();
        for seed in 0..5 {
            let mut cfg = CascadeConfig::new(0.8, 0.2, vec![44, 45, 54, 55], seed);
            cfg.defended = vec![34, 35];
            let states = run_cascade(&g, &cfg).unwrap();
            for s in &states {
                assert!(s.failed.iter().all(|&v| s.load[v] == 0.0));
            }
            let last = states.last().unwrap();
            assert!(g.nodes().all(|v| last.failed.contains(&v) || last.load[v] <= last.capacity[v]));
            assert!(states.windows(2).all(|w| w[0].failed.len() <= w[1].failed.len()));
            assert_eq!(states, run_cascade(&g, &cfg).unwrap());
        }
    }

    #[test]
    fn invalid_config() {
        let g = path(3);
        assert!(run_cascade(&g, &CascadeConfig::new(0.0, 0.5, vec![0], 0)).is_err());
        assert!(run_cascade(&g, &CascadeConfig::new(0.5, 1.5, vec![0], 0)).is_err());
        assert!(run_cascade(&g, &CascadeConfig::new(0.5, 0.5, vec![9], 0)).is_err());
    }
}
