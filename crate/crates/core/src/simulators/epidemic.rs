//! Discrete-time SIS and SIR spreading.
//!
//! Each step first lets every infected node try to infect each susceptible
//! neighbor with probability `beta`, then lets every node that was infected
//! before the step heal with probability `delta`. Monitored nodes are removed
//! before the run and never take part.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::spectral::leading_adjacency_pair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpidemicModel {
    Sis,
    Sir,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialInfection {
    Nodes(Vec<NodeId>),
    /// Fraction of the non-monitored population, at least one node.
    Fraction(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpidemicConfig {
    pub beta: f64,
    pub delta: f64,
    pub steps: usize,
    pub initially_infected: InitialInfection,
    pub monitored: Vec<NodeId>,
    pub seed: u64,
}

pub type SisConfig = EpidemicConfig;
pub type SirConfig = EpidemicConfig;

impl EpidemicConfig {
    pub fn new(beta: f64, delta: f64, steps: usize, initially_infected: InitialInfection, seed: u64) -> Self {
        EpidemicConfig { beta, delta, steps, initially_infected, monitored: Vec::new(), seed }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::InvalidParameter(format!("beta must lie in [0, 1], got {}", self.beta)));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1], got {}", self.delta)));
        }
        if let InitialInfection::Fraction(c) = self.initially_infected {
            if !(c > 0.0 && c <= 1.0) {
                return Err(Error::InvalidParameter(format!("initial fraction must lie in (0, 1], got {c}")));
            }
        }
        Ok(())
    }
}

/// `λ₁·β/δ`; spreading dies out when this is below 1.
pub fn effective_strength(g: &Graph, beta: f64, delta: f64) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if delta <= 0.0 {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    Ok(spectral_radius_or_zero(g)? * beta / delta)
}

pub(crate) fn spectral_radius_or_zero(g: &Graph) -> Result<f64> {
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    Ok(leading_adjacency_pair(g)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationTrace {
    pub model: EpidemicModel,
    /// Entry `t` holds the counts after `t` steps; entry 0 is the initial state.
    pub susceptible: Vec<usize>,
    pub infected: Vec<usize>,
    pub recovered: Vec<usize>,
    /// Non-monitored node count.
    pub population: usize,
    pub effective_strength: f64,
    pub config: EpidemicConfig,
}

impl SimulationTrace {
    pub fn len(&self) -> usize {
        self.infected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.infected.is_empty()
    }

    pub fn infected_fraction(&self) -> Vec<f64> {
        self.infected.iter().map(|&i| i as f64 / self.population as f64).collect()
    }

    /// Mean infected fraction over the last `window` recorded steps.
    pub fn tail_mean_fraction(&self, window: usize) -> f64 {
        let f = self.infected_fraction();
        let w = window.clamp(1, f.len());
        f[f.len() - w..].iter().sum::<f64>() / w as f64
    }

    pub fn died_out(&self) -> bool {
        self.infected.last() == Some(&0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Absent,
    Susceptible,
    Infected,
    Recovered,
}

fn simulate(g: &Graph, cfg: &EpidemicConfig, model: EpidemicModel) -> Result<SimulationTrace> {
    cfg.validate()?;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let strength = effective_strength(g, cfg.beta, cfg.delta)?;
    let mut state: Vec<State> =
        (0..g.id_bound()).map(|v| if g.contains_node(v) { State::Susceptible } else { State::Absent }).collect();
    for &v in &cfg.monitored {
        if !g.contains_node(v) {
            return Err(Error::Precondition(format!("monitored node {v} is not in the graph")));
        }
        state[v] = State::Absent;
    }
    let population: Vec<NodeId> = g.nodes().filter(|&v| state[v] == State::Susceptible).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seeds: Vec<NodeId> = match &cfg.initially_infected {
        InitialInfection::Nodes(list) => {
            if let Some(&bad) = list.iter().find(|&&v| !g.contains_node(v)) {
                return Err(Error::Precondition(format!("initially infected node {bad} is not in the graph")));
            }
            list.iter().copied().filter(|&v| state[v] == State::Susceptible).collect()
        }
        InitialInfection::Fraction(c) => {
            let count = ((c * population.len() as f64).round() as usize).clamp(1, population.len().max(1));
            let mut picked: Vec<NodeId> =
                index::sample(&mut rng, population.len(), count.min(population.len())).into_iter().map(|i| population[i]).collect();
            picked.sort_unstable();
            picked
        }
    };
    if seeds.is_empty() {
        return Err(Error::Precondition("no initially infected node outside the monitored set".into()));
    }
    for &v in &seeds {
        state[v] = State::Infected;
    }

    let n = population.len();
    let mut trace = SimulationTrace {
        model,
        susceptible: Vec::with_capacity(cfg.steps + 1),
        infected: Vec::with_capacity(cfg.steps + 1),
        recovered: Vec::with_capacity(cfg.steps + 1),
        population: n,
        effective_strength: strength,
        config: cfg.clone(),
    };
    let mut infected: Vec<NodeId> = population.iter().copied().filter(|&v| state[v] == State::Infected).collect();
    let mut recovered = 0usize;
    let record = |trace: &mut SimulationTrace, i: usize, r: usize| {
        trace.susceptible.push(n - i - r);
        trace.infected.push(i);
        trace.recovered.push(r);
    };
    record(&mut trace, infected.len(), recovered);

    let mut newly = Vec::new();
    for step in 1..=cfg.steps {
        if infected.is_empty() {
            if model == EpidemicModel::Sir {
                break;
            }
            // Nothing can change any more.
            for _ in step..=cfg.steps {
                record(&mut trace, 0, 0);
            }
            break;
        }
        newly.clear();
        for &v in &infected {
            for &w in g.neighbors(v) {
                if state[w] == State::Susceptible && rng.random::<f64>() < cfg.beta {
                    // Marked now so a node is infected at most once per step.
                    state[w] = State::Infected;
                    newly.push(w);
                }
            }
        }
        let mut still = Vec::with_capacity(infected.len() + newly.len());
        for &v in &infected {
            if rng.random::<f64>() < cfg.delta {
                state[v] = match model {
                    EpidemicModel::Sis => State::Susceptible,
                    EpidemicModel::Sir => {
                        recovered += 1;
                        State::Recovered
                    }
                };
            } else {
                still.push(v);
            }
        }
        still.extend_from_slice(&newly);
        still.sort_unstable();
        infected = still;
        record(&mut trace, infected.len(), recovered);
    }
    Ok(trace)
}

pub fn run_sis(g: &Graph, cfg: &SisConfig) -> Result<SimulationTrace> {
    simulate(g, cfg, EpidemicModel::Sis)
}

/// SIR run; stops early once no node is infected.
pub fn run_sir(g: &Graph, cfg: &SirConfig) -> Result<SimulationTrace> {
    simulate(g, cfg, EpidemicModel::Sir)
}
