//! Parameter sweeps over seeds, run in parallel with ordered output.

use rayon::prelude::*;
use serde::Serialize;

use super::cascade::{final_failure_fraction, run_cascade, CascadeConfig};
use super::epidemic::{run_sir, run_sis, spectral_radius_or_zero, EpidemicConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CascadeParameter {
    Redundancy,
    LMax,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepModel {
    /// Values are effective strengths; `beta` is set to `s·δ/λ₁` and the base `beta` ignored.
    Sis(EpidemicConfig),
    Sir(EpidemicConfig),
    Cascade { base: CascadeConfig, parameter: CascadeParameter },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub model: SweepModel,
    pub values: Vec<f64>,
    pub seeds: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub parameter: &'static str,
    pub value: f64,
    pub seed: u64,
    /// Infected or failed fraction at the end of the run.
    pub final_fraction: f64,
    /// Mean infected fraction over the last tenth of the steps; the final failure fraction for cascades.
    pub tail_mean_fraction: f64,
}

/// Infection probability giving effective strength `s`.
pub fn beta_for_strength(g: &Graph, s: f64, delta: f64) -> Result<f64> {
    let lambda = spectral_radius_or_zero(g)?;
    if lambda == 0.0 {
        return Err(Error::Domain("graph without edges has no epidemic threshold".into()));
    }
    Ok(s * delta / lambda)
}

/// One row per value and seed, ordered by value then seed.
pub fn sweep(g: &Graph, grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    if grid.values.is_empty() || grid.seeds.is_empty() {
        return Err(Error::InvalidParameter("sweep grid is empty".into()));
    }
    let jobs: Vec<(f64, u64)> = grid.values.iter().flat_map(|&v| grid.seeds.iter().map(move |&s| (v, s))).collect();
    match &grid.model {
        SweepModel::Sis(base) | SweepModel::Sir(base) => {
            let sir = matches!(grid.model, SweepModel::Sir(_));
            let lambda = spectral_radius_or_zero(g)?;
            if lambda == 0.0 {
                return Err(Error::Domain("graph without edges has no epidemic threshold".into()));
            }
            let configs: Vec<EpidemicConfig> = jobs
                .iter()
                .map(|&(s, seed)| EpidemicConfig { beta: s * base.delta / lambda, seed, ..base.clone() })
                .collect();
            for c in &configs {
                c.validate()?;
            }
            let window = (base.steps / 10).max(1);
            configs
                .par_iter()
                .zip(jobs.par_iter())
                .map(|(cfg, &(s, seed))| {
                    let t = if sir { run_sir(g, cfg)? } else { run_sis(g, cfg)? };
                    Ok(SweepRow {
                        parameter: "strength",
                        value: s,
                        seed,
                        final_fraction: *t.infected_fraction().last().expect("trace has initial state"),
                        tail_mean_fraction: t.tail_mean_fraction(window),
                    })
                })
                .collect()
        }
        SweepModel::Cascade { base, parameter } => jobs
            .par_iter()
            .map(|&(value, seed)| {
                let mut cfg = CascadeConfig { seed, ..base.clone() };
                let name = match parameter {
                    CascadeParameter::Redundancy => {
                        cfg.redundancy = value;
                        "redundancy"
                    }
                    CascadeParameter::LMax => {
                        cfg.l_max = value;
                        "l_max"
                    }
                };
                let f = final_failure_fraction(g, &run_cascade(g, &cfg)?);
                Ok(SweepRow { parameter: name, value, seed, final_fraction: f, tail_mean_fraction: f })
            })
            .collect(),
    }
}

/// Per-value means of `tail_mean_fraction`, in grid order.
pub fn mean_by_value(rows: &[SweepRow]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64, usize)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|e| e.0 == r.value) {
            Some(e) => {
                e.1 += r.tail_mean_fraction;
                e.2 += 1;
            }
            None => out.push((r.value, r.tail_mean_fraction, 1)),
        }
    }
    out.into_iter().map(|(v, s, c)| (v, s / c as f64)).collect()
}
