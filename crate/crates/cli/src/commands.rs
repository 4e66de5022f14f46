//! One function per subcommand. Each validates its arguments, computes, and
//! returns an [`Outcome`] without touching the filesystem.

use netrobust::attacks::{
    run_attack, select_targets, AttackStrategy, CurveConfig, Perturbation, Selector, TargetKind,
};
use netrobust::defenses::{netshield_select, run_defense, DefenseKind, DefenseStrategy};
use netrobust::io::LabeledGraph;
use netrobust::measures::{evaluate, MeasureId, MeasureOptions};
use netrobust::simulators::{
    beta_for_strength, run_cascade, run_sir, run_sis, sweep, CascadeConfig, CascadeParameter, EpidemicConfig,
    InitialInfection, SweepGrid, SweepModel,
};
use netrobust::NodeId;
use rayon::prelude::*;
use serde_json::json;

use crate::args::*;
use crate::input::{digest, labels_to_ids, load_graph, parse_attack_spec, parse_k_grid, read_node_file, GraphDigest};
use crate::output::{Cell, Output, Table};
use crate::CliError;

pub struct Outcome {
    pub output: Output,
    pub digest: Option<GraphDigest>,
    /// Text printed when no `--out` is given, if different from the rendered table.
    pub plain: Option<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need_seed(seed: Option<u64>, command: &str) -> Result<u64, CliError> {
    seed.ok_or_else(|| usage(format!("`{command}` is stochastic: --seed is required")))
}

fn parse_measure(id: &str) -> Result<MeasureId, CliError> {
    id.parse().map_err(|e: netrobust::Error| usage(e.to_string()))
}

fn check_k(k: Option<usize>) -> Result<(), CliError> {
    if k == Some(0) {
        return Err(usage("--k must be positive"));
    }
    Ok(())
}

fn outcome(lg: &LabeledGraph, table: Table) -> Outcome {
    Outcome { output: Output { table, json: None }, digest: Some(digest(lg)), plain: None }
}

fn label_of(lg: &LabeledGraph, v: NodeId) -> String {
    lg.labels[v].to_string()
}

fn describe(lg: &LabeledGraph, p: &Perturbation) -> String {
    let l = |v| label_of(lg, v);
    match *p {
        Perturbation::RemoveNode(v) => l(v),
        Perturbation::RemoveEdge(u, v) => format!("{}-{}", l(u), l(v)),
        Perturbation::AddEdge(u, v) => format!("+{}-{}", l(u), l(v)),
        Perturbation::Rewire { removed, added } => {
            format!("-{}-{} +{}-{}", l(removed.0), l(removed.1), l(added.0), l(added.1))
        }
    }
}

fn removed_nodes(steps: &[Perturbation]) -> Vec<NodeId> {
    steps
        .iter()
        .filter_map(|p| match p {
            Perturbation::RemoveNode(v) => Some(*v),
            _ => None,
        })
        .collect()
}

/// Node targets of `spec` (e.g. `id:4`) chosen on `g`.
fn attack_targets(lg: &LabeledGraph, spec: &str, seed: u64) -> Result<Vec<NodeId>, CliError> {
    let (selector, count) = parse_attack_spec(spec)?;
    if count > lg.graph.node_count() {
        return Err(usage(format!("attack `{spec}` exceeds the {} nodes of the graph", lg.graph.node_count())));
    }
    let steps = select_targets(&lg.graph, &AttackStrategy::node(selector, seed), count)?;
    Ok(removed_nodes(&steps))
}

fn measure_row(table: &mut Table, id: MeasureId, result: Result<netrobust::measures::MeasureResult, String>) {
    let (value, k, flagged, note) = match result {
        Ok(r) => (r.value, r.k_used, r.flagged, String::new()),
        Err(e) => (f64::NAN, None, true, e),
    };
    table.push(vec![
        id.as_str().into(),
        value.into(),
        id.is_exact().into(),
        id.higher_is_more_robust().into(),
        k.map_or(Cell::Text(String::new()), Cell::from),
        flagged.into(),
        note.into(),
    ]);
}

const MEASURE_COLUMNS: [&str; 7] = ["measure_id", "value", "exact", "higher_is_more_robust", "k", "flagged", "note"];

pub fn measure(a: &MeasureArgs) -> Result<Outcome, CliError> {
    check_k(a.k)?;
    let ids: Vec<MeasureId> = if a.id == "all" { MeasureId::ALL.to_vec() } else { vec![parse_measure(&a.id)?] };
    if a.id != "all" && ids[0].is_stochastic() {
        need_seed(a.seed, "measure")?;
    }
    let lg = load_graph(&a.io.input, a.seed)?;
    let opts = MeasureOptions { k: a.k, seed: a.seed.unwrap_or(0), baseline_nodes: None };
    let mut table = Table::new(&MEASURE_COLUMNS);
    if a.id != "all" {
        let r = evaluate(&lg.graph, ids[0], &opts).map_err(|e| CliError::Runtime(format!("{}: {e}", ids[0])))?;
        let plain = netrobust_value_line(r.value);
        measure_row(&mut table, ids[0], Ok(r));
        let mut out = outcome(&lg, table);
        out.plain = Some(plain);
        return Ok(out);
    }
    let results: Vec<_> = ids
        .iter()
        .map(|&id| {
            if id.is_stochastic() && a.seed.is_none() {
                Err("needs --seed".to_string())
            } else {
                evaluate(&lg.graph, id, &opts).map_err(|e| e.to_string())
            }
        })
        .collect();
    for (id, r) in ids.into_iter().zip(results) {
        measure_row(&mut table, id, r);
    }
    Ok(outcome(&lg, table))
}

fn netrobust_value_line(v: f64) -> String {
    crate::output::format_float(v) + "\n"
}

fn curve_config(measure: &str, k: Option<usize>, seed: u64) -> Result<CurveConfig, CliError> {
    check_k(k)?;
    let mut c = CurveConfig::new(parse_measure(measure)?);
    c.options = MeasureOptions { k, seed, baseline_nodes: None };
    Ok(c)
}

pub fn attack(a: &AttackArgs) -> Result<Outcome, CliError> {
    let seed = need_seed(a.seed, "attack")?;
    let selector: Selector = a.strategy.parse().map_err(|e: netrobust::Error| usage(e.to_string()))?;
    let curve = curve_config(&a.measure, a.k, seed)?;
    let lg = load_graph(&a.io.input, a.seed)?;
    let (kind, available) = match a.kind {
        Kind::Node => (TargetKind::Node, lg.graph.node_count()),
        Kind::Edge => (TargetKind::Edge, lg.graph.edge_count()),
    };
    if a.count > available {
        return Err(usage(format!("--count {} exceeds the {available} available targets", a.count)));
    }
    let trace = run_attack(&lg.graph, &AttackStrategy { target_kind: kind, selector, seed }, a.count, &curve)?;
    let mut table = Table::new(&["step", "removed", "measure_value", "flagged"]);
    for (i, p) in trace.curve.iter().enumerate() {
        let removed = if i == 0 { String::new() } else { describe(&lg, &trace.steps[i - 1]) };
        table.push(vec![i.into(), removed.into(), p.value.into(), p.flagged.into()]);
    }
    Ok(outcome(&lg, table))
}

pub fn defend(a: &DefendArgs) -> Result<Outcome, CliError> {
    let seed = need_seed(a.seed, "defend")?;
    let kind: DefenseKind = a.strategy.parse().map_err(|e: netrobust::Error| usage(e.to_string()))?;
    if kind == DefenseKind::Netshield {
        return Err(usage("netshield monitors nodes; use the `netshield` command"));
    }
    let curve = curve_config(&a.measure, a.k, seed)?;
    let lg = load_graph(&a.io.input, a.seed)?;
    let mut g = lg.graph.clone();
    if let Some(spec) = &a.attack {
        for v in attack_targets(&lg, spec, seed)? {
            g.remove_node_mut(v)?;
        }
    }
    let trace = run_defense(&g, &DefenseStrategy::new(kind, a.budget, seed), &curve)?;
    let mut table = Table::new(&["step", "action", "measure_value", "flagged"]);
    for (i, p) in trace.curve.iter().enumerate() {
        let action = if i == 0 { String::new() } else { describe(&lg, &trace.steps[i - 1]) };
        table.push(vec![i.into(), action.into(), p.value.into(), p.flagged.into()]);
    }
    Ok(outcome(&lg, table))
}

pub fn netshield(a: &NetshieldArgs) -> Result<Outcome, CliError> {
    let lg = load_graph(&a.io.input, None)?;
    let n = lg.graph.node_count();
    if a.k == 0 || a.k > n {
        return Err(usage(format!("--k must lie in 1..={n}")));
    }
    let m = netshield_select(&lg.graph, a.k)?;
    let labels: Vec<i64> = m.nodes.iter().map(|&v| lg.labels[v]).collect();
    let mut table = Table::new(&["rank", "node", "shield_value", "eigendrop"]);
    for (i, &l) in labels.iter().enumerate() {
        table.push(vec![(i + 1).into(), l.into(), m.shield_value.into(), m.eigendrop.into()]);
    }
    let mut out = outcome(&lg, table);
    out.output.json = Some(json!({ "nodes": labels, "shield_value": m.shield_value, "eigendrop": m.eigendrop }));
    Ok(out)
}

fn monitored(lg: &LabeledGraph, path: Option<&std::path::Path>) -> Result<Vec<NodeId>, CliError> {
    match path {
        Some(p) => labels_to_ids(lg, &read_node_file(p)?),
        None => Ok(Vec::new()),
    }
}

pub fn epidemic(a: &EpidemicArgs, sir: bool) -> Result<Outcome, CliError> {
    let name = if sir { "sir" } else { "sis" };
    let seed = need_seed(a.seed, name)?;
    let lg = load_graph(&a.io.input, a.seed)?;
    let beta = match (a.beta, a.strength) {
        (Some(b), _) => b,
        (None, Some(s)) => {
            if a.delta <= 0.0 {
                return Err(usage("--delta must be positive"));
            }
            beta_for_strength(&lg.graph, s, a.delta).map_err(|e| usage(e.to_string()))?
        }
        (None, None) => return Err(usage("give --beta or --strength")),
    };
    let init = match &a.init_nodes {
        Some(labels) => InitialInfection::Nodes(labels_to_ids(&lg, labels)?),
        None => InitialInfection::Fraction(a.init_frac.unwrap_or(0.1)),
    };
    let mut cfg = EpidemicConfig::new(beta, a.delta, a.steps, init, seed);
    cfg.monitored = monitored(&lg, a.monitor.as_deref())?;
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let trace = if sir { run_sir(&lg.graph, &cfg) } else { run_sis(&lg.graph, &cfg) }
        .map_err(|e| match e {
            netrobust::Error::Precondition(m) => usage(m),
            e => e.into(),
        })?;
    let columns: &[&str] = if sir {
        &["step", "susceptible", "infected", "recovered", "infected_fraction"]
    } else {
        &["step", "susceptible", "infected", "infected_fraction"]
    };
    let mut table = Table::new(columns);
    let frac = trace.infected_fraction();
    for t in 0..trace.len() {
        let mut row: Vec<Cell> = vec![t.into(), trace.susceptible[t].into(), trace.infected[t].into()];
        if sir {
            row.push(trace.recovered[t].into());
        }
        row.push(frac[t].into());
        table.push(row);
    }
    Ok(outcome(&lg, table))
}

pub fn cascade(a: &CascadeArgs) -> Result<Outcome, CliError> {
    let seed = need_seed(a.seed, "cascade")?;
    let lg = load_graph(&a.io.input, a.seed)?;
    let mut cfg = CascadeConfig::new(a.lmax, a.r, Vec::new(), seed);
    cfg.defense_boost = a.boost;
    cfg.max_steps = a.max_steps;
    cfg.defended = monitored(&lg, a.defend.as_deref())?;
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    cfg.attacked = match (&a.attack, &a.attack_nodes) {
        (_, Some(labels)) => labels_to_ids(&lg, labels)?,
        (Some(spec), None) => attack_targets(&lg, spec, seed)?,
        (None, None) => return Err(usage("give --attack or --attack-nodes")),
    };
    let states = run_cascade(&lg.graph, &cfg)?;
    let n = lg.graph.node_count() as f64;
    let mut table = Table::new(&["step", "failed_count", "failed_fraction", "total_live_load"]);
    for s in &states {
        table.push(vec![
            s.step.into(),
            s.failed.len().into(),
            (s.failed.len() as f64 / n).into(),
            s.total_live_load().into(),
        ]);
    }
    Ok(outcome(&lg, table))
}

pub fn sweep_cmd(a: &SweepArgs) -> Result<Outcome, CliError> {
    let seed = need_seed(a.seed, "sweep")?;
    if a.values.is_empty() {
        return Err(usage("--values is empty"));
    }
    if a.runs == 0 {
        return Err(usage("--runs must be positive"));
    }
    let lg = load_graph(&a.io.input, a.seed)?;
    let seeds: Vec<u64> = (0..a.runs as u64).map(|i| seed + i).collect();
    let model = match a.model {
        SweepModelArg::Sis | SweepModelArg::Sir => {
            let mut base = EpidemicConfig::new(0.0, a.delta, a.steps, InitialInfection::Fraction(a.init_frac), seed);
            base.monitored = monitored(&lg, a.monitor.as_deref())?;
            base.validate().map_err(|e| usage(e.to_string()))?;
            for &s in &a.values {
                let beta = beta_for_strength(&lg.graph, s, a.delta).map_err(|e| usage(e.to_string()))?;
                if !(0.0..=1.0).contains(&beta) {
                    return Err(usage(format!("strength {s} needs beta {beta} outside [0, 1]")));
                }
            }
            if a.model == SweepModelArg::Sis {
                SweepModel::Sis(base)
            } else {
                SweepModel::Sir(base)
            }
        }
        SweepModelArg::Cascade => {
            let targets = attack_targets(&lg, &a.attack, seed)?;
            let base = CascadeConfig::new(a.lmax, a.r, targets, seed);
            let parameter = match a.param {
                CascadeParam::R => CascadeParameter::Redundancy,
                CascadeParam::Lmax => CascadeParameter::LMax,
            };
            for &v in &a.values {
                let mut c = base.clone();
                match parameter {
                    CascadeParameter::Redundancy => c.redundancy = v,
                    CascadeParameter::LMax => c.l_max = v,
                }
                c.validate().map_err(|e| usage(e.to_string()))?;
            }
            SweepModel::Cascade { base, parameter }
        }
    };
    let rows = sweep(&lg.graph, &SweepGrid { model, values: a.values.clone(), seeds })?;
    let mut table = Table::new(&["parameter", "value", "seed", "final_fraction", "tail_mean_fraction"]);
    for r in rows {
        table.push(vec![r.parameter.into(), r.value.into(), r.seed.into(), r.final_fraction.into(), r.tail_mean_fraction.into()]);
    }
    Ok(outcome(&lg, table))
}

pub fn approx_error(a: &ApproxErrorArgs) -> Result<Outcome, CliError> {
    let seed = need_seed(a.seed, "approx-error")?;
    if a.runs == 0 {
        return Err(usage("--runs must be positive"));
    }
    let id = parse_measure(&a.measure)?;
    let approx = if id.is_exact() {
        id.approximation().ok_or_else(|| usage(format!("`{id}` has no approximate variant")))?
    } else {
        id
    };
    let grid = parse_k_grid(&a.k_grid)?;
    let lg = load_graph(&a.io.input, a.seed)?;
    let n = lg.graph.node_count();
    let ks: Vec<usize> = grid.into_iter().filter(|&k| k >= 1 && k <= n).collect();
    if ks.is_empty() {
        return Err(usage(format!("no k in the grid lies in 1..={n}")));
    }
    let exact = evaluate(&lg.graph, approx.exact_counterpart(), &MeasureOptions::default())
        .map_err(|e| CliError::Runtime(format!("exact {}: {e}", approx.exact_counterpart())))?
        .value;
    let mut table = Table::new(&["k", "mean_abs_error"]);
    for k in ks {
        let errors: Vec<f64> = (0..a.runs as u64)
            .into_par_iter()
            .map(|i| {
                let opts = MeasureOptions { k: Some(k), seed: seed + i, baseline_nodes: None };
                evaluate(&lg.graph, approx, &opts).map(|r| (r.value - exact).abs())
            })
            .collect::<Result<_, _>>()?;
        table.push(vec![k.into(), (errors.iter().sum::<f64>() / errors.len() as f64).into()]);
    }
    Ok(outcome(&lg, table))
}

/// Measure time only, for the scaling harness's child processes.
pub fn time_measure(a: &TimeMeasureArgs) -> Result<String, CliError> {
    let id = parse_measure(&a.id)?;
    let lg = load_graph(&a.input, a.seed)?;
    let opts = MeasureOptions { k: None, seed: a.seed.unwrap_or(0), baseline_nodes: None };
    let start = std::time::Instant::now();
    evaluate(&lg.graph, id, &opts)?;
    Ok(format!("{}\n", crate::output::format_float(start.elapsed().as_secs_f64())))
}
