//! Scaling harness: each measurement runs in a child process with a deadline.

use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use netrobust::measures::MeasureId;

use crate::args::ScaleArgs;
use crate::output::{Cell, Table};
use crate::CliError;

pub const TIMEOUT: &str = "TIMEOUT";

enum Timing {
    Seconds(f64),
    Timeout,
    Failed,
}

fn time_child(exe: &Path, id: MeasureId, n: usize, seed: u64, budget: Duration) -> Result<Timing, CliError> {
    let mut child = Command::new(exe)
        .args(["time-measure", "--id", id.as_str(), "--seed", &seed.to_string()])
        .arg("--in")
        .arg(format!("gen:csf:n={n},m=2,p=0.3,seed={seed}"))
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| CliError::Runtime(format!("cannot start measurement process: {e}")))?;
    let deadline = Instant::now() + budget;
    loop {
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) if Instant::now() >= deadline => {
                let _ = child.kill();
                let _ = child.wait();
                return Ok(Timing::Timeout);
            }
            Ok(None) => std::thread::sleep(Duration::from_millis(5)),
            Err(e) => return Err(CliError::Runtime(format!("measurement process: {e}"))),
        }
    }
    let out = child.wait_with_output().map_err(|e| CliError::Runtime(e.to_string()))?;
    if !out.status.success() {
        return Ok(Timing::Failed);
    }
    Ok(String::from_utf8_lossy(&out.stdout).trim().parse().map_or(Timing::Failed, Timing::Seconds))
}

/// Rows of (measure, n, seconds), with `TIMEOUT` once a measure exceeds the budget.
/// Larger sizes of a timed-out measure are not attempted.
pub fn scale(a: &ScaleArgs, exe: &Path) -> Result<Table, CliError> {
    let seed = a.seed.ok_or_else(|| CliError::Usage("`scale` is stochastic: --seed is required".into()))?;
    let ids: Vec<MeasureId> = a
        .measures
        .iter()
        .map(|m| m.parse().map_err(|e: netrobust::Error| CliError::Usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    if a.sizes.is_empty() || a.sizes.windows(2).any(|w| w[0] >= w[1]) || a.sizes[0] < 3 {
        return Err(CliError::Usage("--sizes must be strictly ascending and at least 3".into()));
    }
    if !(a.budget > 0.0 && a.budget.is_finite()) {
        return Err(CliError::Usage("--budget must be positive".into()));
    }
    let budget = Duration::from_secs_f64(a.budget);
    let mut table = Table::new(&["measure", "n", "seconds"]);
    for id in ids {
        let mut timed_out = false;
        for &n in &a.sizes {
            let cell = if timed_out {
                Cell::from(TIMEOUT)
            } else {
                match time_child(exe, id, n, seed, budget)? {
                    Timing::Seconds(s) => Cell::from(s),
                    Timing::Timeout => {
                        timed_out = true;
                        Cell::from(TIMEOUT)
                    }
                    Timing::Failed => Cell::from("ERROR"),
                }
            };
            table.push(vec![id.as_str().into(), n.into(), cell]);
        }
    }
    Ok(table)
}
