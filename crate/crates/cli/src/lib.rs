//! Batch front end for the `netrobust` library.
//!
//! [`run`] parses arguments, validates them, runs the command and writes the
//! output with a manifest. It returns the process exit code: 0 on success,
//! 1 on runtime errors and 2 on usage errors. Nothing is written unless the
//! command succeeds.

pub mod args;
pub mod commands;
pub mod harness;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, Format};
use output::{manifest_path, resolve_format, resolve_out, write_file, Manifest, Output};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<netrobust::Error> for CliError {
    fn from(e: netrobust::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    if cli.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli, argv))
}

fn dispatch(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    let start = Instant::now();
    let (io, outcome) = match &cli.command {
        Command::Measure(a) => (&a.io, commands::measure(a)?),
        Command::Attack(a) => (&a.io, commands::attack(a)?),
        Command::Defend(a) => (&a.io, commands::defend(a)?),
        Command::Netshield(a) => (&a.io, commands::netshield(a)?),
        Command::Sis(a) => (&a.io, commands::epidemic(a, false)?),
        Command::Sir(a) => (&a.io, commands::epidemic(a, true)?),
        Command::Cascade(a) => (&a.io, commands::cascade(a)?),
        Command::Sweep(a) => (&a.io, commands::sweep_cmd(a)?),
        Command::ApproxError(a) => (&a.io, commands::approx_error(a)?),
        Command::Scale(a) => {
            let exe = std::env::current_exe().map_err(|e| CliError::Runtime(e.to_string()))?;
            let table = harness::scale(a, &exe)?;
            let output = Output { table, json: None };
            return emit(cli, argv, a.out.as_deref(), a.format, &output, None, None, start);
        }
        Command::Replay(a) => return replay(&a.manifest),
        Command::TimeMeasure(a) => {
            print!("{}", commands::time_measure(a)?);
            return Ok(());
        }
    };
    emit(cli, argv, io.out.as_deref(), io.format, &outcome.output, outcome.digest.as_ref(), outcome.plain, start)
}

#[allow(clippy::too_many_arguments)]
fn emit(
    cli: &Cli,
    argv: &[String],
    out: Option<&Path>,
    format: Option<Format>,
    output: &Output,
    digest: Option<&input::GraphDigest>,
    plain: Option<String>,
    start: Instant,
) -> Result<(), CliError> {
    let format = resolve_format(format, out);
    let Some(out) = out else {
        match plain {
            Some(text) => print!("{text}"),
            None => print!("{}", output.render(format)?),
        }
        return Ok(());
    };
    let path: PathBuf = resolve_out(out);
    let body = output.render(format)?;
    let manifest = Manifest {
        tool: "netrobust",
        version: env!("CARGO_PKG_VERSION"),
        argv,
        config: serde_json::to_value(cli).expect("config serializes"),
        input: digest,
        output: path.display().to_string(),
        format,
        duration_secs: start.elapsed().as_secs_f64(),
    };
    write_file(&path, &body)?;
    write_file(&manifest_path(&path), &(serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n"))
}

fn replay(manifest: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(manifest)
        .map_err(|e| CliError::Usage(format!("cannot read `{}`: {e}", manifest.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("`{}`: {e}", manifest.display())))?;
    let argv: Vec<String> = value["argv"]
        .as_array()
        .and_then(|a| a.iter().map(|v| v.as_str().map(String::from)).collect())
        .ok_or_else(|| CliError::Usage(format!("`{}` has no argv", manifest.display())))?;
    if argv.get(1).map(String::as_str) == Some("replay") {
        return Err(CliError::Usage("a manifest cannot replay another replay".into()));
    }
    let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Usage(e.to_string()))?;
    dispatch(&cli, &argv)
}
