//! Command-line front end for the `oscidisp` dispersivity library.
//!
//! ```text
//! oscidisp eval    --flow shear --omega 1 --method closed
//! oscidisp sweep   --config sweep.cfg --omega-range 0.01:1000:51 --out sweep.csv
//! oscidisp compare --flow mixed --omega 1
//! oscidisp oracle  --config mc.cfg --seed 7 --out mc.csv
//! ```
//!
//! Exit status is 0 on success, 1 when a computation or output write fails
//! and 2 for configuration errors.

pub mod commands;
pub mod config;
pub mod error;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{execute, Command, Report};
pub use config::{FlowKind, MethodChoice, OmegaSpec, RunConfig};
pub use error::CliError;

/// Environment variable capping the worker threads (`0` = automatic).
pub const THREADS_ENV: &str = "OSCIDISP_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "oscidisp",
    version,
    about = "Dispersivity of oscillatory channel flows"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Subcmd,
}

#[derive(Debug, Subcommand)]
pub enum Subcmd {
    /// One dispersivity value as a CSV row `omega,omega_hat,D,method,uncertainty`.
    Eval(Overrides),
    /// Dispersivity over a frequency range, normalized by its small-frequency limit.
    Sweep(Overrides),
    /// Closed form, cell solver, asymptotes and optionally Monte Carlo side by side.
    Compare(Overrides),
    /// Monte Carlo estimate with normality and timestep checks.
    Oracle(Overrides),
}

/// Flags that override the configuration file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Configuration file with [flow], [channel], [run] and [mc] sections.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// shear | poiseuille | powerlaw | mixed
    #[arg(long)]
    pub flow: Option<String>,
    /// Comma-separated angular frequencies.
    #[arg(long)]
    pub omega: Option<String>,
    /// Log-spaced frequencies as min:max:count.
    #[arg(long = "omega-range")]
    pub omega_range: Option<String>,
    /// auto | closed | numeric | small | large | mc
    #[arg(long)]
    pub method: Option<String>,
    /// Power-law exponent.
    #[arg(long)]
    pub n: Option<f64>,
    /// Cell-problem grid intervals.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Monte Carlo seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path (standard output when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Overrides {
    /// Defaults, then the configuration file, then the flags.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Input {
                path: path.clone(),
                source,
            })?;
            cfg.apply_file(&text)?;
        }
        let bad = |field: &str, message: String| CliError::Config {
            field: field.into(),
            message,
        };
        if let Some(f) = &self.flow {
            cfg.flow = f.parse().map_err(|m| bad("--flow", m))?;
        }
        if let Some(w) = &self.omega {
            cfg.omega = config::parse_list("--omega", w)?;
        }
        if let Some(r) = &self.omega_range {
            cfg.omega = config::parse_range("--omega-range", r)?;
        }
        if let Some(m) = &self.method {
            cfg.method = m.parse().map_err(|m| bad("--method", m))?;
        }
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if let Some(g) = self.grid {
            cfg.grid = g;
        }
        if let Some(s) = self.seed {
            cfg.sim.seed = s;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        Ok(cfg)
    }
}

/// Writes the CSV to `cfg.out` or `stdout`. The summary follows the CSV on
/// `stdout` when the CSV went to a file, and goes to `stderr` otherwise.
pub fn deliver(
    report: &Report,
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &report.csv).map_err(|source| CliError::Output {
                path: path.clone(),
                source,
            })?;
            if let Some(s) = &report.summary {
                let _ = writeln!(stdout, "{s}");
            }
        }
        None => {
            stdout
                .write_all(report.csv.as_bytes())
                .map_err(|source| CliError::Output {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
            if let Some(s) = &report.summary {
                let _ = writeln!(stderr, "{s}");
            }
        }
    }
    Ok(())
}

/// Sizes the global worker pool from [`THREADS_ENV`].
pub fn configure_threads() {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

/// Parses `args`, runs the command and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (command, overrides) = match cli.command {
        Subcmd::Eval(o) => (Command::Eval, o),
        Subcmd::Sweep(o) => (Command::Sweep, o),
        Subcmd::Compare(o) => (Command::Compare, o),
        Subcmd::Oracle(o) => (Command::Oracle, o),
    };
    let result = overrides.resolve().and_then(|cfg| {
        let report = execute(command, &cfg)?;
        deliver(&report, &cfg, stdout, stderr)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
