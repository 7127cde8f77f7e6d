//! The four subcommands. Each renders its CSV into a string so the caller
//! decides where it goes.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;

use rayon::prelude::*;

use oscidisp::asymptotics::{large_omega_flow, small_omega_dispersivity_on};
use oscidisp::sde::{estimate_dispersivity_mc, normality_check, simulate_paths, SimParams};
use oscidisp::{closed_form_dispersivity, numerical_dispersivity, DispersivityEstimate, Estimate};

use crate::config::{FlowKind, MethodChoice, RunConfig};
use crate::error::CliError;

pub const SWEEP_HEADER: &str = "omega,nu,D,D_over_D0,method,uncertainty";
pub const COMPARE_HEADER: &str =
    "omega,nu,closed,numeric,numeric_uncertainty,small,large,mc,mc_se,\
rel_closed_numeric,rel_closed_small,rel_closed_large,rel_numeric_mc,phase_spread";
pub const ORACLE_HEADER: &str = "omega,omega_hat,D,se,particles,dt,horizon,burn_in,seed,\
skewness,excess_kurtosis,ks,ks_critical,D_half_dt,se_half_dt,dt_bias,dt_combined_se";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Sweep,
    Compare,
    Oracle,
}

/// Rendered result: the CSV body and an optional one-line summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub csv: String,
    pub summary: Option<String>,
}

/// Seventeen significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

/// `|value − reference| / |reference|`.
fn rel(reference: Option<f64>, value: Option<f64>) -> Option<f64> {
    match (reference, value) {
        (Some(r), Some(v)) if r != 0.0 => Some(((v - r) / r).abs()),
        (Some(r), Some(v)) if r == v => Some(0.0),
        _ => None,
    }
}

fn omega_hat(cfg: &RunConfig, omega: f64) -> f64 {
    omega * cfg.width * cfg.width / (cfg.sigma * cfg.sigma)
}

/// Dispersivity at `omega` by one method.
pub fn estimate(cfg: &RunConfig, method: MethodChoice, omega: f64) -> Result<Estimate, CliError> {
    let channel = cfg.channel()?;
    let flow = cfg.flow_at(omega)?;
    let est = match method {
        MethodChoice::Auto => {
            let m = if cfg.closed_form_kind().is_ok() {
                MethodChoice::Closed
            } else {
                MethodChoice::Numeric
            };
            return estimate(cfg, m, omega);
        }
        MethodChoice::Closed => closed_form_dispersivity(&channel, &flow)?,
        MethodChoice::Numeric => numerical_dispersivity(&channel, &flow, cfg.grid)?,
        MethodChoice::Small => small_omega_dispersivity_on(&channel, &flow, cfg.grid)?,
        MethodChoice::Large => large_omega_flow(&channel, &flow)?,
        MethodChoice::MonteCarlo => monte_carlo(cfg, &cfg.sim, omega)?,
    };
    Ok(est)
}

fn monte_carlo(cfg: &RunConfig, sim: &SimParams<f64>, omega: f64) -> Result<Estimate, CliError> {
    let ensemble = simulate_paths(&cfg.channel()?, &cfg.flow_at(omega)?, sim)?;
    let mut est = estimate_dispersivity_mc(&ensemble, ensemble.window)?;
    est.metadata.dt = Some(sim.dt);
    Ok(est)
}

fn single_omega(cfg: &RunConfig) -> Result<f64, CliError> {
    match cfg.omega.values().as_slice() {
        [w] => Ok(*w),
        v => Err(CliError::Config {
            field: "run.omega".into(),
            message: format!("this command takes exactly one frequency, got {}", v.len()),
        }),
    }
}

pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    match cmd {
        Command::Eval => eval(cfg),
        Command::Sweep => sweep(cfg),
        Command::Compare => compare(cfg),
        Command::Oracle => oracle(cfg),
    }
}

/// `omega,omega_hat,D,method,uncertainty` without a header.
fn eval(cfg: &RunConfig) -> Result<Report, CliError> {
    let omega = single_omega(cfg)?;
    let est = estimate(cfg, cfg.method, omega)?;
    let csv = format!(
        "{},{},{},{},{}\n",
        fmt_float(omega),
        fmt_float(omega_hat(cfg, omega)),
        fmt_float(est.value),
        est.method,
        fmt_opt(est.uncertainty)
    );
    Ok(Report { csv, summary: None })
}

/// Time-averaged steady value that normalizes a sweep.
fn reference_value(cfg: &RunConfig) -> Result<f64, CliError> {
    let flow = cfg.flow_at(1.0)?;
    Ok(small_omega_dispersivity_on(&cfg.channel()?, &flow, cfg.grid)?.value)
}

fn sweep(cfg: &RunConfig) -> Result<Report, CliError> {
    let omegas = cfg.omega.values();
    let d0 = reference_value(cfg)?;
    let rows: Vec<Estimate> = omegas
        .par_iter()
        .map(|&w| estimate(cfg, cfg.method, w))
        .collect::<Result<_, _>>()?;
    let mut csv = String::new();
    writeln!(csv, "{SWEEP_HEADER}").unwrap();
    for (w, est) in omegas.iter().zip(&rows) {
        let ratio = if d0 > 0.0 { Some(est.value / d0) } else { None };
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt_float(*w),
            fmt_float(omega_hat(cfg, *w).sqrt()),
            fmt_float(est.value),
            fmt_opt(ratio),
            est.method,
            fmt_opt(est.uncertainty)
        )
        .unwrap();
    }
    Ok(Report { csv, summary: None })
}

#[derive(Debug, Clone, Default)]
struct CompareRow {
    closed: Option<f64>,
    numeric: Option<DispersivityEstimate<f64>>,
    large: Option<f64>,
    mc: Option<DispersivityEstimate<f64>>,
    phase_spread: Option<f64>,
}

/// Relative spread `(max − min)/mean` of the numerical value over the eight
/// phases `kπ/4` of the Poiseuille part.
fn phase_spread(cfg: &RunConfig, omega: f64) -> Result<f64, CliError> {
    let channel = cfg.channel()?;
    let values: Vec<f64> = (0..8)
        .map(|k| {
            let flow = cfg.flow_with_phase(omega, k as f64 * FRAC_PI_4)?;
            Ok(numerical_dispersivity(&channel, &flow, cfg.grid)?.value)
        })
        .collect::<Result<_, CliError>>()?;
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    let min = values.iter().copied().fold(f64::MAX, f64::min);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    Ok(if mean == 0.0 { 0.0 } else { (max - min) / mean })
}

fn compare_row(cfg: &RunConfig, omega: f64) -> Result<CompareRow, CliError> {
    let closed = match cfg.closed_form_kind() {
        Ok(_) => Some(estimate(cfg, MethodChoice::Closed, omega)?.value),
        Err(_) => None,
    };
    let numeric = Some(estimate(cfg, MethodChoice::Numeric, omega)?);
    let large = if omega > 0.0 {
        Some(estimate(cfg, MethodChoice::Large, omega)?.value)
    } else {
        None
    };
    let mc = if cfg.method == MethodChoice::MonteCarlo {
        Some(monte_carlo(cfg, &cfg.sim, omega)?)
    } else {
        None
    };
    let phase_spread = if cfg.flow == FlowKind::Mixed {
        Some(phase_spread(cfg, omega)?)
    } else {
        None
    };
    Ok(CompareRow {
        closed,
        numeric,
        large,
        mc,
        phase_spread,
    })
}

fn compare(cfg: &RunConfig) -> Result<Report, CliError> {
    let omegas = cfg.omega.values();
    let small = reference_value(cfg)?;
    let rows: Vec<CompareRow> = omegas
        .par_iter()
        .map(|&w| compare_row(cfg, w))
        .collect::<Result<_, _>>()?;
    let mut csv = String::new();
    writeln!(csv, "{COMPARE_HEADER}").unwrap();
    let mut worst: Option<f64> = None;
    for (w, r) in omegas.iter().zip(&rows) {
        let numeric = r.numeric.as_ref().map(|e| e.value);
        let mc = r.mc.as_ref().map(|e| e.value);
        let rcn = rel(r.closed, numeric);
        if let Some(x) = rcn {
            worst = Some(worst.map_or(x, |m: f64| m.max(x)));
        }
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_float(*w),
            fmt_float(omega_hat(cfg, *w).sqrt()),
            fmt_opt(r.closed),
            fmt_opt(numeric),
            fmt_opt(r.numeric.as_ref().and_then(|e| e.uncertainty)),
            fmt_float(small),
            fmt_opt(r.large),
            fmt_opt(mc),
            fmt_opt(r.mc.as_ref().and_then(|e| e.uncertainty)),
            fmt_opt(rcn),
            fmt_opt(rel(Some(small), r.closed)),
            fmt_opt(rel(r.large, r.closed)),
            fmt_opt(rel(numeric, mc)),
            fmt_opt(r.phase_spread),
        )
        .unwrap();
    }
    let summary = match worst {
        Some(x) => format!(
            "rows={} max_rel_closed_numeric={}",
            rows.len(),
            fmt_float(x)
        ),
        None => format!("rows={} max_rel_closed_numeric=n/a", rows.len()),
    };
    Ok(Report {
        csv,
        summary: Some(summary),
    })
}

fn oracle(cfg: &RunConfig) -> Result<Report, CliError> {
    let omega = single_omega(cfg)?;
    cfg.sim.validate().map_err(|e| CliError::Config {
        field: "mc".into(),
        message: e.to_string(),
    })?;
    let channel = cfg.channel()?;
    let flow = cfg.flow_at(omega)?;
    let ensemble = simulate_paths(&channel, &flow, &cfg.sim)?;
    let est = estimate_dispersivity_mc(&ensemble, ensemble.window)?;
    let normality = normality_check(&ensemble).ok();
    let half = if cfg.halving {
        let sim = SimParams {
            dt: cfg.sim.dt * 0.5,
            ..cfg.sim
        };
        Some(monte_carlo(cfg, &sim, omega)?)
    } else {
        None
    };
    let se = est.uncertainty.unwrap_or(0.0);
    let (bias, combined) = match &half {
        Some(h) => {
            let hse = h.uncertainty.unwrap_or(0.0);
            (
                Some(h.value - est.value),
                Some((se * se + hse * hse).sqrt()),
            )
        }
        None => (None, None),
    };
    let p = &cfg.sim;
    let mut csv = String::new();
    writeln!(csv, "{ORACLE_HEADER}").unwrap();
    writeln!(
        csv,
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        fmt_float(omega),
        fmt_float(omega_hat(cfg, omega)),
        fmt_float(est.value),
        fmt_float(se),
        p.particles,
        fmt_float(p.dt),
        fmt_float(p.horizon),
        fmt_float(p.burn_in),
        p.seed,
        fmt_opt(normality.map(|n| n.skewness)),
        fmt_opt(normality.map(|n| n.excess_kurtosis)),
        fmt_opt(normality.map(|n| n.ks_statistic)),
        fmt_opt(normality.map(|n| n.ks_critical)),
        fmt_opt(half.as_ref().map(|h| h.value)),
        fmt_opt(half.as_ref().and_then(|h| h.uncertainty)),
        fmt_opt(bias),
        fmt_opt(combined),
    )
    .unwrap();
    Ok(Report { csv, summary: None })
}
