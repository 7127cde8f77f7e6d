//! Run configuration: a sectioned `key = value` file plus flag overrides.
//!
//! ```text
//! [flow]
//! kind = mixed        # shear | poiseuille | powerlaw | mixed
//! u1 = 1              # shear (or single-profile) amplitude
//! u2 = 1              # Poiseuille amplitude of a mixed flow
//! psi = 0.7853981634  # phase of the Poiseuille part
//! n = 2               # power-law exponent
//!
//! [channel]
//! width = 1
//! sigma = 1
//! drift = zero        # zero | constant
//! drift_value = 0
//!
//! [run]
//! method = auto       # auto | closed | numeric | small | large | mc
//! omega = 0.1, 1, 10  # or omega_range = min:max:count (log-spaced)
//! grid = 2048
//! out = result.csv
//!
//! [mc]
//! dt = 1e-4
//! horizon = 50
//! particles = 100000
//! burn_in = 5
//! seed = 1
//! halving = true
//! ```

use std::path::PathBuf;
use std::str::FromStr;

use oscidisp::closed_forms::ClosedFormKind;
use oscidisp::sde::SimParams;
use oscidisp::{Channel, Flow, Harmonic, Profile, VerticalDrift};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowKind {
    Shear,
    Poiseuille,
    PowerLaw,
    Mixed,
}

impl FromStr for FlowKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "shear" => Ok(Self::Shear),
            "poiseuille" => Ok(Self::Poiseuille),
            "powerlaw" | "power-law" | "power_law" => Ok(Self::PowerLaw),
            "mixed" => Ok(Self::Mixed),
            other => Err(format!(
                "unknown flow kind `{other}` (expected shear, poiseuille, powerlaw or mixed)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    /// Closed form when one exists, otherwise the cell solver.
    Auto,
    Closed,
    Numeric,
    Small,
    Large,
    MonteCarlo,
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(Self::Auto),
            "closed" => Ok(Self::Closed),
            "numeric" => Ok(Self::Numeric),
            "small" => Ok(Self::Small),
            "large" => Ok(Self::Large),
            "mc" => Ok(Self::MonteCarlo),
            other => Err(format!(
                "unknown method `{other}` (expected auto, closed, numeric, small, large or mc)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OmegaSpec {
    List(Vec<f64>),
    Range { min: f64, max: f64, count: usize },
}

impl OmegaSpec {
    /// Frequencies in ascending order.
    pub fn values(&self) -> Vec<f64> {
        let mut v = match self {
            OmegaSpec::List(v) => v.clone(),
            OmegaSpec::Range { min, max, count } => {
                if *count == 1 {
                    vec![*min]
                } else {
                    let ratio = (max / min).ln();
                    (0..*count)
                        .map(|i| {
                            if i + 1 == *count {
                                *max
                            } else {
                                min * (ratio * i as f64 / (*count - 1) as f64).exp()
                            }
                        })
                        .collect()
                }
            }
        };
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Everything a command needs, after file and flags are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub flow: FlowKind,
    pub n: f64,
    pub u1: f64,
    pub u2: f64,
    pub psi: f64,
    pub width: f64,
    pub sigma: f64,
    pub drift: f64,
    pub method: MethodChoice,
    pub omega: OmegaSpec,
    pub grid: usize,
    pub sim: SimParams<f64>,
    pub halving: bool,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            flow: FlowKind::Shear,
            n: 2.0,
            u1: 1.0,
            u2: 1.0,
            psi: 0.0,
            width: 1.0,
            sigma: 1.0,
            drift: 0.0,
            method: MethodChoice::Auto,
            omega: OmegaSpec::List(vec![1.0]),
            grid: oscidisp::cell_solver::DEFAULT_GRID,
            sim: SimParams::default(),
            halving: true,
            out: None,
        }
    }
}

fn config_err(field: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_num<T: FromStr>(field: &str, raw: &str) -> Result<T, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| config_err(field, format!("cannot parse `{}`", raw.trim())))
}

fn parse_bool(field: &str, raw: &str) -> Result<bool, CliError> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(config_err(
            field,
            format!("expected true or false, got `{other}`"),
        )),
    }
}

/// `min:max:count`.
pub fn parse_range(field: &str, raw: &str) -> Result<OmegaSpec, CliError> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(config_err(
            field,
            format!("expected min:max:count, got `{raw}`"),
        ));
    }
    Ok(OmegaSpec::Range {
        min: parse_num(field, parts[0])?,
        max: parse_num(field, parts[1])?,
        count: parse_num(field, parts[2])?,
    })
}

/// Comma-separated frequencies.
pub fn parse_list(field: &str, raw: &str) -> Result<OmegaSpec, CliError> {
    raw.split(',')
        .map(|s| parse_num(field, s))
        .collect::<Result<Vec<f64>, _>>()
        .map(OmegaSpec::List)
}

impl RunConfig {
    /// Applies the entries of a configuration file on top of `self`.
    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        let mut section = String::new();
        let mut drift_kind: Option<String> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| {
                    config_err(
                        &format!("line {}", lineno + 1),
                        "unterminated section header",
                    )
                })?;
                section = name.trim().to_ascii_lowercase();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                config_err(&format!("line {}", lineno + 1), "expected `key = value`")
            })?;
            let key = key.trim().to_ascii_lowercase();
            let field = format!("{section}.{key}");
            let f = field.as_str();
            match (section.as_str(), key.as_str()) {
                ("flow", "kind") => self.flow = value.parse().map_err(|m| config_err(f, m))?,
                ("flow", "n") => self.n = parse_num(f, value)?,
                ("flow", "u1") => self.u1 = parse_num(f, value)?,
                ("flow", "u2") => self.u2 = parse_num(f, value)?,
                ("flow", "psi") => self.psi = parse_num(f, value)?,
                ("channel", "width") => self.width = parse_num(f, value)?,
                ("channel", "sigma") => self.sigma = parse_num(f, value)?,
                ("channel", "drift") => drift_kind = Some(value.trim().to_ascii_lowercase()),
                ("channel", "drift_value") => self.drift = parse_num(f, value)?,
                ("run", "method") => self.method = value.parse().map_err(|m| config_err(f, m))?,
                ("run", "omega") => self.omega = parse_list(f, value)?,
                ("run", "omega_range") => self.omega = parse_range(f, value)?,
                ("run", "grid") => self.grid = parse_num(f, value)?,
                ("run", "out") => self.out = Some(PathBuf::from(value.trim())),
                ("mc", "dt") => self.sim.dt = parse_num(f, value)?,
                ("mc", "horizon") => self.sim.horizon = parse_num(f, value)?,
                ("mc", "particles") => self.sim.particles = parse_num(f, value)?,
                ("mc", "burn_in") => self.sim.burn_in = parse_num(f, value)?,
                ("mc", "seed") => self.sim.seed = parse_num(f, value)?,
                ("mc", "halving") => self.halving = parse_bool(f, value)?,
                _ => return Err(config_err(f, "unknown key")),
            }
        }
        match drift_kind.as_deref() {
            None | Some("constant") => {}
            Some("zero") => self.drift = 0.0,
            Some(other) => {
                return Err(config_err(
                    "channel.drift",
                    format!("unknown drift `{other}` (expected zero or constant)"),
                ))
            }
        }
        Ok(())
    }

    /// Checks cross-field consistency.
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |field: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(config_err(field, format!("must be > 0, got {v}")))
            }
        };
        positive("channel.width", self.width)?;
        positive("channel.sigma", self.sigma)?;
        if !self.drift.is_finite() {
            return Err(config_err("channel.drift_value", "must be finite"));
        }
        for (field, v) in [
            ("flow.u1", self.u1),
            ("flow.u2", self.u2),
            ("flow.psi", self.psi),
        ] {
            if !v.is_finite() {
                return Err(config_err(field, "must be finite"));
            }
        }
        if self.flow == FlowKind::PowerLaw && !(self.n.is_finite() && self.n >= 1.0) {
            return Err(config_err(
                "flow.n",
                format!("must be >= 1, got {}", self.n),
            ));
        }
        match &self.omega {
            OmegaSpec::List(v) => {
                if v.is_empty() {
                    return Err(config_err("run.omega", "needs at least one value"));
                }
                if let Some(w) = v.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
                    return Err(config_err("run.omega", format!("must be >= 0, got {w}")));
                }
            }
            OmegaSpec::Range { min, max, count } => {
                if *count < 1 {
                    return Err(config_err("run.omega_range", "count must be >= 1"));
                }
                if !(min.is_finite() && *min > 0.0) {
                    return Err(config_err(
                        "run.omega_range",
                        "min must be > 0 for a log range",
                    ));
                }
                if !(max.is_finite() && max >= min) {
                    return Err(config_err("run.omega_range", "max must be >= min"));
                }
            }
        }
        if self.grid < 32 || !self.grid.is_multiple_of(2) {
            return Err(config_err(
                "run.grid",
                format!("must be even and >= 32, got {}", self.grid),
            ));
        }
        if self.method == MethodChoice::Closed {
            self.closed_form_kind()
                .map_err(|m| config_err("run.method", m))?;
        }
        if self.method == MethodChoice::MonteCarlo {
            self.sim
                .validate()
                .map_err(|e| config_err("mc", e.to_string()))?;
        }
        Ok(())
    }

    /// Closed-form family of the configured flow, or why there is none.
    pub fn closed_form_kind(&self) -> Result<Option<ClosedFormKind>, String> {
        if self.drift != 0.0 {
            return Err("closed forms need zero drift; use method=numeric for drift".to_string());
        }
        match self.flow {
            FlowKind::Shear => Ok(Some(ClosedFormKind::Shear)),
            FlowKind::Poiseuille => Ok(Some(ClosedFormKind::Poiseuille)),
            FlowKind::Mixed => Ok(None),
            FlowKind::PowerLaw => {
                let whole = self.n.fract() == 0.0 && (1.0..=6.0).contains(&self.n);
                if whole {
                    Ok(Some(ClosedFormKind::PowerLaw(self.n as u32)))
                } else {
                    Err(format!(
                        "no closed form for powerlaw n = {}; closed forms exist for n = 1..6, \
                         use method=numeric",
                        self.n
                    ))
                }
            }
        }
    }

    pub fn channel(&self) -> Result<Channel, CliError> {
        let drift = if self.drift == 0.0 {
            VerticalDrift::Zero
        } else {
            VerticalDrift::Constant(self.drift)
        };
        Channel::new(self.width, self.sigma, drift)
            .map_err(|e| config_err("channel", e.to_string()))
    }

    /// Flow at frequency `omega`; a mixed flow uses phase `psi` on its
    /// Poiseuille part.
    pub fn flow_at(&self, omega: f64) -> Result<Flow, CliError> {
        self.flow_with_phase(omega, self.psi)
    }

    pub fn flow_with_phase(&self, omega: f64, psi: f64) -> Result<Flow, CliError> {
        let h = |amp: f64, phase: f64, p: Profile| {
            Harmonic::new(amp, omega, phase, p).map_err(|e| config_err("flow", e.to_string()))
        };
        let harmonics = match self.flow {
            FlowKind::Shear => vec![h(self.u1, 0.0, Profile::linear_shear())?],
            FlowKind::Poiseuille => vec![h(self.u1, 0.0, Profile::poiseuille())?],
            FlowKind::PowerLaw => {
                let p =
                    Profile::power_law(self.n).map_err(|e| config_err("flow.n", e.to_string()))?;
                vec![h(self.u1, 0.0, p)?]
            }
            FlowKind::Mixed => vec![
                h(self.u1, 0.0, Profile::linear_shear())?,
                h(self.u2, psi, Profile::poiseuille())?,
            ],
        };
        Flow::new(harmonics).map_err(|e| config_err("flow", e.to_string()))
    }
}
