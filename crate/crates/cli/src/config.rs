//! Run configuration: JSON file, preset defaults and flag overrides.
//!
//! Precedence is flags > file > preset. Without `--config` the natural preset
//! supplies the physics block; with `--config` every physics field must be
//! present unless `--preset natural` is also given.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use nclandau_core::{LandauConfig, NcParams};
use serde::Deserialize;

/// Configuration problem, reported with the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration field `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Commutative,
    Space,
    Phase,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
pub enum SweepParameter {
    #[serde(rename = "theta")]
    #[value(name = "theta")]
    Theta,
    #[serde(rename = "alpha")]
    #[value(name = "alpha")]
    Alpha,
    #[serde(rename = "B")]
    #[value(name = "B")]
    B,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Theta => "theta",
            SweepParameter::Alpha => "alpha",
            SweepParameter::B => "B",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Natural,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    physics: Option<PhysicsFile>,
    nc: Option<NcFile>,
    sweep: Option<SweepFile>,
    quantum: Option<QuantumFile>,
    oracle: Option<OracleFile>,
    output: Option<OutputFile>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhysicsFile {
    q: Option<f64>,
    mu: Option<f64>,
    #[serde(rename = "B")]
    b: Option<f64>,
    c: Option<f64>,
    hbar: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct NcFile {
    mode: Option<Mode>,
    theta: Option<f64>,
    alpha: Option<f64>,
    theta_bar_override: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    parameter: Option<SweepParameter>,
    start: Option<f64>,
    stop: Option<f64>,
    steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuantumFile {
    #[serde(rename = "max_N")]
    max_n: Option<u32>,
    m_range: Option<[i32; 2]>,
    k: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleFile {
    enabled: Option<bool>,
    n_points: Option<usize>,
    rho_max_factor: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputFile {
    format: Option<Format>,
    path: Option<PathBuf>,
}

/// Flags shared by every subcommand; each one overrides the matching file value.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Fill missing physics values from a preset (natural: q=mu=c=hbar=1, B=2).
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    #[arg(long = "B", global = true)]
    pub b: Option<f64>,
    #[arg(long, global = true)]
    pub c: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long = "max-n", global = true)]
    pub max_n: Option<u32>,
    #[arg(long = "m-min", global = true, allow_hyphen_values = true)]
    pub m_min: Option<i32>,
    #[arg(long = "m-max", global = true, allow_hyphen_values = true)]
    pub m_max: Option<i32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long = "n-points", global = true)]
    pub n_points: Option<usize>,
    #[arg(long = "rho-max-factor", global = true)]
    pub rho_max_factor: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcSpec {
    pub mode: Mode,
    pub theta: f64,
    pub alpha: f64,
    pub theta_bar_override: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    /// Evenly spaced values; the last one is exactly `stop`.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumSpec {
    pub max_n: u32,
    pub m_range: (i32, i32),
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSpec {
    pub enabled: bool,
    pub n_points: usize,
    pub rho_max_factor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub format: Format,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub physics: LandauConfig,
    pub nc: NcSpec,
    pub sweep: Option<SweepSpec>,
    pub quantum: QuantumSpec,
    pub oracle: OracleSpec,
    pub output: OutputSpec,
}

fn read_file(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        let msg = e.to_string();
        // serde reports "missing field `B`" / "unknown field `x`"; surface the name.
        let field = msg
            .split('`')
            .nth(1)
            .map(str::to_owned)
            .unwrap_or_else(|| "config".to_owned());
        ConfigError::new(field, msg)
    })
}

fn pick<T: Copy>(flag: Option<T>, file: Option<T>, preset: Option<T>, field: &str) -> Result<T, ConfigError> {
    flag.or(file)
        .or(preset)
        .ok_or_else(|| ConfigError::new(field, "missing value"))
}

impl RunConfig {
    pub fn resolve(flags: &Overrides) -> Result<Self, ConfigError> {
        let file = match &flags.config {
            Some(path) => read_file(path)?,
            None => FileConfig::default(),
        };
        let use_preset = flags.preset.is_some() || flags.config.is_none();
        let natural = LandauConfig::natural();
        let preset = |v: f64| use_preset.then_some(v);

        let pf = file.physics.unwrap_or_default();
        let physics = LandauConfig {
            q: pick(flags.q, pf.q, preset(natural.q), "physics.q")?,
            mu: pick(flags.mu, pf.mu, preset(natural.mu), "physics.mu")?,
            b: pick(flags.b, pf.b, preset(natural.b), "physics.B")?,
            c: pick(flags.c, pf.c, preset(natural.c), "physics.c")?,
            hbar: pick(flags.hbar, pf.hbar, preset(natural.hbar), "physics.hbar")?,
        };
        physics.validate().map_err(|e| ConfigError::new("physics", e.to_string()))?;

        let sweep = match file.sweep {
            None => None,
            Some(s) => {
                let steps = s.steps.ok_or_else(|| ConfigError::new("sweep.steps", "missing value"))?;
                if steps < 2 {
                    return Err(ConfigError::new("sweep.steps", format!("need at least 2 steps, got {steps}")));
                }
                Some(SweepSpec {
                    parameter: s.parameter.ok_or_else(|| ConfigError::new("sweep.parameter", "missing value"))?,
                    start: s.start.ok_or_else(|| ConfigError::new("sweep.start", "missing value"))?,
                    stop: s.stop.ok_or_else(|| ConfigError::new("sweep.stop", "missing value"))?,
                    steps,
                })
            }
        };

        let nf = file.nc.unwrap_or_default();
        // A swept deformation parameter needs no fixed value of its own.
        let swept = |p: SweepParameter| sweep.filter(|s| s.parameter == p).map(|s| s.start);
        let theta = flags.theta.or(nf.theta).or(swept(SweepParameter::Theta));
        let alpha = flags.alpha.or(nf.alpha).or(swept(SweepParameter::Alpha));
        let mode = flags.mode.or(nf.mode).unwrap_or(match (theta, alpha) {
            (_, Some(_)) => Mode::Phase,
            (Some(_), None) => Mode::Space,
            (None, None) => Mode::Commutative,
        });
        let nc = match mode {
            Mode::Commutative => {
                if theta.is_some_and(|t| t != 0.0) || alpha.is_some_and(|a| a != 1.0) {
                    return Err(ConfigError::new("nc.mode", "commutative mode takes no theta or alpha"));
                }
                NcSpec { mode, theta: 0.0, alpha: 1.0, theta_bar_override: nf.theta_bar_override }
            }
            Mode::Space => {
                if alpha.is_some_and(|a| a != 1.0) {
                    return Err(ConfigError::new("nc.alpha", "space mode fixes alpha = 1; use mode phase"));
                }
                let theta = theta.ok_or_else(|| ConfigError::new("nc.theta", "space mode needs theta"))?;
                NcSpec { mode, theta, alpha: 1.0, theta_bar_override: nf.theta_bar_override }
            }
            Mode::Phase => {
                let theta = theta.ok_or_else(|| ConfigError::new("nc.theta", "phase mode needs theta"))?;
                let alpha = alpha.ok_or_else(|| ConfigError::new("nc.alpha", "phase mode needs alpha"))?;
                NcSpec { mode, theta, alpha, theta_bar_override: nf.theta_bar_override }
            }
        };

        if let Some(s) = &sweep {
            let fits = match s.parameter {
                SweepParameter::Theta => nc.mode != Mode::Commutative,
                SweepParameter::Alpha => nc.mode == Mode::Phase,
                SweepParameter::B => true,
            };
            if !fits {
                return Err(ConfigError::new(
                    "sweep.parameter",
                    format!("cannot sweep {} in {:?} mode", s.parameter.name(), nc.mode).to_lowercase(),
                ));
            }
        }

        let qf = file.quantum.unwrap_or_default();
        let max_n = flags.max_n.or(qf.max_n).unwrap_or(2);
        let default_range = [-(max_n as i32), max_n as i32];
        let [file_lo, file_hi] = qf.m_range.unwrap_or(default_range);
        let m_range = (flags.m_min.unwrap_or(file_lo), flags.m_max.unwrap_or(file_hi));
        if m_range.0 > m_range.1 {
            return Err(ConfigError::new("quantum.m_range", format!("empty range {m_range:?}")));
        }
        let k = flags.k.or(qf.k).unwrap_or(0.0);
        if !k.is_finite() {
            return Err(ConfigError::new("quantum.k", "must be finite"));
        }

        let of = file.oracle.unwrap_or_default();
        let oracle = OracleSpec {
            enabled: of.enabled.unwrap_or(true),
            n_points: flags.n_points.or(of.n_points).unwrap_or(nclandau_core::radial::DEFAULT_POINTS),
            rho_max_factor: flags
                .rho_max_factor
                .or(of.rho_max_factor)
                .unwrap_or(nclandau_core::radial::DEFAULT_RHO_MAX_FACTOR),
        };
        if oracle.n_points < 16 {
            return Err(ConfigError::new("oracle.n_points", "need at least 16 points"));
        }
        if !(oracle.rho_max_factor >= nclandau_core::radial::MIN_RHO_MAX_FACTOR) {
            return Err(ConfigError::new("oracle.rho_max_factor", "must be at least 8"));
        }

        let out = file.output.unwrap_or_default();
        let output = OutputSpec {
            format: flags.format.or(out.format).unwrap_or_default(),
            path: flags.output.clone().or(out.path),
        };

        Ok(RunConfig { physics, nc, sweep, quantum: QuantumSpec { max_n, m_range, k }, oracle, output })
    }

    /// Deformation parameters; `θ̄` is always derived in phase mode.
    pub fn params(&self) -> Result<NcParams, ConfigError> {
        params_for(&self.nc, self.physics.hbar)
    }

    pub fn reject_theta_bar_override(&self) -> Result<(), ConfigError> {
        if self.nc.theta_bar_override.is_some() {
            return Err(ConfigError::new(
                "nc.theta_bar_override",
                "theta_bar is derived from theta and alpha; overrides are only accepted by verify",
            ));
        }
        Ok(())
    }
}

pub fn params_for(nc: &NcSpec, hbar: f64) -> Result<NcParams, ConfigError> {
    let r = match nc.mode {
        Mode::Commutative => Ok(NcParams::commutative(hbar)),
        Mode::Space => NcParams::space(hbar, nc.theta),
        Mode::Phase => NcParams::phase(hbar, nc.theta, nc.alpha),
    };
    r.map_err(|e| ConfigError::new("nc", e.to_string()))
}
