//! The four subcommands, each producing a table or a verification report.

use nclandau_core::radial::{compare, RadialGrid};
use nclandau_core::{
    bopp_for, build_hamiltonian, decompose, effective_oscillator, energy, enumerate_levels, landau_correction,
    normalize, radial_eval, verify_algebra, EffectiveOscillator, LandauConfig, NcParams, QuadratureSpec,
    QuantumNumbers,
};
use rayon::prelude::*;

use crate::config::{params_for, ConfigError, Mode, NcSpec, RunConfig, SweepParameter};
use crate::output::{format_float, Cell, Table};

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_ENV: &str = "NCLANDAU_THREADS";

pub const SPECTRUM_COLUMNS: [&str; 8] =
    ["n_rho", "m", "k", "E_xy", "E_lz", "E_par", "E_total", "delta_E_vs_commutative"];

pub const SWEEP_COLUMNS: [&str; 10] = [
    "parameter_value",
    "theta",
    "alpha",
    "theta_bar",
    "B",
    "mu_eff",
    "omega_eff",
    "E_ground",
    "delta_E_ground",
    "error",
];

pub const WAVEFUNCTION_COLUMNS: [&str; 2] = ["rho", "R_normalized"];

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Commutative => "commutative",
        Mode::Space => "space",
        Mode::Phase => "phase",
    }
}

fn oscillator(physics: &LandauConfig, params: &NcParams) -> Result<EffectiveOscillator, ConfigError> {
    effective_oscillator(physics, params).map_err(|e| ConfigError::new("nc", e.to_string()))
}

fn describe_run(table: &mut Table, physics: &LandauConfig, params: &NcParams, mode: Mode) {
    table.meta("mode", mode_name(mode));
    for (key, v) in [("q", physics.q), ("mu", physics.mu), ("B", physics.b), ("c", physics.c), ("hbar", physics.hbar)] {
        table.meta_float(key, v);
    }
    table.meta_float("theta", params.theta());
    table.meta_float("alpha", params.alpha());
    table.meta_float("theta_bar", params.theta_bar());
}

/// Landau levels with `2n_ρ + |m| ≤ max_N` over the configured `m` range.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Table, ConfigError> {
    cfg.reject_theta_bar_override()?;
    let params = cfg.params()?;
    let eff = oscillator(&cfg.physics, &params)?;
    let flat = oscillator(&cfg.physics, &NcParams::commutative(cfg.physics.hbar))?;

    let mut table = Table::new("spectrum", SPECTRUM_COLUMNS.to_vec());
    describe_run(&mut table, &cfg.physics, &params, cfg.nc.mode);
    table.meta_float("mu_eff", eff.mu_eff);
    table.meta_float("omega_eff", eff.omega_eff);
    table.meta("max_N", cfg.quantum.max_n.to_string());

    let q = &cfg.quantum;
    for e in enumerate_levels(&eff, &cfg.physics, q.max_n, q.m_range, q.k) {
        let reference = energy(e.qn, &flat, &cfg.physics).e_total;
        table.push(vec![
            Cell::Int(i64::from(e.qn.n_rho)),
            Cell::Int(i64::from(e.qn.m)),
            e.qn.k.into(),
            e.e_xy.into(),
            e.e_lz.into(),
            e.e_par.into(),
            e.e_total.into(),
            (e.e_total - reference).into(),
        ]);
    }
    Ok(table)
}

struct SweepPoint {
    value: f64,
    physics: LandauConfig,
    nc: NcSpec,
}

fn sweep_row(point: &SweepPoint, k: f64) -> Vec<Cell> {
    let SweepPoint { value, physics, nc } = point;
    let ground = QuantumNumbers { n_rho: 0, m: 0, k };
    let evaluated = params_for(nc, physics.hbar)
        .map_err(|e| e.message)
        .and_then(|params| {
            let eff = effective_oscillator(physics, &params).map_err(|e| e.to_string())?;
            let delta = landau_correction(physics, &params, ground).map_err(|e| e.to_string())?;
            Ok((params, eff, energy(ground, &eff, physics).e_total, delta))
        });
    match evaluated {
        Ok((params, eff, e_ground, delta)) => vec![
            (*value).into(),
            params.theta().into(),
            params.alpha().into(),
            params.theta_bar().into(),
            physics.b.into(),
            eff.mu_eff.into(),
            eff.omega_eff.into(),
            e_ground.into(),
            delta.into(),
            Cell::Empty,
        ],
        Err(msg) => vec![
            (*value).into(),
            nc.theta.into(),
            nc.alpha.into(),
            Cell::Empty,
            physics.b.into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Text(msg),
        ],
    }
}

/// Worker count from [`THREADS_ENV`], or `None` for the rayon default.
pub fn thread_limit() -> Result<Option<usize>, ConfigError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ConfigError::new(THREADS_ENV, format!("expected a positive integer, got {raw:?}"))),
        },
    }
}

/// One row per sweep value, evaluated in parallel and emitted in sweep order.
/// Points where the deformation is undefined become rows with an `error` entry.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Table, ConfigError> {
    cfg.reject_theta_bar_override()?;
    let sweep = cfg
        .sweep
        .ok_or_else(|| ConfigError::new("sweep", "the sweep command needs a sweep block in the config file"))?;
    let threads = thread_limit()?;

    let points: Vec<SweepPoint> = sweep
        .values()
        .into_iter()
        .map(|value| {
            let mut physics = cfg.physics;
            let mut nc = cfg.nc;
            match sweep.parameter {
                SweepParameter::Theta => nc.theta = value,
                SweepParameter::Alpha => nc.alpha = value,
                SweepParameter::B => physics.b = value,
            }
            SweepPoint { value, physics, nc }
        })
        .collect();

    let k = cfg.quantum.k;
    let evaluate = || points.par_iter().map(|p| sweep_row(p, k)).collect::<Vec<_>>();
    let rows = match threads {
        None => evaluate(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ConfigError::new(THREADS_ENV, e.to_string()))?
            .install(evaluate),
    };

    let mut table = Table::new("sweep", SWEEP_COLUMNS.to_vec());
    table.meta("mode", mode_name(cfg.nc.mode));
    table.meta("parameter", sweep.parameter.name());
    table.meta_float("start", sweep.start);
    table.meta_float("stop", sweep.stop);
    table.meta("steps", sweep.steps.to_string());
    table.meta_float("k", k);
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// Normalized radial function sampled uniformly on `[0, rho_max_factor/ζ]`.
pub fn cmd_wavefunction(cfg: &RunConfig, n_rho: u32, m: i32, samples: usize) -> Result<Table, ConfigError> {
    cfg.reject_theta_bar_override()?;
    if samples < 2 {
        return Err(ConfigError::new("samples", format!("need at least 2 samples, got {samples}")));
    }
    let params = cfg.params()?;
    let eff = oscillator(&cfg.physics, &params)?;
    let wf = normalize(n_rho, m, eff.zeta_sq, &QuadratureSpec::default())
        .map_err(|e| ConfigError::new("quantum", e.to_string()))?;
    let rho_max = cfg.oracle.rho_max_factor / eff.zeta_sq.sqrt();

    let mut table = Table::new("wavefunction", WAVEFUNCTION_COLUMNS.to_vec());
    describe_run(&mut table, &cfg.physics, &params, cfg.nc.mode);
    table.meta("n_rho", n_rho.to_string());
    table.meta("m", m.to_string());
    table.meta_float("zeta_sq", eff.zeta_sq);
    table.meta_float("norm", wf.norm);
    table.meta_float("rho_max", rho_max);
    let last = (samples - 1) as f64;
    for i in 0..samples {
        let rho = if i + 1 == samples { rho_max } else { rho_max * i as f64 / last };
        table.push(vec![rho.into(), radial_eval(&wf, rho).into()]);
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn render(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {} {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Tolerance on the field-by-field match of read-off and closed-form coefficients.
pub const DECOMPOSE_MATCH_TOL: f64 = 1e-12;

/// Commutator algebra, constraint, coefficient matching and radial oracle.
/// Unlike the other commands this one honours `nc.theta_bar_override`.
pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifyReport, ConfigError> {
    let mut params = cfg.params()?;
    if let Some(tb) = cfg.nc.theta_bar_override {
        if !tb.is_finite() {
            return Err(ConfigError::new("nc.theta_bar_override", "must be finite"));
        }
        params = params.with_theta_bar_override(tb);
    }
    let mut checks = Vec::new();

    let map = bopp_for(&params);
    let algebra = verify_algebra(&map, &params);
    for c in &algebra.checks {
        checks.push(CheckLine {
            name: format!("algebra {}", c.label()),
            passed: c.deviation <= algebra.tolerance,
            detail: format!("deviation={:e} tol={:e}", c.deviation, algebra.tolerance),
        });
    }
    let residual = params.constraint_residual().abs();
    checks.push(CheckLine {
        name: "constraint".into(),
        passed: residual <= nclandau_core::nc::CONSTRAINT_TOL,
        detail: format!("residual={residual:e} tol={:e}", nclandau_core::nc::CONSTRAINT_TOL),
    });

    let closed = oscillator(&cfg.physics, &params)?;
    let decomposed = build_hamiltonian(&cfg.physics, &map).and_then(|h| decompose(&h, &cfg.physics));
    checks.push(match decomposed {
        Ok(read) => {
            let d = read.max_relative_difference(&closed);
            CheckLine {
                name: "decompose".into(),
                passed: d <= DECOMPOSE_MATCH_TOL,
                detail: format!(
                    "mu_eff={} omega_eff={} max_rel_diff={d:e} tol={DECOMPOSE_MATCH_TOL:e}",
                    format_float(read.mu_eff),
                    format_float(read.omega_eff)
                ),
            }
        }
        Err(e) => CheckLine { name: "decompose".into(), passed: false, detail: e.to_string() },
    });

    if cfg.oracle.enabled {
        let grid = RadialGrid::scaled(&closed, cfg.oracle.rho_max_factor, cfg.oracle.n_points)
            .map_err(|e| ConfigError::new("oracle", e.to_string()))?;
        for m in 0..=2 {
            checks.push(match compare(&closed, m, &grid, &cfg.physics, 2) {
                Ok(r) => CheckLine {
                    name: format!("oracle m={m}"),
                    passed: r.passed,
                    detail: format!(
                        "n_points={} max_rel_error={:e} tol={:e}",
                        grid.n_points(),
                        r.max_rel_error(),
                        r.tolerance
                    ),
                },
                Err(e) => CheckLine { name: format!("oracle m={m}"), passed: false, detail: e.to_string() },
            });
        }
    }
    Ok(VerifyReport { checks })
}
