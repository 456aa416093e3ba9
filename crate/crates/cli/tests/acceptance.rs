//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use nclandau_core::nc::{constraint_value, CONSTRAINT_TOL};
use nclandau_core::radial::{compare, radial_eigenvalues, RadialGrid};
use nclandau_core::{
    bopp_for, build_hamiltonian, decompose, effective_oscillator, energy, enumerate_levels, normalize, overlap,
    radial_eval, theta_bar_from, verify_algebra, LandauConfig, NcParams, QuadratureSpec, QuantumNumbers,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn algebra_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let count = 200;
    for i in 0..count {
        let hbar = rng.gen_range(0.2..3.0);
        let theta = rng.gen_range(0.01..10.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let params = match i % 4 {
            0 => NcParams::space(hbar, theta),
            _ => NcParams::phase(hbar, theta, rng.gen_range(0.3..=1.0)),
        }
        .map_err(|e| e.to_string())?;
        let report = verify_algebra(&bopp_for(&params), &params);
        ensure(report.passed, || format!("{params:?}: deviation {:e}", report.max_deviation))?;
        worst = worst.max(report.max_deviation);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{count} parameter sets, max deviation {worst:e} <= 1e-12, {elapsed:.2?}"))
}

fn constraint_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..=100 {
        let theta = 0.01 * 1000f64.powf(f64::from(i) / 100.0);
        for j in 0..=50 {
            let alpha = 0.5 + 0.5 * f64::from(j) / 50.0;
            for hbar in [1.0, 0.37] {
                let tb = theta_bar_from(theta, alpha, hbar).map_err(|e| e.to_string())?;
                worst = worst.max((constraint_value(theta, tb, alpha, hbar) - 1.0).abs());
            }
        }
    }
    ensure(worst <= CONSTRAINT_TOL, || format!("residual {worst:e}"))?;
    Ok(format!("101x51 grid, max residual {worst:e} <= 1e-12"))
}

fn coefficient_matching() -> Outcome {
    let cfg = LandauConfig::natural();
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let theta = 0.01 * 1000f64.powf(f64::from(i) / 9.0);
        for j in 0..10 {
            let alpha = 0.5 + 0.5 * f64::from(j) / 9.0;
            let params = NcParams::phase(cfg.hbar, theta, alpha).map_err(|e| e.to_string())?;
            let read = build_hamiltonian(&cfg, &bopp_for(&params))
                .and_then(|h| decompose(&h, &cfg))
                .map_err(|e| e.to_string())?;
            let closed = effective_oscillator(&cfg, &params).map_err(|e| e.to_string())?;
            worst = worst.max(read.max_relative_difference(&closed));
        }
    }
    ensure(worst <= 1e-12, || format!("grid mismatch {worst:e}"))?;

    let space = effective_oscillator(&cfg, &NcParams::space(1.0, 1.0).unwrap()).unwrap();
    ensure((space.mu_eff - 4.0 / 9.0).abs() <= 1e-15 && space.omega_eff == 1.5, || {
        format!("space checkpoint mu={} omega={}", space.mu_eff, space.omega_eff)
    })?;
    let phase = effective_oscillator(&cfg, &NcParams::phase(1.0, 1.0, 0.8).unwrap()).unwrap();
    ensure((phase.mu_eff - 0.49246).abs() < 5e-6 && (phase.omega_eff - 1.96080).abs() < 5e-6, || {
        format!("phase checkpoint mu={} omega={}", phase.mu_eff, phase.omega_eff)
    })?;
    Ok(format!(
        "10x10 grid max rel diff {worst:e}; mu=4/9 omega=3/2; mu'={:.5} omega'={:.5}",
        phase.mu_eff, phase.omega_eff
    ))
}

fn spectrum_oracle() -> Outcome {
    let start = Instant::now();
    let cfg = LandauConfig::natural();
    let regimes = [
        NcParams::commutative(1.0),
        NcParams::space(1.0, 1.0).unwrap(),
        NcParams::phase(1.0, 1.0, 0.8).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    let (mut ratio_lo, mut ratio_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for params in &regimes {
        let eff = effective_oscillator(&cfg, params).map_err(|e| e.to_string())?;
        let grid = RadialGrid::default_for(&eff);
        ensure(grid.n_points() == 4000, || "default grid is not 4000 points".into())?;
        let coarse = RadialGrid::scaled(&eff, 12.0, 1000).unwrap();
        let fine = coarse.refined().unwrap();
        for m in 0..=2 {
            let r = compare(&eff, m, &grid, &cfg, 2).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("{params:?} m={m}: error {:e}", r.max_rel_error()))?;
            worst = worst.max(r.max_rel_error());

            let e1 = radial_eigenvalues(&eff, m, &coarse, &cfg, 3).map_err(|e| e.to_string())?;
            let e2 = radial_eigenvalues(&eff, m, &fine, &cfg, 3).map_err(|e| e.to_string())?;
            for (n, row) in r.rows.iter().enumerate() {
                let ratio = (e1[n] - row.closed_form) / (e2[n] - row.closed_form);
                ratio_lo = ratio_lo.min(ratio);
                ratio_hi = ratio_hi.max(ratio);
            }
        }
    }
    let elapsed = start.elapsed();
    ensure((3.5..=4.5).contains(&ratio_lo) && (3.5..=4.5).contains(&ratio_hi), || {
        format!("convergence ratios in [{ratio_lo}, {ratio_hi}]")
    })?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "max rel error {worst:e} <= 1e-4; halving ratios in [{ratio_lo:.3}, {ratio_hi:.3}]; {elapsed:.2?}"
    ))
}

fn reduction_chain() -> Outcome {
    let cfg = LandauConfig::natural();
    for theta in [0.1, 1.0, 2.5] {
        let phase = NcParams::phase(1.0, theta, 1.0).unwrap();
        ensure(phase.theta_bar() == 0.0, || format!("theta_bar {} at alpha = 1", phase.theta_bar()))?;
        let a = effective_oscillator(&cfg, &phase).unwrap();
        let b = effective_oscillator(&cfg, &NcParams::space(1.0, theta).unwrap()).unwrap();
        ensure(a == b, || format!("theta={theta}: {a:?} vs {b:?}"))?;
        let la = enumerate_levels(&a, &cfg, 6, (-6, 6), 0.4);
        let lb = enumerate_levels(&b, &cfg, 6, (-6, 6), 0.4);
        ensure(la == lb, || format!("theta={theta}: spectra differ"))?;
    }
    let cfg = LandauConfig { q: 2.0, mu: 1.5, b: 0.75, c: 1.0, hbar: 0.9 };
    let flat = effective_oscillator(&cfg, &NcParams::space(cfg.hbar, 0.0).unwrap()).unwrap();
    let w = cfg.larmor_frequency();
    for k in [0.0, 0.4] {
        for e in enumerate_levels(&flat, &cfg, 8, (-8, 8), k) {
            let level = (e.qn.principal() as i64 + 1 - i64::from(e.qn.m)) as f64;
            let want = level * (cfg.hbar * w) + cfg.hbar * cfg.hbar * k * k / (2.0 * cfg.mu);
            ensure(e.e_total == want, || format!("{:?}: {} vs {want}", e.qn, e.e_total))?;
        }
    }
    Ok("alpha=1 phase equals space bit-for-bit; theta=theta_bar=0 equals commutative Landau formula exactly".into())
}

fn degeneracy() -> Outcome {
    let cfg = LandauConfig::natural();
    let mut checked = 0;
    for params in [
        NcParams::commutative(1.0),
        NcParams::space(1.0, 0.7).unwrap(),
        NcParams::phase(1.0, 1.0, 0.8).unwrap(),
        NcParams::phase(1.0, 3.3, 0.55).unwrap(),
    ] {
        let eff = effective_oscillator(&cfg, &params).unwrap();
        for n_rho in 0..5 {
            for k in [0.0, 0.25, 1.7] {
                let base = energy(QuantumNumbers { n_rho, m: 0, k }, &eff, &cfg).e_total;
                for m in 0..=50 {
                    let e = energy(QuantumNumbers { n_rho, m, k }, &eff, &cfg).e_total;
                    ensure(e == base, || format!("{params:?} n={n_rho} m={m} k={k}: {e} != {base}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} states, all m in [0, 50] exactly equal per (n_rho, k)"))
}

fn wavefunction_suite() -> Outcome {
    let cfg = LandauConfig::natural();
    let eff = effective_oscillator(&cfg, &NcParams::phase(1.0, 1.0, 0.8).unwrap()).unwrap();
    let quad = QuadratureSpec::default();
    let mut worst_overlap: f64 = 0.0;
    for m in 0..=2 {
        let wfs = (0..=4)
            .map(|n| normalize(n, m, eff.zeta_sq, &quad))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        for (i, a) in wfs.iter().enumerate() {
            for (j, b) in wfs.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst_overlap = worst_overlap.max((overlap(a, b, &quad) - want).abs());
            }
        }
        for wf in &wfs {
            let upper = 12.0 / eff.zeta_sq.sqrt();
            let samples: Vec<f64> = (1..20_000).map(|s| radial_eval(wf, upper * f64::from(s) / 20_000.0)).collect();
            let nodes = samples.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
            ensure(nodes == wf.n_rho as usize, || format!("n={} m={m}: {nodes} nodes", wf.n_rho))?;
        }
    }
    ensure(worst_overlap <= 1e-8, || format!("overlap error {worst_overlap:e}"))?;

    let zeta = eff.zeta_sq.sqrt();
    let h = 1e-3 / zeta;
    let kinetic = cfg.hbar * cfg.hbar / (2.0 * eff.mu_eff);
    let mut worst_residual: f64 = 0.0;
    for m in 0..=2i32 {
        for n in 0..=2u32 {
            let wf = normalize(n, m, eff.zeta_sq, &quad).map_err(|e| e.to_string())?;
            let e_xy = f64::from(2 * n + m.unsigned_abs() + 1) * cfg.hbar * eff.omega_eff;
            let (mut diff, mut scale) = (0.0f64, 0.0f64);
            for s in 20..600 {
                let rho = f64::from(s) * 0.01 / zeta;
                let (rm, r0, rp) = (radial_eval(&wf, rho - h), radial_eval(&wf, rho), radial_eval(&wf, rho + h));
                let lap = (rp - 2.0 * r0 + rm) / (h * h) + (rp - rm) / (2.0 * h * rho) - f64::from(m * m) * r0 / (rho * rho);
                let applied = -kinetic * lap + 0.5 * eff.mu_eff * eff.omega_eff * eff.omega_eff * rho * rho * r0;
                diff = diff.max((applied - e_xy * r0).abs());
                scale = scale.max((e_xy * r0).abs());
            }
            worst_residual = worst_residual.max(diff / scale);
        }
    }
    ensure(worst_residual <= 1e-4, || format!("operator residual {worst_residual:e}"))?;
    Ok(format!(
        "orthonormality error {worst_overlap:e} <= 1e-8; node counts match; operator residual {worst_residual:e} <= 1e-4"
    ))
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nclandau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let spectrum_cfg = write(
        d,
        "spectrum.json",
        r#"{"physics": {"q": 1, "mu": 1, "B": 2, "c": 1, "hbar": 1},
            "nc": {"mode": "phase", "theta": 1, "alpha": 0.8},
            "quantum": {"max_N": 6, "m_range": [-6, 6], "k": 0.3}}"#,
    );
    let sweep_cfg = write(
        d,
        "sweep.json",
        r#"{"physics": {"q": 1, "mu": 1, "B": 2, "c": 1, "hbar": 1},
            "nc": {"mode": "phase", "theta": 1},
            "sweep": {"parameter": "alpha", "start": 1.0, "stop": 0.5, "steps": 64}}"#,
    );
    for (cmd, cfg) in [("spectrum", &spectrum_cfg), ("sweep", &sweep_cfg)] {
        for format in ["csv", "json"] {
            let mut files = Vec::new();
            for run in 0..2 {
                let path = d.join(format!("{cmd}-{run}.{format}")).to_str().unwrap().to_owned();
                let out = run_cli(&[cmd, "--config", cfg, "--format", format, "--output", &path]);
                ensure(out.status.success(), || format!("{cmd} exited with {:?}", out.status.code()))?;
                files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
            }
            ensure(files[0] == files[1], || format!("{cmd} {format} output differs between runs"))?;
            ensure(!files[0].is_empty(), || format!("{cmd} {format} output is empty"))?;
        }
    }

    let ok = run_cli(&["verify", "--preset", "natural"]);
    ensure(ok.status.code() == Some(0), || format!("verify on preset exited {:?}", ok.status.code()))?;
    let corrupt = write(
        d,
        "corrupt.json",
        r#"{"physics": {"q": 1, "mu": 1, "B": 2, "c": 1, "hbar": 1},
            "nc": {"mode": "phase", "theta": 1, "alpha": 0.8, "theta_bar_override": 0.5}}"#,
    );
    let bad = run_cli(&["verify", "--config", &corrupt]);
    ensure(bad.status.code() == Some(1), || format!("verify with corrupted theta_bar exited {:?}", bad.status.code()))?;
    Ok("spectrum and sweep byte-identical across runs (csv, json); verify exits 0 on preset, 1 with corrupted theta_bar".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 algebra suite", algebra_suite),
        ("2 constraint identity", constraint_identity),
        ("3 coefficient matching", coefficient_matching),
        ("4 spectrum oracle", spectrum_oracle),
        ("5 reduction chain", reduction_chain),
        ("6 degeneracy", degeneracy),
        ("7 wavefunction suite", wavefunction_suite),
        ("8 cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
