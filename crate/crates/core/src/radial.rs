//! Finite-difference eigensolver for the planar radial equation.
//!
//! The operator `−(ħ²/2μ)(R'' + R'/ρ − m²R/ρ²) + ½μω²ρ²R` is discretized in
//! flux form on a cell-centred grid `ρ_i = (i − ½)h`. The face at the origin
//! carries zero flux and `R = 0` is imposed at `ρ_max`. Rescaling by `√ρ_i`
//! turns the weighted problem into a symmetric tridiagonal matrix whose low
//! eigenvalues are found by Sturm-sequence bisection. The scheme is second
//! order for every `m`, including `m = 0`.
//!
//! Nothing in this module uses the closed-form spectrum except [`compare`],
//! which only reports against it.

use crate::error::{Error, Result};
use crate::landau::{EffectiveOscillator, LandauConfig};

/// Default number of interior nodes.
pub const DEFAULT_POINTS: usize = 4000;
/// Default `ρ_max` in units of `1/ζ`.
pub const DEFAULT_RHO_MAX_FACTOR: f64 = 12.0;
/// Smallest admissible `ρ_max` in units of `1/ζ`.
pub const MIN_RHO_MAX_FACTOR: f64 = 8.0;
/// Relative error allowed by [`compare`].
pub const ORACLE_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialGrid {
    rho_max: f64,
    n_points: usize,
}

impl RadialGrid {
    pub fn new(rho_max: f64, n_points: usize) -> Result<Self> {
        if n_points < 16 {
            return Err(Error::Config(format!("radial grid needs at least 16 points, got {n_points}")));
        }
        if !(rho_max > 0.0 && rho_max.is_finite()) {
            return Err(Error::Config(format!("rho_max must be positive, got {rho_max}")));
        }
        Ok(RadialGrid { rho_max, n_points })
    }

    /// `ρ_max = factor/ζ` for the oscillator.
    pub fn scaled(eff: &EffectiveOscillator, factor: f64, n_points: usize) -> Result<Self> {
        Self::new(factor / eff.zeta_sq.sqrt(), n_points)
    }

    /// 4000 points out to `12/ζ`.
    pub fn default_for(eff: &EffectiveOscillator) -> Self {
        Self::scaled(eff, DEFAULT_RHO_MAX_FACTOR, DEFAULT_POINTS).expect("valid default grid")
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.rho_max / (self.n_points as f64 + 0.5)
    }

    /// Cell centre of node `i` (0-based).
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.spacing()
    }

    /// Same spacing, `n_points` scaled so that `ρ_max` grows by `factor`.
    pub fn extended(&self, factor: f64) -> Result<Self> {
        let h = self.spacing();
        let n = ((self.rho_max * factor) / h - 0.5).round() as usize;
        Self::new((n as f64 + 0.5) * h, n)
    }

    /// Half the spacing over the same interval.
    pub fn refined(&self) -> Result<Self> {
        Self::new(self.rho_max, 2 * self.n_points)
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalSystem {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::Config("empty tridiagonal system".into()));
        }
        if off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::Config(format!(
                "off-diagonal length {} does not match dimension {}",
                off_diagonal.len(),
                diagonal.len()
            )));
        }
        Ok(TridiagonalSystem { diagonal, off_diagonal })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    /// Number of eigenvalues strictly below `lambda` (negative LDLᵀ pivots).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut q = self.diagonal[0] - lambda;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diagonal.len() {
            let e = self.off_diagonal[i - 1];
            let pivot = if q == 0.0 { f64::EPSILON * e.abs().max(f64::MIN_POSITIVE) } else { q };
            q = self.diagonal[i] - lambda - e * e / pivot;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off_diagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    /// The `count` smallest eigenvalues in ascending order, by bisection.
    pub fn lowest_eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        if count == 0 || count > self.dim() {
            return Err(Error::Config(format!(
                "requested {count} eigenvalues of a {}-dimensional system",
                self.dim()
            )));
        }
        let (lo, hi) = self.gershgorin_bounds();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        let pad = 1e-12 * scale;
        let (lo, hi) = (lo - pad, hi + pad);
        let mut out = Vec::with_capacity(count);
        let mut left_start = lo;
        for k in 0..count {
            // smallest λ with sturm_count(λ) > k
            let mut a = left_start;
            let mut b = hi;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if self.sturm_count(mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let value = 0.5 * (a + b);
            out.push(value);
            left_start = a;
        }
        Ok(out)
    }
}

/// Builds the symmetric matrix for the radial equation of angular number `m`.
pub fn discretize(
    eff: &EffectiveOscillator,
    m: i32,
    grid: &RadialGrid,
    cfg: &LandauConfig,
) -> Result<TridiagonalSystem> {
    let min_rho = MIN_RHO_MAX_FACTOR / eff.zeta_sq.sqrt();
    if grid.rho_max() < min_rho * (1.0 - 1e-12) {
        return Err(Error::Config(format!(
            "rho_max = {} is below 8/zeta = {min_rho}",
            grid.rho_max()
        )));
    }
    let n = grid.n_points();
    let h = grid.spacing();
    let kinetic = cfg.hbar * cfg.hbar / (2.0 * eff.mu_eff);
    let m2 = f64::from(m) * f64::from(m);
    let spring = 0.5 * eff.mu_eff * eff.omega_eff * eff.omega_eff;

    let diagonal = (0..n)
        .map(|i| {
            let r = grid.node(i);
            2.0 * kinetic / (h * h) + kinetic * m2 / (r * r) + spring * r * r
        })
        .collect();
    let off_diagonal = (0..n - 1)
        .map(|i| {
            let (r0, r1) = (grid.node(i), grid.node(i + 1));
            let face = r0 + 0.5 * h;
            -kinetic * face / (h * h * (r0 * r1).sqrt())
        })
        .collect();
    TridiagonalSystem::new(diagonal, off_diagonal)
}

/// Lowest `count` eigenvalues of the discretized radial operator.
pub fn radial_eigenvalues(
    eff: &EffectiveOscillator,
    m: i32,
    grid: &RadialGrid,
    cfg: &LandauConfig,
    count: usize,
) -> Result<Vec<f64>> {
    discretize(eff, m, grid, cfg)?.lowest_eigenvalues(count)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleRow {
    pub n_rho: u32,
    pub oracle: f64,
    pub closed_form: f64,
    pub rel_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub m: i32,
    pub grid: RadialGrid,
    pub rows: Vec<OracleRow>,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleReport {
    pub fn max_rel_error(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_error).fold(0.0, f64::max)
    }
}

/// Runs the finite-difference solver and compares `n_ρ = 0..=n_max` with
/// `E_xy = (2n_ρ + |m| + 1)ħω_eff`.
pub fn compare(
    eff: &EffectiveOscillator,
    m: i32,
    grid: &RadialGrid,
    cfg: &LandauConfig,
    n_max: u32,
) -> Result<OracleReport> {
    let oracle = radial_eigenvalues(eff, m, grid, cfg, n_max as usize + 1)?;
    let rows: Vec<OracleRow> = oracle
        .iter()
        .enumerate()
        .map(|(n, &value)| {
            let n_rho = n as u32;
            let level = 2 * n_rho + m.unsigned_abs() + 1;
            let closed_form = f64::from(level) * cfg.hbar * eff.omega_eff;
            OracleRow { n_rho, oracle: value, closed_form, rel_error: ((value - closed_form) / closed_form).abs() }
        })
        .collect();
    let passed = rows.iter().all(|r| r.rel_error <= ORACLE_TOL);
    Ok(OracleReport { m, grid: *grid, rows, tolerance: ORACLE_TOL, passed })
}
