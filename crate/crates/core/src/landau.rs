//! Symmetric-gauge Landau Hamiltonian and its effective two-dimensional oscillator.
//!
//! The Bopp-shifted kinetic momenta are linear in the canonical operators,
//!
//! ```text
//! p̂_x + (qB/2c) ŷ = a p_x + b y,     p̂_y − (qB/2c) x̂ = a p_y − b x,
//! a = α + qBθ/(4ħαc),                b = (qB/2c) α + θ̄/(2ħα),
//! ```
//!
//! so the Hamiltonian splits into an isotropic oscillator of mass `μ/a²` and
//! frequency `ab/μ`, a term `−(ab/μ) l_z`, and free motion along `z`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nc::{BoppMap, NcParams};
use crate::weyl::{Monomial, OperatorPoly, Substitution, Symbol};

/// Relative tolerance used when reading the oscillator out of a Hamiltonian.
pub const DECOMPOSE_TOL: f64 = 1e-12;

/// Physical inputs in one consistent unit system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LandauConfig {
    pub q: f64,
    pub mu: f64,
    pub b: f64,
    pub c: f64,
    pub hbar: f64,
}

impl LandauConfig {
    pub fn new(q: f64, mu: f64, b: f64, c: f64, hbar: f64) -> Result<Self> {
        let cfg = LandauConfig { q, mu, b, c, hbar };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `q = μ = c = ħ = 1`, `B = 2`, giving `ω_L = 1`.
    pub fn natural() -> Self {
        LandauConfig { q: 1.0, mu: 1.0, b: 2.0, c: 1.0, hbar: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.q, self.mu, self.b, self.c, self.hbar].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Config("physical parameters must be finite".into()));
        }
        if self.mu <= 0.0 {
            return Err(Error::Config(format!("mu must be positive, got {}", self.mu)));
        }
        if self.c <= 0.0 {
            return Err(Error::Config(format!("c must be positive, got {}", self.c)));
        }
        if self.hbar <= 0.0 {
            return Err(Error::Config(format!("hbar must be positive, got {}", self.hbar)));
        }
        if self.q * self.b < 0.0 {
            return Err(Error::Config(format!(
                "q*B must be non-negative, got q = {}, B = {}",
                self.q, self.b
            )));
        }
        Ok(())
    }

    /// `qB/2c`, the coupling between position and kinetic momentum.
    pub fn coupling(&self) -> f64 {
        self.q * self.b / (2.0 * self.c)
    }

    /// `ω_L = qB/(2μc)`.
    pub fn larmor_frequency(&self) -> f64 {
        self.coupling() / self.mu
    }
}

/// Symmetric-gauge vector potential `(−By/2, Bx/2, 0)`.
pub fn vector_potential(cfg: &LandauConfig, point: [f64; 3]) -> [f64; 3] {
    [-0.5 * cfg.b * point[1], 0.5 * cfg.b * point[0], 0.0]
}

/// Effective oscillator of the planar sector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveOscillator {
    pub mu_eff: f64,
    pub omega_eff: f64,
    /// `μ_eff ω_eff / ħ`, the Gaussian width parameter of the eigenfunctions.
    pub zeta_sq: f64,
    /// Momentum prefactor `a`.
    pub a_coef: f64,
    /// Coordinate prefactor `b`.
    pub b_coef: f64,
}

impl EffectiveOscillator {
    fn from_coefficients(cfg: &LandauConfig, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::Degenerate(format!("momentum prefactor a = {a} is not positive")));
        }
        if !(b > 0.0) {
            return Err(Error::Degenerate(format!("coordinate prefactor b = {b} is not positive")));
        }
        let mu_eff = cfg.mu / (a * a);
        let omega_eff = a * b / cfg.mu;
        Ok(EffectiveOscillator { mu_eff, omega_eff, zeta_sq: mu_eff * omega_eff / cfg.hbar, a_coef: a, b_coef: b })
    }

    /// Builds an oscillator directly from mass and frequency; the prefactors are
    /// reconstructed relative to `cfg.mu`.
    pub fn from_mass_frequency(cfg: &LandauConfig, mu_eff: f64, omega_eff: f64) -> Result<Self> {
        if !(mu_eff > 0.0 && omega_eff > 0.0) {
            return Err(Error::Degenerate(format!(
                "mass {mu_eff} and frequency {omega_eff} must be positive"
            )));
        }
        let a = (cfg.mu / mu_eff).sqrt();
        let b = cfg.mu * omega_eff / a;
        Ok(EffectiveOscillator { mu_eff, omega_eff, zeta_sq: mu_eff * omega_eff / cfg.hbar, a_coef: a, b_coef: b })
    }

    /// Largest relative difference over all five fields.
    pub fn max_relative_difference(&self, other: &Self) -> f64 {
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE);
        [
            rel(self.mu_eff, other.mu_eff),
            rel(self.omega_eff, other.omega_eff),
            rel(self.zeta_sq, other.zeta_sq),
            rel(self.a_coef, other.a_coef),
            rel(self.b_coef, other.b_coef),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn check_same_hbar(cfg: &LandauConfig, hbar: f64) -> Result<()> {
    if cfg.hbar != hbar {
        return Err(Error::Config(format!(
            "hbar of the physical configuration ({}) differs from the deformation's ({hbar})",
            cfg.hbar
        )));
    }
    Ok(())
}

/// Closed-form effective oscillator for the given deformation.
pub fn effective_oscillator(cfg: &LandauConfig, params: &NcParams) -> Result<EffectiveOscillator> {
    cfg.validate()?;
    check_same_hbar(cfg, params.hbar())?;
    let alpha = params.alpha();
    let a = alpha + cfg.q * cfg.b * params.theta() / (4.0 * cfg.hbar * alpha * cfg.c);
    let b = cfg.coupling() * alpha + params.theta_bar() / (2.0 * cfg.hbar * alpha);
    EffectiveOscillator::from_coefficients(cfg, a, b)
}

/// `(1/2μ)[(p̂_x + (qB/2c)ŷ)² + (p̂_y − (qB/2c)x̂)² + p̂_z²]`, expanded in normal order.
pub fn build_hamiltonian(cfg: &LandauConfig, map: &BoppMap) -> Result<OperatorPoly> {
    cfg.validate()?;
    check_same_hbar(cfg, map.hbar())?;
    let h = cfg.hbar;
    let k = cfg.coupling();
    let lin = |parts: &[(Symbol, f64)]| {
        OperatorPoly::from_terms(
            parts.iter().map(|&(s, c)| (Monomial::symbol(s), Complex64::new(c, 0.0))),
            h,
        )
    };
    let subst: Substitution = map.substitution();
    let pi_x = lin(&[(Symbol::Px, 1.0), (Symbol::Y, k)]).substitute(&subst)?;
    let pi_y = lin(&[(Symbol::Py, 1.0), (Symbol::X, -k)]).substitute(&subst)?;
    let pi_z = lin(&[(Symbol::Pz, 1.0)]).substitute(&subst)?;
    let sum = pi_x
        .multiply(&pi_x)?
        .add(&pi_y.multiply(&pi_y)?)?
        .add(&pi_z.multiply(&pi_z)?)?;
    Ok(sum.scale_real(1.0 / (2.0 * cfg.mu)))
}

fn mono(factors: &[(Symbol, u32)]) -> Monomial {
    Monomial::from_factors(factors)
}

/// Reads the effective oscillator back out of a symmetric-gauge Hamiltonian.
///
/// Mass comes from the `p_x²` coefficient. The frequency is read three ways
/// (from `x²` via the mass, from `−x p_y`, from `y p_x`) and all three must
/// agree; every other coefficient must match the expected structure.
pub fn decompose(h: &OperatorPoly, cfg: &LandauConfig) -> Result<EffectiveOscillator> {
    use Symbol::*;
    cfg.validate()?;
    let scale = h.max_abs_coefficient();
    if scale == 0.0 {
        return Err(Error::Structural("Hamiltonian is zero".into()));
    }
    let tol = DECOMPOSE_TOL;
    let close = |u: f64, v: f64| (u - v).abs() <= tol * u.abs().max(v.abs()).max(tol);

    let pxx = mono(&[(Px, 2)]);
    let pyy = mono(&[(Py, 2)]);
    let pzz = mono(&[(Pz, 2)]);
    let xx = mono(&[(X, 2)]);
    let yy = mono(&[(Y, 2)]);
    let xpy = mono(&[(X, 1), (Py, 1)]);
    let ypx = mono(&[(Y, 1), (Px, 1)]);
    let expected = [pxx, pyy, pzz, xx, yy, xpy, ypx];

    for (m, c) in h.terms() {
        if c.im.abs() > tol * scale {
            return Err(Error::Structural(format!("coefficient of {m} is not real: {c}")));
        }
        if !expected.contains(m) && c.norm() > tol * scale {
            return Err(Error::Structural(format!("unexpected term {m} with coefficient {c}")));
        }
    }

    let read = |m: &Monomial| h.coefficient(m).re;
    let (c_px, c_py, c_pz) = (read(&pxx), read(&pyy), read(&pzz));
    let (c_x, c_y) = (read(&xx), read(&yy));
    let (c_xpy, c_ypx) = (read(&xpy), read(&ypx));

    if !close(c_px, c_py) {
        return Err(Error::Structural(format!("p_x^2 ({c_px}) and p_y^2 ({c_py}) coefficients differ")));
    }
    if !close(c_x, c_y) {
        return Err(Error::Structural(format!("x^2 ({c_x}) and y^2 ({c_y}) coefficients differ")));
    }
    if !close(c_pz, 1.0 / (2.0 * cfg.mu)) {
        return Err(Error::Structural(format!("p_z^2 coefficient {c_pz} is not 1/(2 mu)")));
    }
    if !(c_px > 0.0 && c_x > 0.0) {
        return Err(Error::Structural("kinetic and confining coefficients must be positive".into()));
    }

    let mu_eff = 1.0 / (2.0 * c_px);
    let omega_from_potential = (2.0 * c_x / mu_eff).sqrt();
    let omega_from_xpy = -c_xpy;
    let omega_from_ypx = c_ypx;
    if !(close(omega_from_potential, omega_from_xpy) && close(omega_from_potential, omega_from_ypx)) {
        return Err(Error::Structural(format!(
            "frequency readings disagree: {omega_from_potential}, {omega_from_xpy}, {omega_from_ypx}"
        )));
    }
    EffectiveOscillator::from_mass_frequency(cfg, mu_eff, omega_from_xpy)
}

/// The three mutually commuting pieces `H_xy`, `l_z` and `H_∥`.
#[derive(Clone, Debug)]
pub struct Sectors {
    pub h_xy: OperatorPoly,
    /// `x p_y − y p_x`.
    pub l_z: OperatorPoly,
    pub h_parallel: OperatorPoly,
}

/// Assembles the sector operators for an oscillator; `H = H_xy − ω_eff l_z + H_∥`.
pub fn sectors(eff: &EffectiveOscillator, cfg: &LandauConfig) -> Sectors {
    use Symbol::*;
    let h = cfg.hbar;
    let re = |v: f64| Complex64::new(v, 0.0);
    let kin = 1.0 / (2.0 * eff.mu_eff);
    let pot = 0.5 * eff.mu_eff * eff.omega_eff * eff.omega_eff;
    let h_xy = OperatorPoly::from_terms(
        [
            (mono(&[(Px, 2)]), re(kin)),
            (mono(&[(Py, 2)]), re(kin)),
            (mono(&[(X, 2)]), re(pot)),
            (mono(&[(Y, 2)]), re(pot)),
        ],
        h,
    );
    let l_z = OperatorPoly::from_terms([(mono(&[(X, 1), (Py, 1)]), re(1.0)), (mono(&[(Y, 1), (Px, 1)]), re(-1.0))], h);
    let h_parallel = OperatorPoly::term(mono(&[(Pz, 2)]), re(1.0 / (2.0 * cfg.mu)), h);
    Sectors { h_xy, l_z, h_parallel }
}
