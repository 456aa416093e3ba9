//! Radial eigenfunctions `R(ρ) = ρ^|m| F(−n_ρ, |m|+1, ζ²ρ²) e^{−ζ²ρ²/2}` and the
//! full `ψ = R(ρ) e^{imφ} e^{ikz}`.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectrum::QuantumNumbers;

/// Terminating Kummer series `F(−n, b, x) = Σ_{j=0}^{n} (−n)_j / (b)_j · x^j / j!`.
pub fn kummer_poly(n: u32, b: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..n {
        let jf = f64::from(j);
        term *= (jf - f64::from(n)) / (b + jf) * x / (jf + 1.0);
        sum += term;
    }
    sum
}

/// Composite Gauss–Legendre rule on `[0, cutoff_factor/ζ]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub panels: usize,
    pub order: usize,
    /// Cutoff in units of the oscillator length `1/ζ`.
    pub cutoff_factor: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { panels: 48, order: 24, cutoff_factor: 12.0 }
    }
}

impl QuadratureSpec {
    /// Same rule with twice as many panels.
    pub fn doubled(&self) -> Self {
        QuadratureSpec { panels: self.panels * 2, ..*self }
    }

    fn validate(&self) -> Result<()> {
        if self.panels == 0 || self.order == 0 {
            return Err(Error::Config("quadrature needs at least one panel and one node".into()));
        }
        if !(self.cutoff_factor > 0.0) {
            return Err(Error::Config("quadrature cutoff must be positive".into()));
        }
        Ok(())
    }

    /// Upper limit for a state: the configured cutoff, widened for highly
    /// excited states so the tail beyond the classical turning point is kept.
    fn cutoff(&self, n_rho: u32, m: i32, zeta_sq: f64) -> f64 {
        let turning = (4.0 * f64::from(n_rho) + 2.0 * f64::from(m.unsigned_abs()) + 2.0).sqrt();
        self.cutoff_factor.max(turning + 8.0) / zeta_sq.sqrt()
    }

    fn integrate<F: Fn(f64) -> f64>(&self, upper: f64, f: F) -> f64 {
        let rule = GaussLegendre::new(NonZeroUsize::new(self.order).expect("order > 0"));
        let width = upper / self.panels as f64;
        (0..self.panels)
            .map(|i| {
                let a = i as f64 * width;
                rule.integrate(a, a + width, &f)
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialWavefunction {
    pub n_rho: u32,
    pub m: i32,
    pub zeta_sq: f64,
    pub norm: f64,
}

impl RadialWavefunction {
    /// Unnormalized (`norm = 1`) wavefunction.
    pub fn bare(n_rho: u32, m: i32, zeta_sq: f64) -> Result<Self> {
        if !(zeta_sq > 0.0 && zeta_sq.is_finite()) {
            return Err(Error::Config(format!("zeta^2 must be positive, got {zeta_sq}")));
        }
        Ok(RadialWavefunction { n_rho, m, zeta_sq, norm: 1.0 })
    }

    pub fn eval(&self, rho: f64) -> f64 {
        radial_eval(self, rho)
    }
}

pub fn radial_eval(wf: &RadialWavefunction, rho: f64) -> f64 {
    let s = wf.zeta_sq * rho * rho;
    let abs_m = wf.m.unsigned_abs();
    let b = f64::from(abs_m) + 1.0;
    wf.norm * rho.powi(abs_m as i32) * kummer_poly(wf.n_rho, b, s) * (-0.5 * s).exp()
}

fn norm_integral(wf: &RadialWavefunction, quad: &QuadratureSpec) -> f64 {
    let upper = quad.cutoff(wf.n_rho, wf.m, wf.zeta_sq);
    quad.integrate(upper, |r| {
        let v = radial_eval(wf, r);
        v * v * r
    })
}

/// Relative change allowed between a quadrature estimate and its panel-doubled refinement.
pub const QUADRATURE_TOL: f64 = 1e-8;

/// Normalizes `R` so that `∫₀^∞ |R|² ρ dρ = 1`.
///
/// The integral is evaluated with `quad` and with twice as many panels; the
/// finer estimate is used and the two must agree to [`QUADRATURE_TOL`].
pub fn normalize(n_rho: u32, m: i32, zeta_sq: f64, quad: &QuadratureSpec) -> Result<RadialWavefunction> {
    quad.validate()?;
    let bare = RadialWavefunction::bare(n_rho, m, zeta_sq)?;
    let coarse = norm_integral(&bare, quad);
    let fine = norm_integral(&bare, &quad.doubled());
    if !(fine > 0.0) || ((coarse - fine) / fine).abs() > QUADRATURE_TOL {
        return Err(Error::Accuracy(format!(
            "radial norm integral did not converge: {coarse} vs {fine} after doubling panels"
        )));
    }
    Ok(RadialWavefunction { norm: 1.0 / fine.sqrt(), ..bare })
}

/// `∫₀^∞ R_a R_b ρ dρ` with the quadrature rule of `quad`.
pub fn overlap(a: &RadialWavefunction, b: &RadialWavefunction, quad: &QuadratureSpec) -> f64 {
    let upper = quad
        .cutoff(a.n_rho, a.m, a.zeta_sq)
        .max(quad.cutoff(b.n_rho, b.m, b.zeta_sq));
    quad.integrate(upper, |r| radial_eval(a, r) * radial_eval(b, r) * r)
}

/// `ψ(ρ, φ, z) = R(ρ) e^{imφ} e^{ikz}`.
pub fn full_wavefunction_eval(qn: &QuantumNumbers, wf: &RadialWavefunction, point: (f64, f64, f64)) -> Complex64 {
    let (rho, phi, z) = point;
    let phase = f64::from(qn.m) * phi + qn.k * z;
    Complex64::from_polar(radial_eval(wf, rho), phase)
}
