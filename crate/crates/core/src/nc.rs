//! Deformation parameters and the Bopp-shift representations of the
//! noncommutative position and momentum operators.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::weyl::{Monomial, OperatorPoly, Symbol};

/// Tolerance on `α² + θθ̄/(4ħ²α²) = 1`.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Tolerance used by [`verify_algebra`] on every commutator.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// `θ̄ = 4ħ²α²(1 − α²)/θ`, the momentum noncommutativity that keeps
/// `[x̂_i, p̂_j] = iħ δ_ij` for a given `θ` and scaling `α`.
pub fn theta_bar_from(theta: f64, alpha: f64, hbar: f64) -> Result<f64> {
    if theta == 0.0 {
        return Err(Error::Domain(
            "theta_bar is undefined at theta = 0; use alpha = 1 and theta_bar = 0 directly".into(),
        ));
    }
    check_alpha(alpha)?;
    check_hbar(hbar)?;
    let a2 = alpha * alpha;
    Ok(4.0 * hbar * hbar * a2 * (1.0 - a2) / theta)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Config(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    Ok(())
}

fn check_hbar(hbar: f64) -> Result<()> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(Error::Config(format!("hbar must be positive, got {hbar}")));
    }
    Ok(())
}

/// Left-hand side of the constraint, `α² + θθ̄/(4ħ²α²)`.
pub fn constraint_value(theta: f64, theta_bar: f64, alpha: f64, hbar: f64) -> f64 {
    let a2 = alpha * alpha;
    a2 + theta * theta_bar / (4.0 * hbar * hbar * a2)
}

/// The deformation tuple `(ħ, θ, θ̄, α)`.
///
/// Values built through the checked constructors always satisfy either
/// `α = 1, θ̄ = 0` (noncommutative space, or commutative when `θ = 0`) or the
/// phase-space constraint. [`NcParams::with_theta_bar_override`] is the only
/// way to obtain a value that breaks it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NcParams {
    hbar: f64,
    theta: f64,
    theta_bar: f64,
    alpha: f64,
}

impl NcParams {
    pub fn new(hbar: f64, theta: f64, theta_bar: f64, alpha: f64) -> Result<Self> {
        check_hbar(hbar)?;
        check_alpha(alpha)?;
        if !theta.is_finite() || !theta_bar.is_finite() {
            return Err(Error::Config("theta and theta_bar must be finite".into()));
        }
        let p = NcParams { hbar, theta, theta_bar, alpha };
        if alpha == 1.0 && theta_bar == 0.0 {
            return Ok(p);
        }
        if theta == 0.0 {
            return Err(Error::Domain(
                "theta = 0 requires alpha = 1 and theta_bar = 0".into(),
            ));
        }
        let residual = p.constraint_residual();
        if residual.abs() > CONSTRAINT_TOL {
            return Err(Error::Config(format!(
                "alpha^2 + theta*theta_bar/(4 hbar^2 alpha^2) = {} deviates from 1 by {residual:e}",
                1.0 + residual
            )));
        }
        Ok(p)
    }

    /// Ordinary quantum mechanics: `θ = θ̄ = 0`, `α = 1`.
    pub fn commutative(hbar: f64) -> Self {
        NcParams { hbar, theta: 0.0, theta_bar: 0.0, alpha: 1.0 }
    }

    /// Noncommutative space: `α = 1`, `θ̄ = 0`.
    pub fn space(hbar: f64, theta: f64) -> Result<Self> {
        Self::new(hbar, theta, 0.0, 1.0)
    }

    /// Noncommutative phase space with `θ̄` derived from `θ` and `α`.
    pub fn phase(hbar: f64, theta: f64, alpha: f64) -> Result<Self> {
        let theta_bar = theta_bar_from(theta, alpha, hbar)?;
        Self::new(hbar, theta, theta_bar, alpha)
    }

    /// Returns a copy with `θ̄` replaced and no constraint check.
    ///
    /// Only meant for exercising [`verify_algebra`] on deliberately broken input.
    pub fn with_theta_bar_override(self, theta_bar: f64) -> Self {
        NcParams { theta_bar, ..self }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn theta_bar(&self) -> f64 {
        self.theta_bar
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// True for the `α = 1, θ̄ = 0` family (which includes the commutative point).
    pub fn is_space(&self) -> bool {
        self.alpha == 1.0 && self.theta_bar == 0.0
    }

    pub fn is_commutative(&self) -> bool {
        self.is_space() && self.theta == 0.0
    }

    /// `α² + θθ̄/(4ħ²α²) − 1`.
    pub fn constraint_residual(&self) -> f64 {
        constraint_value(self.theta, self.theta_bar, self.alpha, self.hbar) - 1.0
    }
}

/// Linear images of the six canonical symbols under a Bopp shift.
#[derive(Clone, Debug, PartialEq)]
pub struct BoppMap {
    images: [OperatorPoly; 6],
}

impl BoppMap {
    /// Checks that every image is linear with real coefficients, that all
    /// share one ħ, and that `z`, `p_z` map to themselves.
    pub fn new(images: [OperatorPoly; 6]) -> Result<Self> {
        let hbar = images[0].hbar();
        for (s, img) in Symbol::ALL.iter().zip(images.iter()) {
            if img.hbar() != hbar {
                return Err(Error::Config(format!("image of {s} uses a different hbar")));
            }
            if img.degree() > 1 {
                return Err(Error::Config(format!("image of {s} is not linear")));
            }
            if !img.is_real() {
                return Err(Error::Config(format!("image of {s} has complex coefficients")));
            }
        }
        for s in [Symbol::Z, Symbol::Pz] {
            if images[s.index()] != OperatorPoly::symbol(s, hbar) {
                return Err(Error::Config(format!("{s} must map to itself")));
            }
        }
        Ok(BoppMap { images })
    }

    pub fn identity(hbar: f64) -> Self {
        BoppMap { images: Symbol::ALL.map(|s| OperatorPoly::symbol(s, hbar)) }
    }

    pub fn image(&self, s: Symbol) -> &OperatorPoly {
        &self.images[s.index()]
    }

    pub fn hbar(&self) -> f64 {
        self.images[0].hbar()
    }

    /// Real coefficient of `target` in the image of `s`.
    pub fn coefficient(&self, s: Symbol, target: Symbol) -> f64 {
        self.image(s).coefficient(&Monomial::symbol(target)).re
    }

    pub fn substitution(&self) -> crate::weyl::Substitution {
        Symbol::ALL
            .iter()
            .fold(crate::weyl::Substitution::new(), |acc, &s| acc.with(s, self.image(s).clone()))
    }
}

fn linear(hbar: f64, parts: &[(Symbol, f64)]) -> OperatorPoly {
    OperatorPoly::from_terms(
        parts.iter().map(|&(s, c)| (Monomial::symbol(s), Complex64::new(c, 0.0))),
        hbar,
    )
}

/// NC-space shift `x̂ = x − (θ/2ħ) p_y`, `ŷ = y + (θ/2ħ) p_x`; momenta unchanged.
pub fn bopp_space(params: &NcParams) -> Result<BoppMap> {
    if !params.is_space() {
        return Err(Error::Config(
            "bopp_space needs alpha = 1 and theta_bar = 0; use bopp_phase for phase-space parameters".into(),
        ));
    }
    let h = params.hbar();
    let s = params.theta() / (2.0 * h);
    Ok(BoppMap {
        images: [
            linear(h, &[(Symbol::X, 1.0), (Symbol::Py, -s)]),
            linear(h, &[(Symbol::Y, 1.0), (Symbol::Px, s)]),
            OperatorPoly::symbol(Symbol::Z, h),
            OperatorPoly::symbol(Symbol::Px, h),
            OperatorPoly::symbol(Symbol::Py, h),
            OperatorPoly::symbol(Symbol::Pz, h),
        ],
    })
}

/// Generalized shift on NC phase space:
///
/// ```text
/// x̂ = αx − (θ/2ħα) p_y     p̂_x = α p_x + (θ̄/2ħα) y
/// ŷ = αy + (θ/2ħα) p_x     p̂_y = α p_y − (θ̄/2ħα) x
/// ```
///
/// With `α = 1`, `θ̄ = 0` the result is identical to [`bopp_space`].
pub fn bopp_phase(params: &NcParams) -> BoppMap {
    let h = params.hbar();
    let a = params.alpha();
    let s = params.theta() / (2.0 * h * a);
    let t = params.theta_bar() / (2.0 * h * a);
    BoppMap {
        images: [
            linear(h, &[(Symbol::X, a), (Symbol::Py, -s)]),
            linear(h, &[(Symbol::Y, a), (Symbol::Px, s)]),
            OperatorPoly::symbol(Symbol::Z, h),
            linear(h, &[(Symbol::Y, t), (Symbol::Px, a)]),
            linear(h, &[(Symbol::X, -t), (Symbol::Py, a)]),
            OperatorPoly::symbol(Symbol::Pz, h),
        ],
    }
}

/// Selects [`bopp_space`] or [`bopp_phase`] from the parameter family.
pub fn bopp_for(params: &NcParams) -> BoppMap {
    if params.is_space() {
        bopp_space(params).expect("space parameters")
    } else {
        bopp_phase(params)
    }
}

/// One commutator `[â, b̂]` of mapped operators against its target constant.
#[derive(Clone, Debug)]
pub struct CommutatorCheck {
    pub left: Symbol,
    pub right: Symbol,
    pub expected: Complex64,
    pub actual: OperatorPoly,
    pub deviation: f64,
}

impl CommutatorCheck {
    pub fn label(&self) -> String {
        format!("[{}^, {}^]", self.left, self.right)
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraReport {
    pub checks: Vec<CommutatorCheck>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl AlgebraReport {
    pub fn failures(&self) -> impl Iterator<Item = &CommutatorCheck> {
        self.checks.iter().filter(move |c| c.deviation > self.tolerance)
    }

    pub fn check(&self, left: Symbol, right: Symbol) -> Option<&CommutatorCheck> {
        self.checks.iter().find(|c| c.left == left && c.right == right)
    }
}

/// Target value of `[â, b̂]`: `iθ` for `(x, y)`, `iθ̄` for `(p_x, p_y)`,
/// `iħ` for conjugate pairs and zero otherwise.
pub fn target_commutator(left: Symbol, right: Symbol, params: &NcParams) -> Complex64 {
    use Symbol::*;
    let i = Complex64::new(0.0, 1.0);
    match (left, right) {
        (X, Y) => i * params.theta(),
        (Px, Py) => i * params.theta_bar(),
        (l, r) if !l.is_momentum() && r.is_momentum() && l.axis() == r.axis() => i * params.hbar(),
        _ => Complex64::new(0.0, 0.0),
    }
}

/// Evaluates every commutator among the fifteen pairs of mapped operators
/// (positions with positions, momenta with momenta, positions with momenta)
/// and compares them with [`target_commutator`].
pub fn verify_algebra(map: &BoppMap, params: &NcParams) -> AlgebraReport {
    let mut checks = Vec::with_capacity(15);
    for (i, &left) in Symbol::ALL.iter().enumerate() {
        for &right in &Symbol::ALL[i + 1..] {
            let actual = map
                .image(left)
                .commutator(map.image(right))
                .expect("images share hbar");
            let expected = target_commutator(left, right, params);
            let deviation = actual
                .sub(&OperatorPoly::constant(expected, actual.hbar()))
                .expect("same hbar")
                .max_abs_coefficient();
            checks.push(CommutatorCheck { left, right, expected, actual, deviation });
        }
    }
    let max_deviation = checks.iter().map(|c| c.deviation).fold(0.0, f64::max);
    AlgebraReport { checks, max_deviation, tolerance: ALGEBRA_TOL, passed: max_deviation <= ALGEBRA_TOL }
}
