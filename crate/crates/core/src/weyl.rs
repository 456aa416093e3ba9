//! Polynomial algebra over the canonical operators `x, y, z, p_x, p_y, p_z`.
//!
//! [`OperatorPoly`] stores operator polynomials in normal order (every
//! position symbol to the left of every momentum symbol) so that two equal
//! operators always have identical term maps. Products are reordered with the
//! canonical relation `[x_i, p_j] = iħ δ_ij`.
//!
//! [`PhaseSpaceFn`] holds ordinary commuting polynomials on phase space and
//! carries the Moyal star product built from the `θ`, `θ̄` deformation.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nc::NcParams;

/// One of the six canonical symbols, listed in normal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    X,
    Y,
    Z,
    Px,
    Py,
    Pz,
}

impl Symbol {
    pub const ALL: [Symbol; 6] = [Symbol::X, Symbol::Y, Symbol::Z, Symbol::Px, Symbol::Py, Symbol::Pz];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_momentum(self) -> bool {
        self.index() >= 3
    }

    /// Spatial axis (0, 1, 2) the symbol belongs to.
    pub fn axis(self) -> usize {
        self.index() % 3
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::X => "x",
            Symbol::Y => "y",
            Symbol::Z => "z",
            Symbol::Px => "p_x",
            Symbol::Py => "p_y",
            Symbol::Pz => "p_z",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Product of non-negative powers of the canonical symbols, read in normal order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u32; 6],
}

impl Monomial {
    /// The empty product.
    pub const UNIT: Monomial = Monomial { exps: [0; 6] };

    pub fn new(exps: [u32; 6]) -> Self {
        Monomial { exps }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::power(s, 1)
    }

    pub fn power(s: Symbol, n: u32) -> Self {
        let mut exps = [0; 6];
        exps[s.index()] = n;
        Monomial { exps }
    }

    /// Builds a monomial from `(symbol, power)` factors; repeated symbols accumulate.
    pub fn from_factors(factors: &[(Symbol, u32)]) -> Self {
        let mut exps = [0; 6];
        for &(s, n) in factors {
            exps[s.index()] += n;
        }
        Monomial { exps }
    }

    pub fn exponents(&self) -> [u32; 6] {
        self.exps
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.exps[s.index()]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps == [0; 6]
    }

    /// Commutative product: exponents add.
    fn times(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += o;
        }
        Monomial { exps }
    }

    /// Partial derivative as `(multiplicity, monomial)`, or `None` if it vanishes.
    fn derivative(&self, s: Symbol) -> Option<(u32, Monomial)> {
        let n = self.exps[s.index()];
        if n == 0 {
            return None;
        }
        let mut exps = self.exps;
        exps[s.index()] -= 1;
        Some((n, Monomial { exps }))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut first = true;
        for s in Symbol::ALL {
            let n = self.exponent(s);
            if n == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if n == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{n}")?;
            }
        }
        Ok(())
    }
}

type Terms = BTreeMap<Monomial, Complex64>;

fn accumulate(terms: &mut Terms, mono: Monomial, coef: Complex64) {
    if coef == Complex64::new(0.0, 0.0) {
        return;
    }
    let slot = terms.entry(mono).or_insert(Complex64::new(0.0, 0.0));
    *slot += coef;
}

fn prune(terms: &mut Terms, tol: f64) {
    terms.retain(|_, c| c.norm() > tol);
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * f64::from(n - j) / f64::from(j + 1);
    }
    acc
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Operator polynomial over the canonical symbols with a fixed ħ.
#[derive(Clone, Debug)]
pub struct OperatorPoly {
    terms: Terms,
    hbar: f64,
    drop_tol: f64,
}

impl PartialEq for OperatorPoly {
    fn eq(&self, other: &Self) -> bool {
        self.hbar == other.hbar && self.terms == other.terms
    }
}

impl OperatorPoly {
    pub fn zero(hbar: f64) -> Self {
        OperatorPoly { terms: Terms::new(), hbar, drop_tol: 0.0 }
    }

    pub fn one(hbar: f64) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), hbar)
    }

    pub fn constant(c: Complex64, hbar: f64) -> Self {
        Self::term(Monomial::UNIT, c, hbar)
    }

    pub fn symbol(s: Symbol, hbar: f64) -> Self {
        Self::term(Monomial::symbol(s), Complex64::new(1.0, 0.0), hbar)
    }

    pub fn term(mono: Monomial, c: Complex64, hbar: f64) -> Self {
        let mut terms = Terms::new();
        accumulate(&mut terms, mono, c);
        OperatorPoly { terms, hbar, drop_tol: 0.0 }
    }

    /// Builds a polynomial from normal-ordered terms; duplicate monomials are summed.
    pub fn from_terms<I>(terms: I, hbar: f64) -> Self
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut map = Terms::new();
        for (m, c) in terms {
            accumulate(&mut map, m, c);
        }
        prune(&mut map, 0.0);
        OperatorPoly { terms: map, hbar, drop_tol: 0.0 }
    }

    /// Sets the magnitude below which coefficients are discarded and prunes.
    pub fn with_drop_tolerance(mut self, tol: f64) -> Self {
        self.drop_tol = tol.max(0.0);
        prune(&mut self.terms, self.drop_tol);
        self
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn drop_tolerance(&self) -> f64 {
        self.drop_tol
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree among stored terms; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, mono: &Monomial) -> Complex64 {
        self.terms.get(mono).copied().unwrap_or_default()
    }

    /// Largest coefficient magnitude, 0 for the zero polynomial.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn check_hbar(&self, other: &Self, op: &str) -> Result<()> {
        if self.hbar != other.hbar {
            return Err(Error::Config(format!(
                "{op}: mismatched hbar values {} and {}",
                self.hbar, other.hbar
            )));
        }
        Ok(())
    }

    fn rebuild(&self, mut terms: Terms, other_tol: f64) -> Self {
        let drop_tol = self.drop_tol.max(other_tol);
        prune(&mut terms, drop_tol);
        OperatorPoly { terms, hbar: self.hbar, drop_tol }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_hbar(other, "add")?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, *m, *c);
        }
        Ok(self.rebuild(terms, other.drop_tol))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_hbar(other, "sub")?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, *m, -*c);
        }
        Ok(self.rebuild(terms, other.drop_tol))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        self.rebuild(terms, 0.0)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Normal-ordered product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_hbar(other, "multiply")?;
        let mut terms = Terms::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let base = ca * cb;
                for (mono, w) in monomial_product(ma, mb, self.hbar) {
                    accumulate(&mut terms, mono, base * w);
                }
            }
        }
        Ok(self.rebuild(terms, other.drop_tol))
    }

    /// `self^n` by repeated multiplication; `self^0` is the identity.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = OperatorPoly::one(self.hbar);
        acc.drop_tol = self.drop_tol;
        for _ in 0..n {
            acc = acc.multiply(self).expect("same hbar");
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        ab.sub(&ba)
    }

    /// Replaces every symbol by its image and re-expands in normal order.
    ///
    /// A monomial `x^a y^b z^c p_x^d p_y^e p_z^f` becomes the ordered product
    /// of the images raised to the same powers. Images must be of degree ≤ 1.
    /// Symbols missing from `images` map to themselves.
    pub fn substitute(&self, images: &Substitution) -> Result<Self> {
        for (s, img) in images.iter() {
            if img.hbar != self.hbar {
                return Err(Error::Config(format!(
                    "substitute: image of {s} has hbar {} but the polynomial has {}",
                    img.hbar, self.hbar
                )));
            }
            if img.degree() > 1 {
                return Err(Error::Config(format!(
                    "substitute: image of {s} has degree {}; only linear images are allowed",
                    img.degree()
                )));
            }
        }
        let image_of = |s: Symbol| -> OperatorPoly {
            images.get(s).cloned().unwrap_or_else(|| OperatorPoly::symbol(s, self.hbar))
        };
        let bases: Vec<OperatorPoly> = Symbol::ALL.iter().map(|&s| image_of(s)).collect();
        let mut powers: BTreeMap<(usize, u32), OperatorPoly> = BTreeMap::new();
        let mut out = OperatorPoly::zero(self.hbar);
        out.drop_tol = self.drop_tol;
        for (mono, coef) in &self.terms {
            let mut prod = OperatorPoly::constant(*coef, self.hbar);
            for (i, &n) in mono.exps.iter().enumerate() {
                if n == 0 {
                    continue;
                }
                let p = powers.entry((i, n)).or_insert_with(|| bases[i].pow(n));
                prod = prod.multiply(p)?;
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})·{m}")?;
        }
        Ok(())
    }
}

/// Normal-ordered expansion of `X^α P^β · X^γ P^δ` as a list of weighted monomials.
///
/// Per axis, `p^b x^c = Σ_k C(b,k) C(c,k) k! (-iħ)^k x^{c-k} p^{b-k}`; different
/// axes commute, so the result is the product of the per-axis sums.
fn monomial_product(a: &Monomial, b: &Monomial, hbar: f64) -> Vec<(Monomial, Complex64)> {
    let mut out = vec![(a.times(b), Complex64::new(1.0, 0.0))];
    let minus_i_hbar = Complex64::new(0.0, -hbar);
    for axis in 0..3 {
        let p_left = a.exps[axis + 3];
        let x_right = b.exps[axis];
        let kmax = p_left.min(x_right);
        if kmax == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (kmax as usize + 1));
        for (mono, w) in &out {
            for k in 0..=kmax {
                let weight = binomial(p_left, k) * binomial(x_right, k) * factorial(k);
                let mut exps = mono.exps;
                exps[axis] -= k;
                exps[axis + 3] -= k;
                next.push((Monomial { exps }, w * minus_i_hbar.powu(k) * weight));
            }
        }
        out = next;
    }
    out
}

/// Images of canonical symbols used by [`OperatorPoly::substitute`].
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    images: [Option<OperatorPoly>; 6],
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, s: Symbol, image: OperatorPoly) -> Self {
        self.images[s.index()] = Some(image);
        self
    }

    pub fn insert(&mut self, s: Symbol, image: OperatorPoly) {
        self.images[s.index()] = Some(image);
    }

    pub fn get(&self, s: Symbol) -> Option<&OperatorPoly> {
        self.images[s.index()].as_ref()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, &OperatorPoly)> {
        Symbol::ALL.into_iter().filter_map(move |s| self.get(s).map(|p| (s, p)))
    }
}

/// Commuting polynomial on phase space (no ħ attached).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PhaseSpaceFn {
    terms: Terms,
}

impl PhaseSpaceFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_terms([(Monomial::UNIT, c)])
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::from_terms([(Monomial::symbol(s), Complex64::new(1.0, 0.0))])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut map = Terms::new();
        for (m, c) in terms {
            accumulate(&mut map, m, c);
        }
        prune(&mut map, 0.0);
        PhaseSpaceFn { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Complex64 {
        self.terms.get(mono).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).map(|(m, c)| (*m, *c)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, *c))
                .chain(other.terms.iter().map(|(m, c)| (*m, -*c))),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    /// Ordinary pointwise product.
    pub fn pointwise(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .flat_map(|(ma, ca)| other.terms.iter().map(move |(mb, cb)| (ma.times(mb), ca * cb))),
        )
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Moyal star product with the phase-space kernel
    /// `exp[(i/2α²)(θ ∂ˣ∧∂ʸ + θ̄ ∂^{p_x}∧∂^{p_y})]`.
    ///
    /// The exponential series is summed to all orders; it terminates because
    /// every application of the bidifferential operator lowers the degree of
    /// both factors. With `θ = θ̄ = 0` the result is the pointwise product.
    pub fn moyal_star(&self, other: &Self, params: &NcParams) -> Self {
        let a2 = params.alpha() * params.alpha();
        let cx = Complex64::new(0.0, params.theta() / (2.0 * a2));
        let cp = Complex64::new(0.0, params.theta_bar() / (2.0 * a2));
        // (symbol acting on f, symbol acting on g, weight)
        let legs = [
            (Symbol::X, Symbol::Y, cx),
            (Symbol::Y, Symbol::X, -cx),
            (Symbol::Px, Symbol::Py, cp),
            (Symbol::Py, Symbol::Px, -cp),
        ];

        let mut current: BTreeMap<(Monomial, Monomial), Complex64> = BTreeMap::new();
        for (mf, cf) in &self.terms {
            for (mg, cg) in &other.terms {
                *current.entry((*mf, *mg)).or_default() += cf * cg;
            }
        }
        let mut result = Terms::new();
        let mut order = 0u32;
        while !current.is_empty() {
            let inv_fact = 1.0 / factorial(order);
            for ((mf, mg), c) in &current {
                accumulate(&mut result, mf.times(mg), c * inv_fact);
            }
            let mut next: BTreeMap<(Monomial, Monomial), Complex64> = BTreeMap::new();
            for ((mf, mg), c) in &current {
                for &(sf, sg, w) in &legs {
                    if w == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    if let (Some((nf, df)), Some((ng, dg))) = (mf.derivative(sf), mg.derivative(sg)) {
                        *next.entry((df, dg)).or_default() += c * w * f64::from(nf * ng);
                    }
                }
            }
            next.retain(|_, c| *c != Complex64::new(0.0, 0.0));
            current = next;
            order += 1;
        }
        prune(&mut result, 0.0);
        PhaseSpaceFn { terms: result }
    }

    /// `f ⋆ g − g ⋆ f`.
    pub fn star_commutator(&self, other: &Self, params: &NcParams) -> Self {
        self.moyal_star(other, params).sub(&other.moyal_star(self, params))
    }
}
