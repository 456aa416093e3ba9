//! Closed-form Landau levels.
//!
//! `E = (2n_ρ + |m| + 1)ħω − mħω + ħ²k²/2μ`. For `m ≥ 0` the `m` dependence
//! cancels, which is the usual infinite degeneracy of a Landau level.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::landau::{effective_oscillator, EffectiveOscillator, LandauConfig};
use crate::nc::NcParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumNumbers {
    pub n_rho: u32,
    pub m: i32,
    pub k: f64,
}

impl QuantumNumbers {
    pub fn new(n_rho: u32, m: i32, k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::Config(format!("k must be finite, got {k}")));
        }
        Ok(QuantumNumbers { n_rho, m, k })
    }

    pub fn ground() -> Self {
        QuantumNumbers { n_rho: 0, m: 0, k: 0.0 }
    }

    /// `N = 2n_ρ + |m|`.
    pub fn principal(&self) -> u64 {
        2 * u64::from(self.n_rho) + u64::from(self.m.unsigned_abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub qn: QuantumNumbers,
    pub e_xy: f64,
    pub e_lz: f64,
    pub e_par: f64,
    pub e_total: f64,
}

/// Energy of one state together with its three parts.
///
/// `e_total` is evaluated from the integer level index `N + 1 − m`, so states
/// of one degenerate level share a bit-identical energy. The parts sum to it
/// up to rounding.
pub fn energy(qn: QuantumNumbers, eff: &EffectiveOscillator, cfg: &LandauConfig) -> SpectrumEntry {
    let quantum = cfg.hbar * eff.omega_eff;
    let n_plus_one = qn.principal() + 1;
    let level = n_plus_one as i64 - i64::from(qn.m);
    let e_xy = n_plus_one as f64 * quantum;
    let e_lz = (-i64::from(qn.m)) as f64 * quantum;
    let e_par = cfg.hbar * cfg.hbar * qn.k * qn.k / (2.0 * cfg.mu);
    let e_total = level as f64 * quantum + e_par;
    SpectrumEntry { qn, e_xy, e_lz, e_par, e_total }
}

fn by_energy_then_numbers(a: &SpectrumEntry, b: &SpectrumEntry) -> Ordering {
    a.e_total
        .total_cmp(&b.e_total)
        .then(a.qn.n_rho.cmp(&b.qn.n_rho))
        .then(a.qn.m.cmp(&b.qn.m))
}

/// All states with `2n_ρ + |m| ≤ max_n` and `m_lo ≤ m ≤ m_hi`, sorted by
/// energy and then by `(n_ρ, m)`.
pub fn enumerate_levels(
    eff: &EffectiveOscillator,
    cfg: &LandauConfig,
    max_n: u32,
    m_range: (i32, i32),
    k: f64,
) -> Vec<SpectrumEntry> {
    let (m_lo, m_hi) = m_range;
    let mut out = Vec::new();
    if m_lo > m_hi {
        return out;
    }
    let max_n = i64::from(max_n);
    for m in m_lo..=m_hi {
        let abs_m = i64::from(m).abs();
        if abs_m > max_n {
            continue;
        }
        let n_max = (max_n - abs_m) / 2;
        for n_rho in 0..=n_max as u32 {
            out.push(energy(QuantumNumbers { n_rho, m, k }, eff, cfg));
        }
    }
    out.sort_by(by_energy_then_numbers);
    out
}

/// `E(params) − E(commutative)` for one state.
pub fn landau_correction(cfg: &LandauConfig, params: &NcParams, qn: QuantumNumbers) -> Result<f64> {
    let deformed = effective_oscillator(cfg, params)?;
    let flat = effective_oscillator(cfg, &NcParams::commutative(params.hbar()))?;
    Ok(energy(qn, &deformed, cfg).e_total - energy(qn, &flat, cfg).e_total)
}
