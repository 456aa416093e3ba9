//! Shared fixtures for the benchmarks.

use nclandau_core::{effective_oscillator, EffectiveOscillator, LandauConfig, NcParams};

/// The three reference regimes at the natural preset: commutative, space (θ = 1)
/// and phase space (θ = 1, α = 0.8).
pub fn regimes() -> Vec<(&'static str, NcParams)> {
    vec![
        ("commutative", NcParams::commutative(1.0)),
        ("space", NcParams::space(1.0, 1.0).expect("valid space parameters")),
        ("phase", NcParams::phase(1.0, 1.0, 0.8).expect("valid phase parameters")),
    ]
}

pub fn preset_oscillator(params: &NcParams) -> (LandauConfig, EffectiveOscillator) {
    let cfg = LandauConfig::natural();
    let eff = effective_oscillator(&cfg, params).expect("preset oscillator");
    (cfg, eff)
}
