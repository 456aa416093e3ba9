//! Landau levels of a charged particle on noncommutative space and
//! noncommutative phase space.
//!
//! The deformed position and momentum operators are realized by linear Bopp
//! shifts of the canonical ones ([`nc`]). Substituting them into the
//! symmetric-gauge Hamiltonian and expanding in normal order ([`weyl`],
//! [`landau`]) produces an isotropic oscillator with renormalized mass and
//! frequency, whose levels and eigenfunctions are closed-form ([`spectrum`],
//! [`wavefunction`]). [`radial`] re-derives the planar spectrum numerically.

pub mod error;
pub mod landau;
pub mod nc;
pub mod radial;
pub mod spectrum;
pub mod wavefunction;
pub mod weyl;

pub use error::{Error, Result};
pub use landau::{
    build_hamiltonian, decompose, effective_oscillator, sectors, vector_potential, EffectiveOscillator,
    LandauConfig, Sectors,
};
pub use nc::{
    bopp_for, bopp_phase, bopp_space, theta_bar_from, verify_algebra, AlgebraReport, BoppMap, CommutatorCheck,
    NcParams,
};
pub use radial::{compare, discretize, OracleReport, OracleRow, RadialGrid, TridiagonalSystem};
pub use spectrum::{energy, enumerate_levels, landau_correction, QuantumNumbers, SpectrumEntry};
pub use wavefunction::{
    full_wavefunction_eval, kummer_poly, normalize, overlap, radial_eval, QuadratureSpec, RadialWavefunction,
};
pub use weyl::{Monomial, OperatorPoly, PhaseSpaceFn, Substitution, Symbol};
