//! Casimir force engine for plane and sphere-plane geometries.
//!
//! The crate computes the Casimir free energy, pressure and force from the
//! scattering formula: mirrors are described by reflection amplitudes at
//! imaginary frequencies, the cavity by the log-determinant of its
//! round-trip operator, and observables by Matsubara sums (finite T) or
//! frequency integrals (T = 0) over transverse modes.
//!
//! Modules, bottom up:
//!
//! * [`constants`]: frozen CODATA values and derived scales.
//! * [`materials`]: permittivities along the imaginary axis (plasma,
//!   Drude, tabulated data).
//! * [`reflection`]: Fresnel amplitudes per mode, including the delicate
//!   xi = 0 limits.
//! * [`engine`]: the specular scattering formula; free energy, pressure,
//!   reduction factors.
//! * [`nonspecular`]: the same determinant over an explicit mode basis,
//!   for operator-valued (non-diagonal) reflection.
//! * [`pfa`]: proximity-force transcription to the sphere-plane geometry
//!   used by experiments.

pub mod constants;
pub mod engine;
pub mod error;
pub mod materials;
pub mod nonspecular;
pub mod pfa;
pub mod quad;
pub mod reflection;

pub use engine::{
    casimir_energy_per_area, casimir_pressure, eta_e, eta_f, evaluate, free_energy_finite_t,
    free_energy_zero_t, kappa_rule, log_round_trip, matsubara_xi, pressure, thermal_ratio,
    thermal_ratio_with_params, CavityConfig, EngineResult, KappaRule, NumericTolerances,
};
pub use error::{CasimirError, Result};
pub use materials::{Material, OpticalTable};
pub use nonspecular::{
    free_energy_nonspecular, trace_ln_d, trace_ln_d_eigen, BasisNode, ModeBasis, ModeOperator,
    NonspecularResult, OperatorRole,
};
pub use pfa::{
    beta_within_experimental_bound, pfa_force, pfa_gradient, slope_at_origin, RhoSample,
    SphereGeometry, BETA_G_EXPERIMENTAL_BOUND, BETA_G_GOLD, BETA_G_PERFECT,
};
pub use reflection::{fresnel, kappa, perfect_amplitude, ModePoint, Polarization};
