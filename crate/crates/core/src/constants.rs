//! Physical constants and the characteristic length scales of the problem.
//!
//! Two wavelengths organize all Casimir physics between metals:
//!
//! * the thermal wavelength `lambda_T = hbar c / (kB T)`, which separates the
//!   quantum (L << lambda_T) and classical (L >> lambda_T) regimes of the
//!   vacuum-plus-thermal field fluctuations, about 7.6 um at room temperature;
//! * the plasma wavelength `lambda_P = 2 pi c / omega_P`, below which a metal
//!   mirror stops being a good reflector, 136 nm for gold.
//!
//! Constants are the 2018 CODATA exact values (SI re-definition); they are
//! frozen here so every result in the crate is reproducible bit for bit.

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum (m/s), exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Boltzmann constant (J/K), exact.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Plasma wavelength of gold (m): 136 nm.
pub const GOLD_PLASMA_WAVELENGTH: f64 = 136e-9;

/// Default Drude relaxation rate for gold, as a fraction of the plasma
/// frequency: gamma = 0.004 omega_P.
pub const GOLD_GAMMA_RATIO: f64 = 0.004;

/// Thermal wavelength `lambda_T = hbar c / (kB T)` in m.
///
/// `thermal_wavelength(300.0)` = 7.63295e-6 m.
///
/// # Panics
/// Panics if `temperature <= 0`.
pub fn thermal_wavelength(temperature: f64) -> f64 {
    assert!(
        temperature > 0.0 && temperature.is_finite(),
        "thermal_wavelength: temperature must be positive, got {temperature}"
    );
    HBAR * SPEED_OF_LIGHT / (BOLTZMANN * temperature)
}

/// Plasma wavelength `lambda_P = 2 pi c / omega_P` in m for a plasma
/// frequency in rad/s.
///
/// # Panics
/// Panics if `omega_p <= 0`.
pub fn plasma_wavelength(omega_p: f64) -> f64 {
    assert!(
        omega_p > 0.0 && omega_p.is_finite(),
        "plasma_wavelength: omega_p must be positive, got {omega_p}"
    );
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / omega_p
}

/// Plasma frequency `omega_P = 2 pi c / lambda_P` in rad/s for a plasma
/// wavelength in m. Inverse of [`plasma_wavelength`].
///
/// `omega_from_wavelength(136e-9)` = 1.3850379e16 rad/s (gold).
///
/// # Panics
/// Panics if `lambda_p <= 0`.
pub fn omega_from_wavelength(lambda_p: f64) -> f64 {
    assert!(
        lambda_p > 0.0 && lambda_p.is_finite(),
        "omega_from_wavelength: lambda_p must be positive, got {lambda_p}"
    );
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / lambda_p
}

/// Plasma frequency of gold (rad/s), derived from the 136 nm plasma
/// wavelength.
pub fn gold_omega_p() -> f64 {
    omega_from_wavelength(GOLD_PLASMA_WAVELENGTH)
}
