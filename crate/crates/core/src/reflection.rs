//! Fresnel reflection amplitudes on the imaginary frequency axis.
//!
//! For a plane wave of imaginary frequency xi and transverse wave vector k
//! hitting a half-space of permittivity eps(i xi), the amplitudes are real
//! and bounded by one:
//!
//! ```text
//! kappa   = sqrt(k^2 + xi^2/c^2)           (vacuum axial wave number)
//! kappa_t = sqrt(k^2 + eps xi^2/c^2)       (medium axial wave number)
//! r_TE    = (kappa - kappa_t) / (kappa + kappa_t)        <= 0
//! r_TM    = (eps kappa - kappa_t) / (eps kappa + kappa_t) >= 0
//! ```
//!
//! The xi = 0 limits, which carry the whole large-distance thermal physics,
//! are hard-coded per material class instead of being left to floating-point
//! cancellation: a perfect mirror keeps (-1, +1), the plasma model keeps a
//! finite TE amplitude through its penetration depth, and any material with
//! finite DC conductivity (Drude) loses the TE zero mode entirely, which is
//! the origin of the factor-of-two difference between the two metal
//! descriptions at large separation.

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{CasimirError, Result};
use crate::materials::{Material, StaticResponse};

/// Field polarization with respect to the plane of incidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    /// Transverse electric (s).
    TE,
    /// Transverse magnetic (p).
    TM,
}

impl Polarization {
    /// Both polarizations, in the fixed summation order used by the engine.
    pub const BOTH: [Polarization; 2] = [Polarization::TE, Polarization::TM];
}

/// A point of the (imaginary frequency, transverse wave vector) mode plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePoint {
    /// Imaginary frequency xi >= 0 (rad/s).
    pub xi: f64,
    /// Transverse wave vector magnitude k >= 0 (rad/m).
    pub k: f64,
    /// Polarization of the mode.
    pub polarization: Polarization,
}

impl ModePoint {
    /// Convenience constructor.
    pub fn new(xi: f64, k: f64, polarization: Polarization) -> Self {
        Self {
            xi,
            k,
            polarization,
        }
    }
}

/// Axial wave number `kappa = sqrt(k^2 + xi^2/c^2)` in rad/m.
pub fn kappa(mode: &ModePoint) -> f64 {
    f64::hypot(mode.k, mode.xi / SPEED_OF_LIGHT)
}

/// Reflection amplitude of an ideal mirror: -1 for TE, +1 for TM, at every
/// frequency and angle. This sign pair is the eps -> infinity limit of the
/// Fresnel formulas; only the product of the two mirror amplitudes enters
/// any observable.
pub fn perfect_amplitude(polarization: Polarization) -> f64 {
    match polarization {
        Polarization::TE => -1.0,
        Polarization::TM => 1.0,
    }
}

/// Fresnel amplitude for one mirror at one mode point.
///
/// For xi > 0 the amplitude follows from eps(i xi); for xi = 0 the
/// material-class limit is used (see the module docs). Errors if the mode
/// point is outside its domain or the material parameters are invalid.
pub fn fresnel(mode: &ModePoint, material: &Material) -> Result<f64> {
    if !(mode.xi.is_finite() && mode.xi >= 0.0) {
        return Err(CasimirError::Domain(format!(
            "fresnel: xi must be finite and >= 0, got {}",
            mode.xi
        )));
    }
    if !(mode.k.is_finite() && mode.k >= 0.0) {
        return Err(CasimirError::Domain(format!(
            "fresnel: k must be finite and >= 0, got {}",
            mode.k
        )));
    }
    material.validate()?;
    if matches!(material, Material::Perfect) {
        return Ok(perfect_amplitude(mode.polarization));
    }
    if mode.xi == 0.0 {
        return Ok(fresnel_static(
            mode.polarization,
            mode.k,
            material.static_response(),
        ));
    }
    let eps = material.epsilon(mode.xi)?;
    Ok(fresnel_from_eps(
        mode.polarization,
        kappa(mode),
        mode.xi / SPEED_OF_LIGHT,
        eps,
    ))
}

/// Fresnel amplitude from a pre-evaluated permittivity. `kap` is the vacuum
/// axial wave number of the mode and `xi_c = xi / c`; requires eps >= 1
/// finite. The engine calls this directly so eps(i xi) is computed once per
/// Matsubara frequency rather than once per quadrature node.
pub(crate) fn fresnel_from_eps(polarization: Polarization, kap: f64, xi_c: f64, eps: f64) -> f64 {
    debug_assert!(eps >= 1.0 && eps.is_finite());
    // kappa_t^2 = kappa^2 + (eps - 1) xi^2/c^2 avoids forming k^2 again and
    // is exact for eps = 1 (vacuum reflects nothing).
    let kappa_t = (kap * kap + (eps - 1.0) * xi_c * xi_c).sqrt();
    match polarization {
        Polarization::TE => (kap - kappa_t) / (kap + kappa_t),
        Polarization::TM => (eps * kap - kappa_t) / (eps * kap + kappa_t),
    }
}

/// xi = 0 amplitude limits per material class.
pub(crate) fn fresnel_static(polarization: Polarization, k: f64, resp: StaticResponse) -> f64 {
    match (polarization, resp) {
        (p, StaticResponse::PerfectConductor) => perfect_amplitude(p),
        (Polarization::TE, StaticResponse::PlasmaLike { omega_p }) => {
            let kp = f64::hypot(k, omega_p / SPEED_OF_LIGHT);
            (k - kp) / (k + kp)
        }
        (Polarization::TM, StaticResponse::PlasmaLike { .. }) => 1.0,
        (Polarization::TE, StaticResponse::DrudeLike) => 0.0,
        (Polarization::TM, StaticResponse::DrudeLike) => 1.0,
        (Polarization::TE, StaticResponse::Dielectric { .. }) => 0.0,
        (Polarization::TM, StaticResponse::Dielectric { eps0 }) => (eps0 - 1.0) / (eps0 + 1.0),
    }
}
