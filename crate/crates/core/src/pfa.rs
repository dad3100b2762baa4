//! Proximity force approximation for the sphere-plane geometry.
//!
//! Force measurements are done between a sphere and a plane, while the
//! scattering engine works in the plane-plane geometry. When the sphere
//! radius R dwarfs the gap L, averaging the plane-plane result over the
//! local separations of the curved surface gives the Derjaguin limits
//!
//! ```text
//! F(L) = 2 pi R (F/A)(L)        G(L) = 2 pi R |P(L)|
//! ```
//!
//! for the force and the force gradient. The module also ships the slope
//! utilities used to compare measured gradients against the PFA:
//! `rho_G = G/G_PFA = 1 + beta_G x + O(x^2)` with x = L/R, fitted at low
//! x with the intercept pinned to 1, and the reference slopes and
//! experimental bound that the fit is judged against.

use crate::engine::{evaluate, CavityConfig};
use crate::error::{CasimirError, Result};
use std::f64::consts::PI;

/// Slope at origin of rho_G for perfectly reflecting mirrors, from the
/// full plane-sphere multipole computation.
pub const BETA_G_PERFECT: f64 = -0.48;

/// Slope at origin of rho_G for gold mirrors at ambient temperature.
pub const BETA_G_GOLD: f64 = -0.21;

/// Experimental constraint on |beta_G| from sphere-plane gradient
/// measurements at several radii.
pub const BETA_G_EXPERIMENTAL_BOUND: f64 = 0.4;

/// A sphere of radius R at closest distance L from a plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereGeometry {
    /// Sphere radius (m).
    pub radius: f64,
    /// Closest sphere-plane separation (m).
    pub separation: f64,
}

impl SphereGeometry {
    pub fn new(radius: f64, separation: f64) -> Result<Self> {
        let geom = Self { radius, separation };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(CasimirError::Domain(format!(
                "sphere radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.separation.is_finite() && self.separation > 0.0) {
            return Err(CasimirError::Domain(format!(
                "separation must be positive, got {}",
                self.separation
            )));
        }
        Ok(())
    }

    /// Aspect ratio x = L/R, the PFA expansion parameter.
    pub fn aspect_ratio(&self) -> f64 {
        self.separation / self.radius
    }

    /// True when L/R < 0.01, where the PFA is trusted at the percent
    /// level; callers should warn on the result otherwise.
    pub fn pfa_valid(&self) -> bool {
        self.aspect_ratio() < 0.01
    }
}

/// One measured or synthetic point of the gradient ratio curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoSample {
    /// Aspect ratio x = L/R.
    pub x: f64,
    /// Gradient ratio rho_G = G / G_PFA.
    pub rho: f64,
}

fn cavity_at(geometry: &SphereGeometry, config: &CavityConfig) -> Result<CavityConfig> {
    geometry.validate()?;
    let mut cavity = config.clone();
    cavity.separation = geometry.separation;
    cavity.validate()?;
    Ok(cavity)
}

/// Sphere-plane force `F = 2 pi R (F/A)(L)` (N, negative = attractive).
/// The cavity's separation is overridden by the geometry's.
pub fn pfa_force(geometry: &SphereGeometry, config: &CavityConfig) -> Result<f64> {
    let cavity = cavity_at(geometry, config)?;
    Ok(2.0 * PI * geometry.radius * evaluate(&cavity)?.free_energy_per_area)
}

/// Sphere-plane force gradient `G = 2 pi R |P(L)|` (N/m); positive while
/// the attraction strengthens as the gap closes.
pub fn pfa_gradient(geometry: &SphereGeometry, config: &CavityConfig) -> Result<f64> {
    let cavity = cavity_at(geometry, config)?;
    Ok(2.0 * PI * geometry.radius * evaluate(&cavity)?.pressure.abs())
}

/// Slope beta of `rho = 1 + beta x` fitted to the lowest-x half of the
/// samples (at least 3 points) with the intercept pinned to 1.
///
/// Samples must be sorted ascending in x, with distinct positive x and
/// finite rho; fewer than 3 samples is an error.
pub fn slope_at_origin(samples: &[RhoSample]) -> Result<f64> {
    if samples.len() < 3 {
        return Err(CasimirError::Domain(format!(
            "slope fit needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    for (i, s) in samples.iter().enumerate() {
        if !(s.x.is_finite() && s.x > 0.0) {
            return Err(CasimirError::Domain(format!(
                "sample {i} has x = {}, expected > 0",
                s.x
            )));
        }
        if !s.rho.is_finite() {
            return Err(CasimirError::Domain(format!("sample {i} has non-finite rho")));
        }
        if i > 0 && s.x <= samples[i - 1].x {
            return Err(CasimirError::Domain(format!(
                "samples must be strictly ascending in x (violated at index {i})"
            )));
        }
    }
    let used = (samples.len() / 2).max(3);
    let mut num = 0.0;
    let mut den = 0.0;
    for s in &samples[..used] {
        num += s.x * (s.rho - 1.0);
        den += s.x * s.x;
    }
    Ok(num / den)
}

/// True iff |beta| passes the experimental constraint |beta_G| < 0.4.
pub fn beta_within_experimental_bound(beta: f64) -> bool {
    beta.abs() < BETA_G_EXPERIMENTAL_BOUND
}
