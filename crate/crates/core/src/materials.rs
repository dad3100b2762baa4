//! Dielectric response of the mirrors along the imaginary frequency axis.
//!
//! Everything the scattering formula needs from a material is the
//! permittivity at imaginary frequencies, `eps(i xi)`, a real, smooth,
//! monotonically decreasing function with `eps(i xi) >= 1`. Three models are
//! provided:
//!
//! * **Plasma**: `eps(i xi) = 1 + omega_P^2 / xi^2`, a lossless electron gas;
//! * **Drude**: `eps(i xi) = eps_hat(i xi) + omega_P^2 / (xi (xi + gamma))`,
//!   an electron gas with relaxation rate gamma. The conduction part is the
//!   Dirichlet-kernel form `sigma(i xi)/xi` with
//!   `sigma(i xi) = omega_P^2/(xi + gamma)`; the interband part `eps_hat`
//!   defaults to 1 and may be supplied as tabulated data;
//! * **Tabulated**: `eps(i xi)` reconstructed from measured absorption
//!   `eps''(omega)` through the dispersion relation
//!   `eps(i xi) = 1 + (2/pi) Int_0^inf omega eps''(omega) / (omega^2 + xi^2) d omega`.
//!
//! A perfect mirror is kept as its own variant rather than a limit, so the
//! reflection module can use the exact unit amplitudes.

use crate::constants::{gold_omega_p, GOLD_GAMMA_RATIO};
use crate::error::{CasimirError, Result};
use std::io::Read;
use std::path::Path;

/// Measured absorption spectrum: rows of (omega in rad/s, eps'') with
/// strictly increasing omega. The integrand of the dispersion relation is
/// taken as zero outside the tabulated range; no extrapolation is performed.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalTable {
    omega: Vec<f64>,
    eps_imag: Vec<f64>,
}

impl OpticalTable {
    /// Validates and stores a table. Requires at least 2 rows, strictly
    /// increasing non-negative frequencies, and finite non-negative eps''.
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(CasimirError::Table(format!(
                "need at least 2 rows, got {}",
                rows.len()
            )));
        }
        for (i, &(w, e)) in rows.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(CasimirError::Table(format!(
                    "row {i}: omega must be finite and >= 0, got {w}"
                )));
            }
            if !e.is_finite() || e < 0.0 {
                return Err(CasimirError::Table(format!(
                    "row {i}: eps_imag must be finite and >= 0, got {e}"
                )));
            }
            if i > 0 && w <= rows[i - 1].0 {
                return Err(CasimirError::Table(format!(
                    "omega must be strictly increasing, row {i}: {w} after {}",
                    rows[i - 1].0
                )));
            }
        }
        let (omega, eps_imag) = rows.into_iter().unzip();
        Ok(Self { omega, eps_imag })
    }

    /// Reads a table from CSV with the exact header `omega_rad_s,eps_imag`.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        {
            let headers = rdr
                .headers()
                .map_err(|e| CasimirError::TableIo(e.to_string()))?;
            let expect = ["omega_rad_s", "eps_imag"];
            let got: Vec<&str> = headers.iter().collect();
            if got != expect {
                return Err(CasimirError::Table(format!(
                    "CSV header must be `omega_rad_s,eps_imag`, got `{}`",
                    got.join(",")
                )));
            }
        }
        let mut rows = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| CasimirError::TableIo(e.to_string()))?;
            if record.len() != 2 {
                return Err(CasimirError::Table(format!(
                    "row {}: expected 2 fields, got {}",
                    i + 1,
                    record.len()
                )));
            }
            let parse = |s: &str, what: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| {
                    CasimirError::Table(format!("row {}: bad {what} value `{s}`", i + 1))
                })
            };
            rows.push((
                parse(&record[0], "omega_rad_s")?,
                parse(&record[1], "eps_imag")?,
            ));
        }
        Self::new(rows)
    }

    /// Reads a table from a CSV file on disk.
    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref()).map_err(|e| {
            CasimirError::TableIo(format!("{}: {e}", path.as_ref().display()))
        })?;
        Self::from_csv_reader(file)
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    /// True if the table carries no rows (cannot happen after validation).
    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Trapezoid evaluation of `(2/pi) Int omega eps''(omega) / (omega^2 + xi^2) d omega`
    /// over the tabulated range. Valid for xi >= 0; at omega = 0 the
    /// integrand is taken as its limit 0.
    fn dispersion_integral(&self, xi: f64) -> f64 {
        let xi2 = xi * xi;
        let g = |w: f64, e: f64| -> f64 {
            if w == 0.0 {
                0.0
            } else {
                w * e / (w * w + xi2)
            }
        };
        let mut sum = 0.0;
        let mut comp = 0.0;
        for i in 1..self.omega.len() {
            let h = self.omega[i] - self.omega[i - 1];
            let term = 0.5
                * h
                * (g(self.omega[i - 1], self.eps_imag[i - 1]) + g(self.omega[i], self.eps_imag[i]));
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum * std::f64::consts::FRAC_2_PI
    }
}

/// Mirror material model.
#[derive(Debug, Clone, PartialEq)]
pub enum Material {
    /// Ideal mirror with unit reflection amplitudes at all frequencies.
    Perfect,
    /// Lossless plasma model; `omega_p` in rad/s.
    Plasma { omega_p: f64 },
    /// Drude model with relaxation; `omega_p`, `gamma` in rad/s. `interband`
    /// optionally supplies the bound-electron absorption eps''(omega) added
    /// through the dispersion relation.
    Drude {
        omega_p: f64,
        gamma: f64,
        interband: Option<OpticalTable>,
    },
    /// Permittivity reconstructed from a measured eps''(omega) table.
    Tabulated { table: OpticalTable },
}

impl Material {
    /// Gold described by the plasma model (lambda_P = 136 nm).
    pub fn gold_plasma() -> Self {
        Material::Plasma {
            omega_p: gold_omega_p(),
        }
    }

    /// Gold described by the Drude model (lambda_P = 136 nm,
    /// gamma = 0.004 omega_P, no interband table).
    pub fn gold_drude() -> Self {
        let omega_p = gold_omega_p();
        Material::Drude {
            omega_p,
            gamma: GOLD_GAMMA_RATIO * omega_p,
            interband: None,
        }
    }

    /// Validates the model parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            Material::Perfect => Ok(()),
            Material::Plasma { omega_p } => {
                if !(omega_p.is_finite() && *omega_p > 0.0) {
                    return Err(CasimirError::Domain(format!(
                        "plasma: omega_p must be positive, got {omega_p}"
                    )));
                }
                Ok(())
            }
            Material::Drude { omega_p, gamma, .. } => {
                if !(omega_p.is_finite() && *omega_p > 0.0) {
                    return Err(CasimirError::Domain(format!(
                        "drude: omega_p must be positive, got {omega_p}"
                    )));
                }
                if !(gamma.is_finite() && *gamma >= 0.0) {
                    return Err(CasimirError::Domain(format!(
                        "drude: gamma must be >= 0, got {gamma}"
                    )));
                }
                Ok(())
            }
            Material::Tabulated { .. } => Ok(()),
        }
    }

    /// Permittivity at imaginary frequency xi > 0. Returns `f64::INFINITY`
    /// for the perfect mirror, which the reflection module never feeds into
    /// the Fresnel formulas.
    pub fn epsilon(&self, xi: f64) -> Result<f64> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(CasimirError::Domain(format!(
                "epsilon: xi must be positive, got {xi}"
            )));
        }
        Ok(match self {
            Material::Perfect => f64::INFINITY,
            Material::Plasma { omega_p } => epsilon_plasma(xi, *omega_p)?,
            Material::Drude {
                omega_p,
                gamma,
                interband,
            } => {
                let conduction = (omega_p * omega_p) / (xi * (xi + gamma));
                match interband {
                    None => 1.0 + conduction,
                    Some(table) => 1.0 + table.dispersion_integral(xi) + conduction,
                }
            }
            Material::Tabulated { table } => 1.0 + table.dispersion_integral(xi),
        })
    }

    /// Static limit classification used for the xi = 0 Matsubara term.
    pub(crate) fn static_response(&self) -> StaticResponse {
        match self {
            Material::Perfect => StaticResponse::PerfectConductor,
            Material::Plasma { omega_p } => StaticResponse::PlasmaLike { omega_p: *omega_p },
            Material::Drude { omega_p, gamma, .. } => {
                if *gamma == 0.0 {
                    StaticResponse::PlasmaLike { omega_p: *omega_p }
                } else {
                    StaticResponse::DrudeLike
                }
            }
            Material::Tabulated { table } => StaticResponse::Dielectric {
                eps0: 1.0 + table.dispersion_integral(0.0),
            },
        }
    }
}

/// Behaviour of `eps(i xi) xi^2` as xi -> 0, which decides the transverse
/// electric reflection amplitude of the zero-frequency Matsubara term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum StaticResponse {
    /// eps identically infinite: unit amplitudes of both polarizations.
    PerfectConductor,
    /// eps xi^2 -> omega_p^2: TE keeps a finite amplitude.
    PlasmaLike { omega_p: f64 },
    /// eps ~ 1/xi (finite DC conductivity): TE amplitude vanishes, TM is 1.
    DrudeLike,
    /// eps -> eps0 finite: ordinary dielectric static limit.
    Dielectric { eps0: f64 },
}

/// Plasma-model permittivity `1 + omega_p^2 / xi^2`.
///
/// `epsilon_plasma(omega_p, omega_p)` = 2 for any omega_p.
pub fn epsilon_plasma(xi: f64, omega_p: f64) -> Result<f64> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(CasimirError::Domain(format!(
            "epsilon_plasma: xi must be positive, got {xi}"
        )));
    }
    if !(omega_p.is_finite() && omega_p > 0.0) {
        return Err(CasimirError::Domain(format!(
            "epsilon_plasma: omega_p must be positive, got {omega_p}"
        )));
    }
    Ok(1.0 + (omega_p * omega_p) / (xi * xi))
}

/// Drude-model permittivity `1 + omega_p^2 / (xi (xi + gamma))` with
/// eps_hat = 1. With gamma = 0 this evaluates identically (bit for bit) to
/// [`epsilon_plasma`].
pub fn epsilon_drude(xi: f64, omega_p: f64, gamma: f64) -> Result<f64> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(CasimirError::Domain(format!(
            "epsilon_drude: xi must be positive, got {xi}"
        )));
    }
    if !(omega_p.is_finite() && omega_p > 0.0) {
        return Err(CasimirError::Domain(format!(
            "epsilon_drude: omega_p must be positive, got {omega_p}"
        )));
    }
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(CasimirError::Domain(format!(
            "epsilon_drude: gamma must be >= 0, got {gamma}"
        )));
    }
    Ok(1.0 + (omega_p * omega_p) / (xi * (xi + gamma)))
}

/// Permittivity from tabulated absorption data through the dispersion
/// relation (trapezoid rule over the table, zero outside its range).
pub fn epsilon_tabulated(table: &OpticalTable, xi: f64) -> Result<f64> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(CasimirError::Domain(format!(
            "epsilon_tabulated: xi must be positive, got {xi}"
        )));
    }
    Ok(1.0 + table.dispersion_integral(xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::gold_omega_p;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn plasma_at_its_own_frequency() {
        let wp = gold_omega_p();
        assert_relative_eq!(epsilon_plasma(wp, wp).unwrap(), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn plasma_high_frequency_transparency() {
        let wp = gold_omega_p();
        let eps = epsilon_plasma(100.0 * wp, wp).unwrap();
        assert_relative_eq!(eps - 1.0, 1e-4, max_relative = 1e-12);
    }

    #[test]
    fn drude_with_zero_gamma_is_plasma_bit_for_bit() {
        let wp = gold_omega_p();
        for i in 0..200 {
            let xi = wp * 10f64.powf(-4.0 + 8.0 * (i as f64) / 199.0);
            let d = epsilon_drude(xi, wp, 0.0).unwrap();
            let p = epsilon_plasma(xi, wp).unwrap();
            assert_eq!(d.to_bits(), p.to_bits(), "xi = {xi}");
        }
    }

    #[test]
    fn drude_static_conductivity() {
        let wp = gold_omega_p();
        let gamma = 0.004 * wp;
        let sigma0 = wp * wp / gamma;
        let xi = 1e-6 * gamma;
        let eps = epsilon_drude(xi, wp, gamma).unwrap();
        assert_relative_eq!(xi * (eps - 1.0), sigma0, max_relative = 1e-3);
    }

    #[test]
    fn table_of_zeros_is_vacuum() {
        let rows: Vec<(f64, f64)> = (1..100).map(|i| (1e13 * i as f64, 0.0)).collect();
        let table = OpticalTable::new(rows).unwrap();
        let eps = epsilon_tabulated(&table, 1e15).unwrap();
        assert_eq!(eps, 1.0);
    }

    /// The Drude model is its own dispersion-relation transform:
    /// eps''(omega) = omega_p^2 gamma / (omega (omega^2 + gamma^2)) must
    /// reconstruct eps(i xi) = 1 + omega_p^2/(xi (xi + gamma)).
    #[test]
    fn tabulated_reconstructs_drude() {
        let wp = gold_omega_p();
        let gamma = 0.004 * wp;
        let lo = (1e-4 * gamma).log10();
        let hi = (1e4 * wp).log10();
        let per_decade = 200.0;
        let n = ((hi - lo) * per_decade).ceil() as usize;
        let rows: Vec<(f64, f64)> = (0..=n)
            .map(|i| {
                let w = 10f64.powf(lo + (hi - lo) * i as f64 / n as f64);
                (w, wp * wp * gamma / (w * (w * w + gamma * gamma)))
            })
            .collect();
        let table = OpticalTable::new(rows).unwrap();
        let got = epsilon_tabulated(&table, wp).unwrap();
        let want = epsilon_drude(wp, wp, gamma).unwrap();
        assert_relative_eq!(got, want, max_relative = 1e-3);
    }

    #[test]
    fn csv_round_trip() {
        let csv = "omega_rad_s,eps_imag\n1.0e14,0.5\n2.0e14,0.25\n";
        let table = OpticalTable::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(table.len(), 2);
        let bad = OpticalTable::from_csv_reader("omega,eps\n1,2\n3,4\n".as_bytes());
        assert!(matches!(bad, Err(CasimirError::Table(_))));
    }

    #[test]
    fn table_rejects_non_increasing_omega() {
        let err = OpticalTable::new(vec![(2.0, 0.1), (1.0, 0.1)]);
        assert!(matches!(err, Err(CasimirError::Table(_))));
        let err = OpticalTable::new(vec![(1.0, 0.1)]);
        assert!(matches!(err, Err(CasimirError::Table(_))));
        let err = OpticalTable::new(vec![(1.0, -0.1), (2.0, 0.1)]);
        assert!(matches!(err, Err(CasimirError::Table(_))));
    }

    #[test]
    fn xi_domain_errors() {
        let wp = gold_omega_p();
        assert!(epsilon_plasma(0.0, wp).is_err());
        assert!(epsilon_plasma(-1.0, wp).is_err());
        assert!(epsilon_drude(f64::NAN, wp, 0.0).is_err());
        assert!(Material::gold_drude().epsilon(0.0).is_err());
    }

    proptest! {
        /// eps(i xi) >= 1 and strictly decreasing in xi for the conduction models.
        #[test]
        fn epsilon_at_least_one_and_decreasing(
            log_xi in -4.0f64..4.0,
            step in 0.01f64..2.0,
            gamma_ratio in 0.0f64..0.1,
        ) {
            let wp = gold_omega_p();
            let xi_a = wp * 10f64.powf(log_xi);
            let xi_b = xi_a * (1.0 + step);
            for material in [
                Material::Plasma { omega_p: wp },
                Material::Drude { omega_p: wp, gamma: gamma_ratio * wp, interband: None },
            ] {
                let ea = material.epsilon(xi_a).unwrap();
                let eb = material.epsilon(xi_b).unwrap();
                prop_assert!(ea >= 1.0);
                prop_assert!(eb >= 1.0);
                prop_assert!(eb < ea, "eps must strictly decrease: {ea} -> {eb}");
            }
        }

        /// Drude screening never exceeds the lossless plasma response.
        #[test]
        fn drude_below_plasma(log_xi in -4.0f64..4.0, gamma_ratio in 1e-6f64..0.1) {
            let wp = gold_omega_p();
            let xi = wp * 10f64.powf(log_xi);
            let d = epsilon_drude(xi, wp, gamma_ratio * wp).unwrap();
            let p = epsilon_plasma(xi, wp).unwrap();
            prop_assert!(d < p);
        }
    }
}
