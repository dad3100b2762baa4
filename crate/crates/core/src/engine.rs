//! Free energy and pressure of a plane-plane cavity from the scattering
//! formula.
//!
//! The Casimir free energy per unit area of two plane mirrors at distance L
//! and temperature T is a sum over Matsubara frequencies and transverse
//! modes of the log of the scattering determinant:
//!
//! ```text
//! F/A   = kB T Sum'_m Sum_p (1/2pi) Int_{xi_m/c}^inf kappa ln d  d kappa
//! d     = 1 - r1 r2 exp(-2 kappa L)
//! xi_m  = 2 pi m kB T / hbar,   m = 0 weighted 1/2
//! kappa = sqrt(k^2 + xi^2/c^2)
//! ```
//!
//! The transverse integral runs over the axial wave number kappa with
//! `k dk = kappa d kappa`. As T -> 0 the Matsubara sum becomes the integral
//! `kB T Sum'_m -> (hbar/2pi) Int_0^inf d xi`, which for perfect mirrors
//! closes to the ideal Casimir law `E/A = -hbar c pi^2 / (720 L^3)`.
//!
//! The pressure is never obtained by differencing free energies; the
//! integrand is differentiated analytically,
//! `d(ln d)/dL = 2 kappa r1 r2 exp(-2 kappa L) / d`, and integrated with
//! the same machinery, so both observables share one quadrature and one
//! Matsubara truncation.
//!
//! Numerics: each kappa integral is mapped onto u = exp(-2(kappa - xi/c)L)
//! in (0, 1] and evaluated with adaptive Gauss-Legendre panels; the
//! Matsubara sum stops after three consecutive terms fall below rel_tol of
//! the running total. Terms are accumulated in a fixed order (ascending m,
//! then polarization, then node) with compensated summation, so repeated
//! runs are bit-identical.

use crate::constants::{gold_omega_p, BOLTZMANN, GOLD_GAMMA_RATIO, HBAR, SPEED_OF_LIGHT};
use crate::error::{CasimirError, Result};
use crate::materials::{Material, StaticResponse};
use crate::quad::{integrate_adaptive_pair, GaussRule, KahanSum};
use crate::reflection::{
    fresnel, fresnel_from_eps, fresnel_static, kappa, perfect_amplitude, ModePoint, Polarization,
};
use std::f64::consts::PI;

/// Accuracy knobs of the engine.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericTolerances {
    /// Relative tolerance driving both the quadrature refinement and the
    /// Matsubara truncation. Must lie in (0, 1e-2).
    pub rel_tol: f64,
    /// Safety cap on the number of Matsubara terms.
    pub max_matsubara: usize,
    /// Gauss-Legendre nodes per panel.
    pub quad_points: usize,
}

impl Default for NumericTolerances {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            max_matsubara: 1_000_000,
            quad_points: 40,
        }
    }
}

impl NumericTolerances {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1e-2) {
            return Err(CasimirError::Domain(format!(
                "rel_tol must lie in (0, 1e-2), got {}",
                self.rel_tol
            )));
        }
        if self.max_matsubara < 1 {
            return Err(CasimirError::Domain(
                "max_matsubara must be at least 1".into(),
            ));
        }
        if !(2..=200).contains(&self.quad_points) {
            return Err(CasimirError::Domain(format!(
                "quad_points must lie in [2, 200], got {}",
                self.quad_points
            )));
        }
        Ok(())
    }
}

/// A plane-plane cavity: two mirrors, a gap and a temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityConfig {
    /// Mirror separation L (m).
    pub separation: f64,
    /// Temperature (K); 0 selects the zero-temperature integral.
    pub temperature: f64,
    /// Material of the first mirror.
    pub mirror1: Material,
    /// Material of the second mirror.
    pub mirror2: Material,
    /// Numerical accuracy settings.
    pub tolerances: NumericTolerances,
}

impl CavityConfig {
    /// Cavity with default tolerances.
    pub fn new(separation: f64, temperature: f64, mirror1: Material, mirror2: Material) -> Self {
        Self {
            separation,
            temperature,
            mirror1,
            mirror2,
            tolerances: NumericTolerances::default(),
        }
    }

    /// Checks every physical and numerical parameter.
    pub fn validate(&self) -> Result<()> {
        if !(self.separation.is_finite() && self.separation > 0.0) {
            return Err(CasimirError::Domain(format!(
                "separation must be positive, got {}",
                self.separation
            )));
        }
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return Err(CasimirError::Domain(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        self.mirror1.validate()?;
        self.mirror2.validate()?;
        self.tolerances.validate()
    }
}

/// Converged (or best-effort) output of one engine run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineResult {
    /// Free energy per unit area (J/m^2); negative for attraction.
    pub free_energy_per_area: f64,
    /// Pressure -d(F/A)/dL (Pa); negative for attraction.
    pub pressure: f64,
    /// Matsubara terms evaluated (0 on the zero-temperature path).
    pub matsubara_terms: usize,
    /// False if the quadrature or the Matsubara sum hit its cap before
    /// reaching rel_tol; the values are then best-effort partial results.
    pub converged: bool,
}

/// Matsubara frequency `xi_m = 2 pi m kB T / hbar` (rad/s).
///
/// `matsubara_xi(300.0, 1)` = 2.46779e14 rad/s.
pub fn matsubara_xi(temperature: f64, m: usize) -> f64 {
    2.0 * PI * m as f64 * BOLTZMANN * temperature / HBAR
}

/// Ideal-mirror zero-temperature energy per area, `-hbar c pi^2/(720 L^3)`.
pub fn casimir_energy_per_area(separation: f64) -> f64 {
    -HBAR * SPEED_OF_LIGHT * PI * PI / (720.0 * separation.powi(3))
}

/// Ideal-mirror zero-temperature pressure, `-pi^2 hbar c/(240 L^4)`.
pub fn casimir_pressure(separation: f64) -> f64 {
    -PI * PI * HBAR * SPEED_OF_LIGHT / (240.0 * separation.powi(4))
}

/// `ln(1 - r1 r2 exp(-2 kappa L))` for one mode of a configured cavity.
pub fn log_round_trip(mode: &ModePoint, config: &CavityConfig) -> Result<f64> {
    config.validate()?;
    let r1 = fresnel(mode, &config.mirror1)?;
    let r2 = fresnel(mode, &config.mirror2)?;
    let kap = kappa(mode);
    let w = (-2.0 * kap * config.separation).exp();
    if r1 * r2 * w >= 1.0 {
        return Err(CasimirError::Domain(
            "round trip factor reaches unity (kappa = 0 with unit reflection)".into(),
        ));
    }
    Ok(round_trip_log(r1 * r2, w))
}

/// `ln(1 - rr w)` through `ln_1p`, accurate for small round-trip factors.
pub(crate) fn round_trip_log(rr: f64, w: f64) -> f64 {
    (-rr * w).ln_1p()
}

/// Reflection amplitude evaluator for one mirror at fixed (xi, polarization),
/// closed over the per-frequency permittivity so tabulated materials are
/// transformed once per Matsubara term instead of once per node.
pub(crate) enum Amp {
    Const(f64),
    Fresnel { eps: f64, xi_c: f64 },
    StaticPlasmaTe { omega_p: f64 },
}

impl Amp {
    pub(crate) fn build(material: &Material, xi: f64, pol: Polarization) -> Result<Self> {
        if matches!(material, Material::Perfect) {
            return Ok(Amp::Const(perfect_amplitude(pol)));
        }
        if xi == 0.0 {
            return Ok(match (pol, material.static_response()) {
                (_, StaticResponse::PerfectConductor) => Amp::Const(perfect_amplitude(pol)),
                (Polarization::TE, StaticResponse::PlasmaLike { omega_p }) => {
                    Amp::StaticPlasmaTe { omega_p }
                }
                (pol, resp) => Amp::Const(fresnel_static(pol, 0.0, resp)),
            });
        }
        Ok(Amp::Fresnel {
            eps: material.epsilon(xi)?,
            xi_c: xi / SPEED_OF_LIGHT,
        })
    }

    #[inline]
    pub(crate) fn eval(&self, pol: Polarization, kap: f64) -> f64 {
        match self {
            Amp::Const(r) => *r,
            Amp::Fresnel { eps, xi_c } => fresnel_from_eps(pol, kap, *xi_c, *eps),
            // At xi = 0 the axial wave number is k itself.
            Amp::StaticPlasmaTe { omega_p } => {
                let kp = f64::hypot(kap, omega_p / SPEED_OF_LIGHT);
                (kap - kp) / (kap + kp)
            }
        }
    }
}

/// Per-frequency spectral density pair
/// `g(xi) = Sum_p (1/2pi) Int kappa [ln d, -2 kappa rr e^{-2 kappa L}/d] d kappa`,
/// so that F/A = kB T Sum'_m g_E(xi_m) and P = kB T Sum'_m g_P(xi_m).
/// Both components are negative for attracting mirrors.
fn spectral_density(
    config: &CavityConfig,
    rule: &GaussRule,
    rel_tol: f64,
    xi: f64,
) -> Result<([f64; 2], bool)> {
    let l = config.separation;
    let a = xi / SPEED_OF_LIGHT;
    let e2al = (-2.0 * a * l).exp();
    let mut acc = [KahanSum::new(), KahanSum::new()];
    let mut converged = true;
    for pol in Polarization::BOTH {
        let amp1 = Amp::build(&config.mirror1, xi, pol)?;
        let amp2 = Amp::build(&config.mirror2, xi, pol)?;
        // u = exp(-2 (kappa - xi/c) L) maps the semi-infinite kappa range
        // onto (0, 1]; d kappa = -du/(2 L u) and exp(-2 kappa L) = u e2al.
        let mut integrand = |u: f64| -> [f64; 2] {
            let kap = a - u.ln() / (2.0 * l);
            let rr = amp1.eval(pol, kap) * amp2.eval(pol, kap);
            if rr == 0.0 || e2al == 0.0 {
                return [0.0, 0.0];
            }
            let w = u * e2al;
            let d = 1.0 - rr * w;
            let energy = kap * round_trip_log(rr, w) / (2.0 * l * u);
            // kappa * (-2 kappa rr w / d) / (2 L u), with w/u = e2al exactly.
            let pressure = -kap * kap * rr * e2al / (l * d);
            [energy, pressure]
        };
        let res = integrate_adaptive_pair(&mut integrand, 0.0, 1.0, rel_tol, rule);
        converged &= res.converged;
        acc[0].add(res.value[0]);
        acc[1].add(res.value[1]);
    }
    let scale = 1.0 / (2.0 * PI);
    Ok(([scale * acc[0].value(), scale * acc[1].value()], converged))
}

/// Free energy per area and pressure at finite temperature (Matsubara sum).
///
/// Truncation: the sum stops once three consecutive terms fall below
/// rel_tol of the running total for both observables, or `converged` is
/// reported false when `max_matsubara` is exhausted first.
pub fn free_energy_finite_t(config: &CavityConfig) -> Result<EngineResult> {
    config.validate()?;
    if config.temperature <= 0.0 {
        return Err(CasimirError::Domain(
            "free_energy_finite_t requires T > 0; use free_energy_zero_t at T = 0".into(),
        ));
    }
    let tol = &config.tolerances;
    let rule = GaussRule::new(tol.quad_points);
    let kbt = BOLTZMANN * config.temperature;
    let mut acc = [KahanSum::new(), KahanSum::new()];
    let mut converged = true;

    let (g0, ok0) = spectral_density(config, &rule, tol.rel_tol, 0.0)?;
    converged &= ok0;
    acc[0].add(0.5 * kbt * g0[0]);
    acc[1].add(0.5 * kbt * g0[1]);

    let mut terms = 1;
    let mut below = 0;
    let mut truncated = true;
    for m in 1..=tol.max_matsubara {
        let (gm, okm) = spectral_density(config, &rule, tol.rel_tol, matsubara_xi(config.temperature, m))?;
        converged &= okm;
        let term_e = kbt * gm[0];
        let term_p = kbt * gm[1];
        acc[0].add(term_e);
        acc[1].add(term_p);
        terms += 1;
        if term_e.abs() <= tol.rel_tol * acc[0].value().abs()
            && term_p.abs() <= tol.rel_tol * acc[1].value().abs()
        {
            below += 1;
            if below == 3 {
                truncated = false;
                break;
            }
        } else {
            below = 0;
        }
    }
    if truncated {
        converged = false;
    }
    Ok(EngineResult {
        free_energy_per_area: acc[0].value(),
        pressure: acc[1].value(),
        matsubara_terms: terms,
        converged,
    })
}

/// Energy per area and pressure in the T -> 0 limit, where the Matsubara
/// sum becomes `(hbar/2pi) Int_0^inf d xi` and is evaluated as a double
/// adaptive quadrature (outer xi mapped onto v = exp(-2 xi L/c)).
/// `config.temperature` is ignored here.
pub fn free_energy_zero_t(config: &CavityConfig) -> Result<EngineResult> {
    config.validate()?;
    let tol = &config.tolerances;
    let rule = GaussRule::new(tol.quad_points);
    let l = config.separation;
    let c2l = SPEED_OF_LIGHT / (2.0 * l);
    // The inner integral must be quieter than the outer refinement signal.
    let inner_tol = 0.1 * tol.rel_tol;
    let mut all_ok = true;
    let mut error: Option<CasimirError> = None;
    let mut outer = |v: f64| -> [f64; 2] {
        let xi = -c2l * v.ln();
        match spectral_density(config, &rule, inner_tol, xi) {
            Ok((g, ok)) => {
                if !ok {
                    all_ok = false;
                }
                [g[0] * c2l / v, g[1] * c2l / v]
            }
            Err(e) => {
                error = Some(e);
                [0.0, 0.0]
            }
        }
    };
    let res = integrate_adaptive_pair(&mut outer, 0.0, 1.0, tol.rel_tol, &rule);
    if let Some(e) = error {
        return Err(e);
    }
    let scale = HBAR / (2.0 * PI);
    Ok(EngineResult {
        free_energy_per_area: scale * res.value[0],
        pressure: scale * res.value[1],
        matsubara_terms: 0,
        converged: res.converged && all_ok,
    })
}

/// Dispatches on the configured temperature: T = 0 runs the
/// zero-temperature integral, T > 0 the Matsubara sum.
pub fn evaluate(config: &CavityConfig) -> Result<EngineResult> {
    if config.temperature == 0.0 {
        free_energy_zero_t(config)
    } else {
        free_energy_finite_t(config)
    }
}

/// Casimir pressure of the configured cavity (Pa, negative = attractive),
/// from the analytically differentiated integrand.
pub fn pressure(config: &CavityConfig) -> Result<f64> {
    Ok(evaluate(config)?.pressure)
}

/// Pressure reduction factor `eta_F = P / P_Casimir(L)`; 1 for ideal
/// mirrors at T = 0, below 1 for real metals at short distance.
pub fn eta_f(config: &CavityConfig) -> Result<f64> {
    Ok(evaluate(config)?.pressure / casimir_pressure(config.separation))
}

/// Energy reduction factor `eta_E = (F/A) / (E_Casimir/A)(L)`.
pub fn eta_e(config: &CavityConfig) -> Result<f64> {
    Ok(evaluate(config)?.free_energy_per_area / casimir_energy_per_area(config.separation))
}

/// Ratio of plasma-model to Drude-model pressure for gold mirrors at the
/// same (L, T): approaches 2 at separations far beyond the thermal
/// wavelength, 1 far below it.
pub fn thermal_ratio(separation: f64, temperature: f64) -> Result<f64> {
    let omega_p = gold_omega_p();
    thermal_ratio_with_params(separation, temperature, omega_p, GOLD_GAMMA_RATIO * omega_p)
}

/// [`thermal_ratio`] with explicit plasma frequency and relaxation rate.
/// With gamma = 0 the two models are the same arithmetic and the ratio is
/// exactly 1.
pub fn thermal_ratio_with_params(
    separation: f64,
    temperature: f64,
    omega_p: f64,
    gamma: f64,
) -> Result<f64> {
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(CasimirError::Domain(format!(
            "thermal_ratio requires T > 0, got {temperature}"
        )));
    }
    let plasma = CavityConfig::new(
        separation,
        temperature,
        Material::Plasma { omega_p },
        Material::Plasma { omega_p },
    );
    let drude = CavityConfig::new(
        separation,
        temperature,
        Material::Drude {
            omega_p,
            gamma,
            interband: None,
        },
        Material::Drude {
            omega_p,
            gamma,
            interband: None,
        },
    );
    Ok(pressure(&plasma)? / pressure(&drude)?)
}

/// A deterministic fixed quadrature rule for the kappa integral at one
/// frequency: dyadic panels in the u variable graded toward both ends of
/// (0, 1), each carrying `points_per_panel` Gauss-Legendre nodes. Used to
/// hand the engine's discretization to the mode-operator formulation; the
/// weights satisfy `Sum_j v_j f(kappa_j) ~ Int_{xi/c}^inf f(kappa) d kappa`.
#[derive(Debug, Clone)]
pub struct KappaRule {
    /// Frequency the rule was built at (rad/s).
    pub xi: f64,
    /// Mirror separation the mapping used (m).
    pub separation: f64,
    /// (kappa, weight) pairs, ascending in kappa.
    pub nodes: Vec<(f64, f64)>,
}

/// Builds a [`KappaRule`] with `2 * depth` panels. The grading toward
/// u = 1 resolves the kappa -> xi/c edge (a log singularity at xi = 0),
/// the grading toward u = 0 the exponential tail; both truncated tails
/// scale like `2^-depth`, far below any engine tolerance at depth 40.
pub fn kappa_rule(xi: f64, separation: f64, depth: usize, points_per_panel: usize) -> KappaRule {
    assert!(xi >= 0.0 && separation > 0.0);
    assert!(depth >= 1 && points_per_panel >= 2);
    let gauss = GaussRule::new(points_per_panel);
    let a = xi / SPEED_OF_LIGHT;
    let two_l = 2.0 * separation;
    let mut nodes = Vec::with_capacity(2 * depth * points_per_panel);
    let push_panel = |nodes: &mut Vec<(f64, f64)>, lo: f64, hi: f64| {
        // Within a panel u descends so kappa ascends.
        let panel: Vec<(f64, f64)> = gauss.mapped(lo, hi).collect();
        for &(u, w) in panel.iter().rev() {
            let kap = a - u.ln() / two_l;
            nodes.push((kap, w / (two_l * u)));
        }
    };
    for j in (1..=depth).rev() {
        let half = 0.5f64.powi(j as i32);
        push_panel(&mut nodes, 1.0 - half, 1.0 - 0.5 * half);
    }
    for j in 1..=depth {
        let top = 0.5f64.powi(j as i32);
        push_panel(&mut nodes, 0.5 * top, top);
    }
    KappaRule {
        xi,
        separation,
        nodes,
    }
}
