//! Cross-module physical invariants: limits, monotonicities and model
//! orderings that tie the engine, materials and reflection layers
//! together on realistic cavities.

use approx::assert_relative_eq;
use casimir_core::{
    casimir_energy_per_area, eta_f, evaluate, free_energy_finite_t, free_energy_zero_t,
    thermal_ratio, CavityConfig, Material, NumericTolerances,
};

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

#[test]
fn one_kelvin_matches_zero_temperature_at_short_distance() {
    // At L = 100 nm and T = 1 K the thermal wavelength is four orders of
    // magnitude above the gap; the Matsubara sum must agree with the
    // zero-temperature integral. Successive terms differ by only
    // e^{-2 xi_1 L/c} ~ 1 - 3e-4 here, so the truncated tail is about
    // rel_tol / 3e-4 of the sum; rel_tol = 1e-8 keeps it near 1e-5.
    let tolerances = NumericTolerances {
        rel_tol: 1e-8,
        max_matsubara: 200_000,
        quad_points: 24,
    };
    let mut cold = CavityConfig::new(100e-9, 1.0, Material::Perfect, Material::Perfect);
    cold.tolerances = tolerances.clone();
    let finite = free_energy_finite_t(&cold).unwrap();
    assert!(finite.converged);
    let mut zero = cold.clone();
    zero.temperature = 0.0;
    let integral = free_energy_zero_t(&zero).unwrap();
    assert!(integral.converged);
    assert_relative_eq!(
        finite.free_energy_per_area,
        integral.free_energy_per_area,
        max_relative = 1e-4
    );
    assert_relative_eq!(finite.pressure, integral.pressure, max_relative = 1e-4);
}

#[test]
fn free_energy_magnitude_decreases_with_separation() {
    let mut previous_f = f64::INFINITY;
    let mut previous_p = f64::INFINITY;
    for l in log_grid(0.5e-6, 10e-6, 5) {
        let config = CavityConfig::new(l, 300.0, Material::gold_plasma(), Material::gold_plasma());
        let res = free_energy_finite_t(&config).unwrap();
        assert!(res.converged);
        assert!(res.free_energy_per_area.abs() < previous_f);
        assert!(res.pressure.abs() < previous_p);
        previous_f = res.free_energy_per_area.abs();
        previous_p = res.pressure.abs();
    }
}

#[test]
fn passive_mirrors_always_attract() {
    let materials = [
        Material::Perfect,
        Material::gold_plasma(),
        Material::gold_drude(),
    ];
    for material in &materials {
        for temperature in [0.0, 300.0] {
            let config =
                CavityConfig::new(1e-6, temperature, material.clone(), material.clone());
            let res = evaluate(&config).unwrap();
            assert!(
                res.free_energy_per_area < 0.0,
                "free energy not attractive for {material:?} at T = {temperature}"
            );
            assert!(res.pressure < 0.0);
        }
    }
}

#[test]
fn drude_pressure_never_exceeds_plasma() {
    // Relaxation only weakens reflection, so the Drude force is bounded
    // by the plasma force at every separation.
    for l in log_grid(0.1e-6, 10e-6, 5) {
        let plasma = CavityConfig::new(l, 0.0, Material::gold_plasma(), Material::gold_plasma());
        let drude = CavityConfig::new(l, 0.0, Material::gold_drude(), Material::gold_drude());
        let p_plasma = free_energy_zero_t(&plasma).unwrap().pressure;
        let p_drude = free_energy_zero_t(&drude).unwrap().pressure;
        assert!(
            p_drude.abs() <= p_plasma.abs(),
            "L = {l}: |P_Drude| = {} > |P_plasma| = {}",
            p_drude.abs(),
            p_plasma.abs()
        );
    }
}

#[test]
fn plasma_recovers_the_ideal_energy_far_beyond_the_plasma_wavelength() {
    let lambda_p = 136e-9;
    let l = 100.0 * lambda_p;
    let config = CavityConfig::new(l, 0.0, Material::gold_plasma(), Material::gold_plasma());
    let res = free_energy_zero_t(&config).unwrap();
    assert!(res.converged);
    assert_relative_eq!(
        res.free_energy_per_area,
        casimir_energy_per_area(l),
        max_relative = 0.1
    );
}

#[test]
fn eta_f_increases_with_separation_for_plasma_gold() {
    let mut previous = 0.0;
    for l in log_grid(10e-9, 10e-6, 7) {
        let config = CavityConfig::new(l, 0.0, Material::gold_plasma(), Material::gold_plasma());
        let eta = eta_f(&config).unwrap();
        assert!(
            eta > previous,
            "eta_F not increasing at L = {l}: {eta} <= {previous}"
        );
        assert!(eta <= 1.0 + 1e-6);
        previous = eta;
    }
}

#[test]
fn pressure_follows_the_inverse_fourth_power_for_ideal_mirrors() {
    let at = |l: f64| {
        let config = CavityConfig::new(l, 0.0, Material::Perfect, Material::Perfect);
        free_energy_zero_t(&config).unwrap().pressure
    };
    assert_relative_eq!(at(0.5e-6) / at(1e-6), 16.0, max_relative = 1e-7);
}

#[test]
fn thermal_effects_vanish_far_below_the_thermal_wavelength() {
    let ratio = thermal_ratio(100e-9, 300.0).unwrap();
    assert!((ratio - 1.0).abs() < 0.05, "ratio = {ratio}");
}
