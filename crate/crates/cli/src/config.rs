//! JSON run configuration: schema, defaults and validation.
//!
//! A config names a command, a geometry, a temperature, the two mirror
//! materials and optional tolerance overrides. Every omitted field is
//! filled from documented defaults and the fully resolved form is echoed
//! to stderr, so a run can be reproduced from its log alone.

use casimir_core::{
    constants, CavityConfig, Material, NumericTolerances, OpticalTable,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

/// Default plasma wavelength for metallic mirrors (nm, gold).
const DEFAULT_LAMBDA_P_NM: f64 = 136.0;

/// Default relaxation-to-plasma ratio for Drude mirrors (gold).
const DEFAULT_GAMMA_RATIO: f64 = 0.004;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(message.into()))
}

/// The seven runnable commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Energy,
    Pressure,
    Eta,
    PfaForce,
    PfaGradient,
    ThermalRatio,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Energy => "energy",
            Command::Pressure => "pressure",
            Command::Eta => "eta",
            Command::PfaForce => "pfa-force",
            Command::PfaGradient => "pfa-gradient",
            Command::ThermalRatio => "thermal-ratio",
            Command::Sweep => "sweep",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "energy" => Some(Command::Energy),
            "pressure" => Some(Command::Pressure),
            "eta" => Some(Command::Eta),
            "pfa-force" => Some(Command::PfaForce),
            "pfa-gradient" => Some(Command::PfaGradient),
            "thermal-ratio" => Some(Command::ThermalRatio),
            "sweep" => Some(Command::Sweep),
            _ => None,
        }
    }

    fn needs_radius(self) -> bool {
        matches!(self, Command::PfaForce | Command::PfaGradient)
    }
}

/// Mirror material specification, as written in the config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum MaterialSpec {
    Perfect,
    Plasma {
        #[serde(default)]
        lambda_p_nm: Option<f64>,
    },
    Drude {
        #[serde(default)]
        lambda_p_nm: Option<f64>,
        #[serde(default)]
        gamma_ratio: Option<f64>,
    },
    Tabulated { csv: String },
}

impl MaterialSpec {
    fn default_gold() -> Self {
        MaterialSpec::Plasma {
            lambda_p_nm: Some(DEFAULT_LAMBDA_P_NM),
        }
    }

    /// Fills defaults in place and validates numeric fields.
    fn resolve(&mut self, field: &str) -> Result<(), ConfigError> {
        match self {
            MaterialSpec::Perfect | MaterialSpec::Tabulated { .. } => Ok(()),
            MaterialSpec::Plasma { lambda_p_nm } => {
                let lambda = lambda_p_nm.get_or_insert(DEFAULT_LAMBDA_P_NM);
                if !(lambda.is_finite() && *lambda > 0.0) {
                    return err(format!("{field}.lambda_p_nm must be > 0, got {lambda}"));
                }
                Ok(())
            }
            MaterialSpec::Drude {
                lambda_p_nm,
                gamma_ratio,
            } => {
                let lambda = lambda_p_nm.get_or_insert(DEFAULT_LAMBDA_P_NM);
                if !(lambda.is_finite() && *lambda > 0.0) {
                    return err(format!("{field}.lambda_p_nm must be > 0, got {lambda}"));
                }
                let gamma = gamma_ratio.get_or_insert(DEFAULT_GAMMA_RATIO);
                if !(gamma.is_finite() && *gamma >= 0.0) {
                    return err(format!("{field}.gamma_ratio must be >= 0, got {gamma}"));
                }
                Ok(())
            }
        }
    }

    /// Plasma frequency and relaxation rate in rad/s, for the metallic
    /// models only.
    pub fn metal_parameters(&self) -> Option<(f64, f64)> {
        match self {
            MaterialSpec::Plasma { lambda_p_nm } => {
                let omega_p = constants::omega_from_wavelength((*lambda_p_nm)? * 1e-9);
                Some((omega_p, DEFAULT_GAMMA_RATIO * omega_p))
            }
            MaterialSpec::Drude {
                lambda_p_nm,
                gamma_ratio,
            } => {
                let omega_p = constants::omega_from_wavelength((*lambda_p_nm)? * 1e-9);
                Some((omega_p, (*gamma_ratio)? * omega_p))
            }
            _ => None,
        }
    }

    /// Builds the engine material. Tabulated CSV paths are taken as
    /// written (relative to the working directory).
    pub fn to_material(&self) -> Result<Material, ConfigError> {
        match self {
            MaterialSpec::Perfect => Ok(Material::Perfect),
            MaterialSpec::Plasma { lambda_p_nm } => {
                let omega_p = constants::omega_from_wavelength(lambda_p_nm.unwrap() * 1e-9);
                Ok(Material::Plasma { omega_p })
            }
            MaterialSpec::Drude {
                lambda_p_nm,
                gamma_ratio,
            } => {
                let omega_p = constants::omega_from_wavelength(lambda_p_nm.unwrap() * 1e-9);
                Ok(Material::Drude {
                    omega_p,
                    gamma: gamma_ratio.unwrap() * omega_p,
                    interband: None,
                })
            }
            MaterialSpec::Tabulated { csv } => {
                let table = OpticalTable::from_csv_path(Path::new(csv))
                    .map_err(|e| ConfigError(format!("loading {csv}: {e}")))?;
                Ok(Material::Tabulated { table })
            }
        }
    }

    /// True for a Drude mirror whose gamma_ratio is zero, which is the
    /// plasma model in different clothes; flagged in the echo output.
    pub fn is_degenerate_drude(&self) -> bool {
        matches!(
            self,
            MaterialSpec::Drude {
                gamma_ratio: Some(g),
                ..
            } if *g == 0.0
        )
    }
}

/// Log-spaced separation range for sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeSpec {
    pub min_m: f64,
    pub max_m: f64,
    pub points: usize,
}

impl RangeSpec {
    fn validate(&self) -> Result<(), ConfigError> {
        if !(self.min_m.is_finite() && self.min_m > 0.0) {
            return err(format!(
                "separation_range.min_m must be > 0, got {}",
                self.min_m
            ));
        }
        if !(self.max_m.is_finite() && self.max_m > self.min_m) {
            return err(format!(
                "separation_range requires min_m < max_m, got [{}, {}]",
                self.min_m, self.max_m
            ));
        }
        if self.points < 2 {
            return err(format!(
                "separation_range.points must be >= 2, got {}",
                self.points
            ));
        }
        Ok(())
    }

    /// The log-spaced grid, ascending, one value per requested point.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| self.min_m * (self.max_m / self.min_m).powf(i as f64 / (n - 1) as f64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSpec {
    pub rel_tol: f64,
    pub max_matsubara: usize,
    pub quad_points: usize,
}

#[derive(Debug, Deserialize)]
struct RawConfig {
    command: Option<String>,
    separation_m: Option<f64>,
    separation_range: Option<RangeSpec>,
    radius_m: Option<f64>,
    temperature_k: Option<f64>,
    mirror1: Option<MaterialSpec>,
    mirror2: Option<MaterialSpec>,
    tolerances: Option<PartialTolerances>,
    out: Option<String>,
}

#[derive(Debug, Deserialize)]
struct PartialTolerances {
    rel_tol: Option<f64>,
    max_matsubara: Option<usize>,
    quad_points: Option<usize>,
}

/// A fully validated run configuration with every default materialized.
/// Serializes to JSON that parses back to the same configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation_range: Option<RangeSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius_m: Option<f64>,
    pub temperature_k: f64,
    pub mirror1: MaterialSpec,
    pub mirror2: MaterialSpec,
    pub tolerances: ToleranceSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl RunConfig {
    pub fn numeric_tolerances(&self) -> NumericTolerances {
        NumericTolerances {
            rel_tol: self.tolerances.rel_tol,
            max_matsubara: self.tolerances.max_matsubara,
            quad_points: self.tolerances.quad_points,
        }
    }

    /// Engine cavity at the given separation.
    pub fn cavity(&self, separation: f64) -> Result<CavityConfig, ConfigError> {
        let mut cavity = CavityConfig::new(
            separation,
            self.temperature_k,
            self.mirror1.to_material()?,
            self.mirror2.to_material()?,
        );
        cavity.tolerances = self.numeric_tolerances();
        cavity
            .validate()
            .map_err(|e| ConfigError(e.to_string()))?;
        Ok(cavity)
    }

    /// Advisory lines for the echo stream: model degeneracies and PFA
    /// validity are worth a note but are not errors.
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        for (name, mirror) in [("mirror1", &self.mirror1), ("mirror2", &self.mirror2)] {
            if mirror.is_degenerate_drude() {
                notes.push(format!(
                    "note: {name} is drude with gamma_ratio 0, which is the plasma model"
                ));
            }
        }
        if let (Some(l), Some(r)) = (self.separation_m, self.radius_m) {
            if l / r >= 0.01 {
                notes.push(format!(
                    "note: L/R = {:.3e} is outside the PFA validity domain (< 0.01)",
                    l / r
                ));
            }
        }
        notes
    }
}

fn scan_unknown_keys(value: &serde_json::Value) -> Vec<String> {
    fn scan(
        value: &serde_json::Value,
        prefix: &str,
        known: &[(&str, &[&str])],
        unknown: &mut Vec<String>,
    ) {
        let Some(object) = value.as_object() else {
            return;
        };
        let allowed: BTreeSet<&str> = known
            .iter()
            .find(|(p, _)| *p == prefix)
            .map(|(_, keys)| keys.iter().copied().collect())
            .unwrap_or_default();
        for (key, child) in object {
            let path = if prefix.is_empty() {
                key.clone()
            } else {
                format!("{prefix}.{key}")
            };
            if !allowed.contains(key.as_str()) {
                unknown.push(path);
                continue;
            }
            let child_prefix = match (prefix, key.as_str()) {
                ("", "separation_range") => "separation_range",
                ("", "mirror1") => "mirror",
                ("", "mirror2") => "mirror",
                ("", "tolerances") => "tolerances",
                _ => continue,
            };
            scan_with_prefix(child, child_prefix, &path, known, unknown);
        }
    }

    fn scan_with_prefix(
        value: &serde_json::Value,
        schema_prefix: &str,
        path_prefix: &str,
        known: &[(&str, &[&str])],
        unknown: &mut Vec<String>,
    ) {
        let Some(object) = value.as_object() else {
            return;
        };
        let allowed: BTreeSet<&str> = known
            .iter()
            .find(|(p, _)| *p == schema_prefix)
            .map(|(_, keys)| keys.iter().copied().collect())
            .unwrap_or_default();
        let model = object.get("model").and_then(|m| m.as_str());
        for key in object.keys() {
            let keep = if schema_prefix == "mirror" {
                material_key_allowed(model, key)
            } else {
                allowed.contains(key.as_str())
            };
            if !keep {
                unknown.push(format!("{path_prefix}.{key}"));
            }
        }
    }

    fn material_key_allowed(model: Option<&str>, key: &str) -> bool {
        let allowed: &[&str] = match model {
            Some("perfect") => &["model"],
            Some("plasma") => &["model", "lambda_p_nm"],
            Some("drude") => &["model", "lambda_p_nm", "gamma_ratio"],
            Some("tabulated") => &["model", "csv"],
            _ => &["model", "lambda_p_nm", "gamma_ratio", "csv"],
        };
        allowed.contains(&key)
    }

    const KNOWN: &[(&str, &[&str])] = &[
        (
            "",
            &[
                "command",
                "separation_m",
                "separation_range",
                "radius_m",
                "temperature_k",
                "mirror1",
                "mirror2",
                "tolerances",
                "out",
            ],
        ),
        ("separation_range", &["min_m", "max_m", "points"]),
        ("tolerances", &["rel_tol", "max_matsubara", "quad_points"]),
    ];

    let mut unknown = Vec::new();
    scan(value, "", KNOWN, &mut unknown);
    unknown.sort();
    unknown
}

/// Parses, defaults and validates a config document against the command
/// given on the command line; `cli_out` is the `--out` override.
pub fn parse_config(
    text: &str,
    cli_command: Command,
    cli_out: Option<String>,
) -> Result<RunConfig, ConfigError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ConfigError(format!("invalid JSON: {e}")))?;
    if !value.is_object() {
        return err("config must be a JSON object");
    }
    let unknown = scan_unknown_keys(&value);
    if !unknown.is_empty() {
        return err(format!("unknown config keys: {}", unknown.join(", ")));
    }
    let raw: RawConfig = serde_json::from_value(value)
        .map_err(|e| ConfigError(format!("invalid config: {e}")))?;

    if let Some(name) = &raw.command {
        match Command::from_name(name) {
            Some(c) if c == cli_command => {}
            Some(c) => {
                return err(format!(
                    "config names command \"{}\" but \"{}\" was requested",
                    c.name(),
                    cli_command.name()
                ));
            }
            None => return err(format!("unknown command \"{name}\" in config")),
        }
    }

    let Some(temperature_k) = raw.temperature_k else {
        return err("missing required field temperature_k");
    };
    if !(temperature_k.is_finite() && temperature_k >= 0.0) {
        return err(format!("temperature_k must be >= 0, got {temperature_k}"));
    }

    let (separation_m, separation_range) = match (cli_command, raw.separation_m, raw.separation_range)
    {
        (Command::Sweep, None, Some(range)) => {
            range.validate()?;
            (None, Some(range))
        }
        (Command::Sweep, Some(_), _) => {
            return err("sweep takes separation_range, not separation_m");
        }
        (Command::Sweep, None, None) => {
            return err("missing required field separation_range");
        }
        (_, Some(l), None) => {
            if !(l.is_finite() && l > 0.0) {
                return err(format!("separation_m must be > 0, got {l}"));
            }
            (Some(l), None)
        }
        (_, _, Some(_)) => {
            return err(format!(
                "{} takes separation_m, not separation_range",
                cli_command.name()
            ));
        }
        (_, None, None) => return err("missing required field separation_m"),
    };

    let radius_m = match (cli_command.needs_radius(), raw.radius_m) {
        (true, Some(r)) => {
            if !(r.is_finite() && r > 0.0) {
                return err(format!("radius_m must be > 0, got {r}"));
            }
            Some(r)
        }
        (true, None) => return err("missing required field radius_m"),
        (false, None) => None,
        (false, Some(_)) => {
            return err(format!(
                "radius_m applies to pfa-force and pfa-gradient, not {}",
                cli_command.name()
            ));
        }
    };

    let mut mirror1 = raw.mirror1.unwrap_or_else(MaterialSpec::default_gold);
    mirror1.resolve("mirror1")?;
    let mut mirror2 = raw.mirror2.unwrap_or_else(|| mirror1.clone());
    mirror2.resolve("mirror2")?;

    if cli_command == Command::ThermalRatio {
        if mirror1.metal_parameters().is_none() {
            return err("thermal-ratio requires a plasma or drude mirror1");
        }
        if mirror2 != mirror1 {
            return err("thermal-ratio uses mirror1's parameters for both mirrors; leave mirror2 unset");
        }
    }

    let defaults = NumericTolerances::default();
    let partial = raw.tolerances.unwrap_or(PartialTolerances {
        rel_tol: None,
        max_matsubara: None,
        quad_points: None,
    });
    let tolerances = ToleranceSpec {
        rel_tol: partial.rel_tol.unwrap_or(defaults.rel_tol),
        max_matsubara: partial.max_matsubara.unwrap_or(defaults.max_matsubara),
        quad_points: partial.quad_points.unwrap_or(defaults.quad_points),
    };
    if !(tolerances.rel_tol.is_finite() && tolerances.rel_tol > 0.0) {
        return err(format!(
            "tolerances.rel_tol must be > 0, got {}",
            tolerances.rel_tol
        ));
    }
    if tolerances.max_matsubara == 0 {
        return err("tolerances.max_matsubara must be >= 1");
    }
    if tolerances.quad_points < 2 {
        return err(format!(
            "tolerances.quad_points must be >= 2, got {}",
            tolerances.quad_points
        ));
    }

    let out = cli_out.or(raw.out);
    if out.is_some() && cli_command != Command::Sweep {
        return err(format!(
            "{} prints to stdout; output paths apply to sweep only",
            cli_command.name()
        ));
    }

    let config = RunConfig {
        command: cli_command.name().to_string(),
        separation_m,
        separation_range,
        radius_m,
        temperature_k,
        mirror1,
        mirror2,
        tolerances,
        out,
    };
    config
        .cavity(config.separation_m.unwrap_or_else(|| {
            config.separation_range.map(|r| r.min_m).unwrap()
        }))
        .map(|_| ())
        .or_else(|e| {
            if config.mirror_specs_need_files() {
                Ok(())
            } else {
                Err(e)
            }
        })?;
    Ok(config)
}

impl RunConfig {
    /// Tabulated mirrors defer file errors to run time, when they are
    /// reported as I/O failures rather than config errors.
    fn mirror_specs_need_files(&self) -> bool {
        matches!(self.mirror1, MaterialSpec::Tabulated { .. })
            || matches!(self.mirror2, MaterialSpec::Tabulated { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, command: Command) -> Result<RunConfig, ConfigError> {
        parse_config(text, command, None)
    }

    #[test]
    fn minimal_pressure_config_fills_defaults() {
        let config = parse(
            r#"{"separation_m": 1e-6, "temperature_k": 300}"#,
            Command::Pressure,
        )
        .unwrap();
        assert_eq!(config.command, "pressure");
        assert_eq!(
            config.mirror1,
            MaterialSpec::Plasma {
                lambda_p_nm: Some(136.0)
            }
        );
        assert_eq!(config.mirror2, config.mirror1);
        assert_eq!(config.tolerances.rel_tol, 1e-9);
        assert_eq!(config.tolerances.max_matsubara, 1_000_000);
        assert_eq!(config.tolerances.quad_points, 40);
    }

    #[test]
    fn mirror2_defaults_to_mirror1() {
        let config = parse(
            r#"{
                "separation_m": 1e-6,
                "temperature_k": 0,
                "mirror1": {"model": "drude"}
            }"#,
            Command::Energy,
        )
        .unwrap();
        assert_eq!(
            config.mirror2,
            MaterialSpec::Drude {
                lambda_p_nm: Some(136.0),
                gamma_ratio: Some(0.004)
            }
        );
    }

    #[test]
    fn unknown_keys_are_all_listed() {
        let result = parse(
            r#"{
                "separation_m": 1e-6,
                "temperature_k": 300,
                "separation": 2e-6,
                "mirror1": {"model": "plasma", "wavelength": 136},
                "tolerances": {"rel_tol": 1e-9, "tol": 1}
            }"#,
            Command::Pressure,
        );
        let message = result.unwrap_err().0;
        assert!(message.contains("unknown config keys"));
        assert!(message.contains("separation"));
        assert!(message.contains("mirror1.wavelength"));
        assert!(message.contains("tolerances.tol"));
    }

    #[test]
    fn model_specific_keys_are_enforced() {
        let result = parse(
            r#"{
                "separation_m": 1e-6,
                "temperature_k": 300,
                "mirror1": {"model": "perfect", "lambda_p_nm": 136}
            }"#,
            Command::Pressure,
        );
        assert!(result.unwrap_err().0.contains("mirror1.lambda_p_nm"));
    }

    #[test]
    fn negative_plasma_wavelength_names_the_field() {
        let result = parse(
            r#"{
                "separation_m": 1e-6,
                "temperature_k": 300,
                "mirror1": {"model": "plasma", "lambda_p_nm": -5}
            }"#,
            Command::Pressure,
        );
        assert!(result.unwrap_err().0.contains("lambda_p_nm"));
    }

    #[test]
    fn degenerate_drude_is_noted() {
        let config = parse(
            r#"{
                "separation_m": 1e-6,
                "temperature_k": 300,
                "mirror1": {"model": "drude", "gamma_ratio": 0}
            }"#,
            Command::Pressure,
        )
        .unwrap();
        let notes = config.notes();
        assert!(notes.iter().any(|n| n.contains("mirror1") && n.contains("plasma")));
    }

    #[test]
    fn command_mismatch_is_rejected() {
        let result = parse(
            r#"{"command": "energy", "separation_m": 1e-6, "temperature_k": 300}"#,
            Command::Pressure,
        );
        assert!(result.unwrap_err().0.contains("energy"));
    }

    #[test]
    fn sweep_needs_a_range_and_scalars_need_a_separation() {
        assert!(parse(r#"{"separation_m": 1e-6, "temperature_k": 300}"#, Command::Sweep)
            .unwrap_err()
            .0
            .contains("separation_range"));
        assert!(parse(
            r#"{"separation_range": {"min_m": 1e-7, "max_m": 1e-5, "points": 5}, "temperature_k": 300}"#,
            Command::Pressure,
        )
        .unwrap_err()
        .0
        .contains("separation_m"));
        let bad_range = parse(
            r#"{"separation_range": {"min_m": 1e-5, "max_m": 1e-7, "points": 5}, "temperature_k": 300}"#,
            Command::Sweep,
        );
        assert!(bad_range.unwrap_err().0.contains("min_m < max_m"));
    }

    #[test]
    fn radius_only_for_pfa_commands() {
        assert!(parse(
            r#"{"separation_m": 1e-6, "temperature_k": 0, "radius_m": 1e-4}"#,
            Command::Energy,
        )
        .unwrap_err()
        .0
        .contains("radius_m"));
        assert!(parse(r#"{"separation_m": 1e-6, "temperature_k": 0}"#, Command::PfaForce)
            .unwrap_err()
            .0
            .contains("radius_m"));
        let ok = parse(
            r#"{"separation_m": 1e-6, "temperature_k": 0, "radius_m": 1e-4}"#,
            Command::PfaForce,
        )
        .unwrap();
        assert_eq!(ok.radius_m, Some(1e-4));
    }

    #[test]
    fn resolved_config_round_trips_through_serde() {
        let config = parse(
            r#"{
                "separation_m": 1e-6,
                "temperature_k": 300,
                "mirror1": {"model": "drude"},
                "tolerances": {"rel_tol": 1e-8}
            }"#,
            Command::Pressure,
        )
        .unwrap();
        let echoed = serde_json::to_string(&config).unwrap();
        let reparsed = parse(&echoed, Command::Pressure).unwrap();
        assert_eq!(reparsed, config);
    }

    #[test]
    fn grid_is_log_spaced_and_ascending() {
        let range = RangeSpec {
            min_m: 1e-7,
            max_m: 1e-5,
            points: 5,
        };
        let grid = range.grid();
        assert_eq!(grid.len(), 5);
        assert_eq!(grid[0], 1e-7);
        let ratio = grid[1] / grid[0];
        for pair in grid.windows(2) {
            assert!((pair[1] / pair[0] - ratio).abs() < 1e-12);
        }
    }

    #[test]
    fn thermal_ratio_requires_metal_mirror() {
        assert!(parse(
            r#"{"separation_m": 5e-5, "temperature_k": 300, "mirror1": {"model": "perfect"}}"#,
            Command::ThermalRatio,
        )
        .is_err());
        let ok = parse(
            r#"{"separation_m": 5e-5, "temperature_k": 300}"#,
            Command::ThermalRatio,
        )
        .unwrap();
        let (omega_p, gamma) = ok.mirror1.metal_parameters().unwrap();
        assert!(omega_p > 1e16 && gamma > 0.0);
    }
}
