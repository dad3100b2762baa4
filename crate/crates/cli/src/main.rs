//! Command-line front end for the Casimir engine.
//!
//! Every subcommand reads a JSON config, echoes the fully resolved form
//! to stderr and prints its observable to stdout; `sweep` writes a CSV
//! over a log-spaced separation grid instead. Exit codes: 0 success,
//! 1 usage or input error, 2 finished but not converged.

mod config;

use casimir_core::{
    casimir_energy_per_area, casimir_pressure, evaluate, pfa_force, pfa_gradient,
    thermal_ratio_with_params, CavityConfig, EngineResult, Material, SphereGeometry,
};
use clap::{Args, Parser, Subcommand};
use config::{Command, RunConfig};
use rayon::prelude::*;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir free energy, pressure and sphere-plane observables for real mirrors"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Free energy per unit area at one separation (J/m^2)
    Energy(RunArgs),
    /// Pressure at one separation (Pa)
    Pressure(RunArgs),
    /// Reduction factors eta_F and eta_E relative to ideal mirrors
    Eta(RunArgs),
    /// Sphere-plane force in the proximity-force approximation (N)
    PfaForce(RunArgs),
    /// Sphere-plane force gradient in the proximity-force approximation (N/m)
    PfaGradient(RunArgs),
    /// Plasma-to-Drude pressure ratio at one separation
    ThermalRatio(RunArgs),
    /// Separation sweep over a log-spaced grid, written as CSV
    Sweep(RunArgs),
}

impl CliCommand {
    fn split(self) -> (Command, RunArgs) {
        match self {
            CliCommand::Energy(args) => (Command::Energy, args),
            CliCommand::Pressure(args) => (Command::Pressure, args),
            CliCommand::Eta(args) => (Command::Eta, args),
            CliCommand::PfaForce(args) => (Command::PfaForce, args),
            CliCommand::PfaGradient(args) => (Command::PfaGradient, args),
            CliCommand::ThermalRatio(args) => (Command::ThermalRatio, args),
            CliCommand::Sweep(args) => (Command::Sweep, args),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// CSV output path (sweep only; overrides the config's `out`)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, args) = cli.command.split();
    match run(command, args) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, args: RunArgs) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| format!("reading {}: {e}", args.config.display()))?;
    let cli_out = args.out.map(|p| p.display().to_string());
    let config =
        config::parse_config(&text, command, cli_out).map_err(|e| e.to_string())?;

    let echo = serde_json::to_string(&config).expect("resolved config serializes");
    eprintln!("resolved-config: {echo}");
    for note in config.notes() {
        eprintln!("{note}");
    }

    let mirror1 = config.mirror1.to_material().map_err(|e| e.to_string())?;
    let mirror2 = config.mirror2.to_material().map_err(|e| e.to_string())?;

    if command == Command::Sweep {
        return run_sweep(&config, &mirror1, &mirror2);
    }

    let separation = config.separation_m.expect("scalar commands carry one");
    let cavity = cavity_at(&config, &mirror1, &mirror2, separation)?;
    let mut converged = true;
    match command {
        Command::Energy => {
            let result = engine_result(&cavity)?;
            converged = result.converged;
            println!("free_energy_per_area_J_m2 {:.11e}", result.free_energy_per_area);
        }
        Command::Pressure => {
            let result = engine_result(&cavity)?;
            converged = result.converged;
            println!("pressure_Pa {:.11e}", result.pressure);
        }
        Command::Eta => {
            let result = engine_result(&cavity)?;
            converged = result.converged;
            println!(
                "eta_F {:.11e}",
                result.pressure / casimir_pressure(separation)
            );
            println!(
                "eta_E {:.11e}",
                result.free_energy_per_area / casimir_energy_per_area(separation)
            );
        }
        Command::PfaForce | Command::PfaGradient => {
            let radius = config.radius_m.expect("pfa commands carry one");
            let geometry =
                SphereGeometry::new(radius, separation).map_err(|e| e.to_string())?;
            converged = engine_result(&cavity)?.converged;
            if command == Command::PfaForce {
                let force = pfa_force(&geometry, &cavity).map_err(|e| e.to_string())?;
                println!("pfa_force_N {force:.11e}");
            } else {
                let gradient =
                    pfa_gradient(&geometry, &cavity).map_err(|e| e.to_string())?;
                println!("pfa_gradient_N_m {gradient:.11e}");
            }
        }
        Command::ThermalRatio => {
            let (omega_p, gamma) = config
                .mirror1
                .metal_parameters()
                .expect("validated at parse time");
            let ratio =
                thermal_ratio_with_params(separation, config.temperature_k, omega_p, gamma)
                    .map_err(|e| e.to_string())?;
            println!("thermal_ratio {ratio:.11e}");
        }
        Command::Sweep => unreachable!("handled above"),
    }

    if !converged {
        eprintln!("warning: result did not reach the requested tolerance");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn cavity_at(
    config: &RunConfig,
    mirror1: &Material,
    mirror2: &Material,
    separation: f64,
) -> Result<CavityConfig, String> {
    let mut cavity = CavityConfig::new(
        separation,
        config.temperature_k,
        mirror1.clone(),
        mirror2.clone(),
    );
    cavity.tolerances = config.numeric_tolerances();
    cavity.validate().map_err(|e| e.to_string())?;
    Ok(cavity)
}

fn engine_result(cavity: &CavityConfig) -> Result<EngineResult, String> {
    evaluate(cavity).map_err(|e| e.to_string())
}

struct SweepRow {
    separation: f64,
    result: EngineResult,
}

fn run_sweep(
    config: &RunConfig,
    mirror1: &Material,
    mirror2: &Material,
) -> Result<ExitCode, String> {
    let grid = config.separation_range.expect("sweep carries a range").grid();
    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&separation| {
            let cavity = cavity_at(config, mirror1, mirror2, separation)?;
            let result = engine_result(&cavity)?;
            Ok(SweepRow { separation, result })
        })
        .collect::<Result<_, String>>()?;

    let mut csv = String::new();
    csv.push_str(
        "L_m,free_energy_per_area_J_m2,pressure_Pa,eta_F,eta_E,matsubara_terms,converged\n",
    );
    for row in &rows {
        let r = &row.result;
        csv.push_str(&format!(
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{},{}\n",
            row.separation,
            r.free_energy_per_area,
            r.pressure,
            r.pressure / casimir_pressure(row.separation),
            r.free_energy_per_area / casimir_energy_per_area(row.separation),
            r.matsubara_terms,
            r.converged,
        ));
    }

    match &config.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| format!("writing {path}: {e}"))?;
        }
        None => {
            std::io::stdout()
                .write_all(csv.as_bytes())
                .map_err(|e| format!("writing stdout: {e}"))?;
        }
    }

    let failed = rows.iter().filter(|row| !row.result.converged).count();
    if failed > 0 {
        eprintln!("warning: {failed} of {} rows did not reach the requested tolerance", rows.len());
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}
