//! `pair`: two-atom P_RR scans over separation and blockade-radius
//! extraction over a set of amplitudes, for one driving scenario.

use blockade_core::blockade::{self, DriveScenario};
use blockade_core::io::{fmt_float, CsvTable};
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use crate::common::{
    numerical, parse_float_list, validation, CliError, GlobalOptions, RunConfig, write_artifact,
    write_config,
};

#[derive(Debug, Args, Serialize)]
pub struct PairArgs {
    /// Driving scenario.
    #[arg(long, value_parser = ["sequential", "global", "local"])]
    pub scenario: String,
    /// Average drive amplitude in rad/µs.
    #[arg(long)]
    pub omega: f64,
    /// Amplitude ratio Ω1/Ω0 for the local scenario.
    #[arg(long, default_value_t = 3.0)]
    pub ratio: f64,
    /// Uniform detuning in rad/µs (sequential and global only).
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Quench duration in µs.
    #[arg(long, default_value_t = 50.0)]
    pub duration: f64,
    /// Observable sampling step in µs.
    #[arg(long, default_value_t = blockade::DEFAULT_DT)]
    pub dt: f64,
    /// Scan range start in µm.
    #[arg(long, default_value_t = 5.0)]
    pub r_min: f64,
    /// Scan range end in µm.
    #[arg(long, default_value_t = 15.0)]
    pub r_max: f64,
    /// Number of scan points.
    #[arg(long, default_value_t = 30)]
    pub points: usize,
    /// Average amplitudes for the radius extraction, comma separated.
    #[arg(long, default_value = "0.5,1.0,1.5,2.0,2.5,3.0,3.5,4.0")]
    pub amplitudes: String,
    /// Bisection tolerance on the extracted radius in µm.
    #[arg(long, default_value_t = 0.02)]
    pub tol_r: f64,
}

fn scenario_for(args: &PairArgs, average_omega: f64) -> Result<DriveScenario, CliError> {
    if !(average_omega > 0.0) {
        return Err(CliError::Validation(format!(
            "amplitude must be positive, got {average_omega}"
        )));
    }
    Ok(match args.scenario.as_str() {
        "sequential" => DriveScenario::Sequential {
            omega: average_omega,
            delta: args.delta,
        },
        "global" => DriveScenario::Global {
            omega: average_omega,
            delta: args.delta,
        },
        _ => {
            if !(args.ratio > 0.0) {
                return Err(CliError::Validation(format!(
                    "ratio must be positive, got {}",
                    args.ratio
                )));
            }
            // Average (Ω0 + Ω1)/2 fixed, Ω1/Ω0 = ratio.
            let omega0 = 2.0 * average_omega / (1.0 + args.ratio);
            DriveScenario::Local {
                omega0,
                omega1: args.ratio * omega0,
                delta: args.delta,
            }
        }
    })
}

/// Model curve for the scan; the global and local curves only exist in
/// the zero-detuning regime.
fn model_prr(
    constants: &blockade_core::rydberg::PhysicalConstants,
    scenario: &DriveScenario,
    r: f64,
) -> Option<f64> {
    match *scenario {
        DriveScenario::Sequential { omega, delta } => {
            blockade::prr_sequential(constants, r, omega, delta).ok()
        }
        DriveScenario::Global { omega, delta } => {
            if delta == 0.0 {
                blockade::prr_global_simplified(constants, r, omega).ok()
            } else {
                None
            }
        }
        DriveScenario::Local { omega0, omega1, delta } => {
            if delta == 0.0 {
                blockade::prr_local(constants, r, omega0, omega1).ok()
            } else {
                None
            }
        }
    }
}

pub fn run(global: &GlobalOptions, args: &PairArgs) -> Result<(), CliError> {
    if args.points < 2 || !(args.r_max > args.r_min) || !(args.r_min > 0.0) {
        return Err(CliError::Validation(
            "need at least two scan points with 0 < r_min < r_max".into(),
        ));
    }
    let config = RunConfig::new("pair", args, global);
    let constants = global.constants;

    // P_RR over separation at the requested average amplitude.
    let scenario = scenario_for(args, args.omega)?;
    let (omega0, omega1) = scenario.omegas();
    let rows: Vec<(f64, f64, Option<f64>)> = (0..args.points)
        .into_par_iter()
        .map(|k| {
            let r = args.r_min + (args.r_max - args.r_min) * k as f64 / (args.points - 1) as f64;
            let sim = blockade::simulate_prr(&constants, &scenario, r, args.duration, args.dt)
                .map_err(numerical)?;
            let model = model_prr(&constants, &scenario, r);
            Ok((r, sim, model))
        })
        .collect::<Result<_, CliError>>()?;

    let mut scan = CsvTable::new(
        &config.metadata(),
        &[
            "scenario", "omega0", "omega1", "delta", "r_um", "prr_sim", "prr_model",
        ],
    );
    for (r, sim, model) in &rows {
        scan.row(&[
            args.scenario.clone(),
            fmt_float(omega0),
            fmt_float(omega1),
            fmt_float(args.delta),
            fmt_float(*r),
            fmt_float(*sim),
            model.map(fmt_float).unwrap_or_else(|| "nan".into()),
        ]);
    }
    write_artifact(&global.out_dir, "pair_scan.csv", &scan.finish())?;

    // Radius extraction across amplitudes.
    let amplitudes = parse_float_list(&args.amplitudes)?;
    let extracted: Vec<(DriveScenario, f64, f64)> = amplitudes
        .par_iter()
        .map(|&avg| {
            let scenario = scenario_for(args, avg)?;
            let model = scenario.model_radius(&constants).map_err(validation)?;
            let sim =
                blockade::rb_from_simulation(&constants, &scenario, args.duration, args.dt, args.tol_r)
                    .map_err(numerical)?;
            Ok((scenario, sim, model))
        })
        .collect::<Result<_, CliError>>()?;

    let mut radii = CsvTable::new(
        &config.metadata(),
        &["scenario", "omega0", "omega1", "rb_sim_um", "rb_model_um"],
    );
    for (scenario, sim, model) in &extracted {
        let (o0, o1) = scenario.omegas();
        radii.row(&[
            args.scenario.clone(),
            fmt_float(o0),
            fmt_float(o1),
            fmt_float(*sim),
            fmt_float(*model),
        ]);
    }
    write_artifact(&global.out_dir, "pair_radius.csv", &radii.finish())?;
    write_config(&global.out_dir, "pair", &config)?;
    println!(
        "pair: wrote pair_scan.csv ({} points) and pair_radius.csv ({} amplitudes) to {}",
        rows.len(),
        extracted.len(),
        global.out_dir.display()
    );
    Ok(())
}
