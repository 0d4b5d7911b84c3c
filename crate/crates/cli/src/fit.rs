//! `fit`: the locally driven calibration sweep. For each amplitude
//! combination, simulate P_RR over a separation grid, extract the blockade
//! radius and the rescaling gradient, and fit the gradients against
//! 1/r_B(Ω_eff) with fluctuability weights.

use blockade_core::blockade::{self, DriveScenario, FitSample};
use blockade_core::io::{fmt_float, CsvTable};
use blockade_core::rydberg::PhysicalConstants;
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use crate::common::{
    numerical, parse_float_list, CliError, GlobalOptions, RunConfig, write_artifact, write_config,
};

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    /// Quench duration in µs.
    #[arg(long, default_value_t = 15.0)]
    pub duration: f64,
    /// Observable sampling step in µs.
    #[arg(long, default_value_t = blockade::DEFAULT_DT)]
    pub dt: f64,
    /// Separation grid start in µm.
    #[arg(long, default_value_t = 5.0)]
    pub r_min: f64,
    /// Separation grid end in µm.
    #[arg(long, default_value_t = 24.75)]
    pub r_max: f64,
    /// Separation grid step in µm.
    #[arg(long, default_value_t = 0.25)]
    pub r_step: f64,
    /// Base amplitudes Ω0, comma separated.
    #[arg(long, default_value = "1.0,1.5,2.0,2.5,3.0,3.5,4.0,4.5")]
    pub omega0: String,
    /// Amplitude ratios Ω1/Ω0 in [0.4, 1], comma separated.
    #[arg(long, default_value = "0.4,0.486,0.571,0.657,0.743,0.829,0.914,1.0")]
    pub ratios: String,
    /// Keep only the first N combinations of the grid.
    #[arg(long, default_value_t = 61)]
    pub combos: usize,
    /// Bisection tolerance on extracted radii in µm.
    #[arg(long, default_value_t = 0.02)]
    pub tol_r: f64,
}

pub struct ComboResult {
    pub omega0: f64,
    pub omega1: f64,
    pub rb_sim: f64,
    pub rb_model: f64,
    pub slope: f64,
    pub unimodal: bool,
    pub inv_rb_eff: f64,
    pub fluctuability_mean: f64,
    pub residuals: Vec<(f64, f64, f64)>, // (r, prr_sim, prr_model)
}

/// The amplitude grid truncated to the requested combination count.
pub fn combinations(omega0: &[f64], ratios: &[f64], combos: usize) -> Vec<(f64, f64)> {
    omega0
        .iter()
        .flat_map(|&o0| ratios.iter().map(move |&q| (o0, q * o0)))
        .take(combos)
        .collect()
}

pub fn evaluate_combo(
    constants: &PhysicalConstants,
    omega0: f64,
    omega1: f64,
    r_values: Vec<f64>,
    duration: f64,
    dt: f64,
    tol_r: f64,
) -> Result<ComboResult, blockade::ModelError> {
    let sample = FitSample::from_simulation(constants, omega0, omega1, r_values, duration, dt)?;
    let fit = blockade::fit_local_gradient(constants, &sample)?;
    let scenario = DriveScenario::Local {
        omega0,
        omega1,
        delta: 0.0,
    };
    let rb_sim = blockade::rb_from_simulation(constants, &scenario, duration, dt, tol_r)?;
    let rb_model = blockade::rb_local(constants, omega0, omega1)?;
    let eff = blockade::omega_eff(omega0, omega1)?;
    let inv_rb_eff = (eff / constants.c6()).powf(1.0 / 6.0);
    let residuals = sample
        .r_values
        .iter()
        .zip(&sample.prr_values)
        .map(|(&r, &sim)| {
            let model = blockade::prr_local(constants, r, omega0, omega1).unwrap_or(f64::NAN);
            (r, sim, model)
        })
        .collect();
    Ok(ComboResult {
        omega0,
        omega1,
        rb_sim,
        rb_model,
        slope: fit.slope,
        unimodal: fit.unimodal,
        inv_rb_eff,
        fluctuability_mean: sample.mean_fluctuability(),
        residuals,
    })
}

pub fn run(global: &GlobalOptions, args: &FitArgs) -> Result<(), CliError> {
    if !(args.r_step > 0.0) || !(args.r_max > args.r_min) {
        return Err(CliError::Validation("need r_min < r_max and r_step > 0".into()));
    }
    let config = RunConfig::new("fit", args, global);
    let constants = global.constants;
    let omega0 = parse_float_list(&args.omega0)?;
    let ratios = parse_float_list(&args.ratios)?;
    let combos = combinations(&omega0, &ratios, args.combos);
    if combos.is_empty() {
        return Err(CliError::Validation("empty amplitude grid".into()));
    }
    let steps = ((args.r_max - args.r_min) / args.r_step).round() as usize;
    let r_values: Vec<f64> = (0..=steps).map(|k| args.r_min + k as f64 * args.r_step).collect();

    let results: Vec<ComboResult> = combos
        .par_iter()
        .map(|&(o0, o1)| {
            evaluate_combo(&constants, o0, o1, r_values.clone(), args.duration, args.dt, args.tol_r)
                .map_err(numerical)
        })
        .collect::<Result<_, CliError>>()?;

    // Weighted proportional fit of the gradients against 1/r_B(eff).
    let xs: Vec<f64> = results.iter().map(|r| r.inv_rb_eff).collect();
    let ys: Vec<f64> = results.iter().map(|r| r.slope).collect();
    let ws: Vec<f64> = results.iter().map(|r| 1.0 - r.fluctuability_mean).collect();
    let slope = blockade::weighted_proportional_fit(&xs, &ys, &ws);

    let mut radii = CsvTable::new(
        &config.metadata(),
        &["omega0", "omega1", "rb_sim_um", "rb_model_um"],
    );
    for r in &results {
        radii.row(&[
            fmt_float(r.omega0),
            fmt_float(r.omega1),
            fmt_float(r.rb_sim),
            fmt_float(r.rb_model),
        ]);
    }
    write_artifact(&global.out_dir, "fit_radius.csv", &radii.finish())?;

    let mut meta = config.metadata();
    meta.push(("fitted_slope", fmt_float(slope)));
    let mut gradients = CsvTable::new(&meta, &["inv_rb_eff", "grad_fit", "fluctuability_mean"]);
    for r in &results {
        gradients.row(&[
            fmt_float(r.inv_rb_eff),
            fmt_float(r.slope),
            fmt_float(r.fluctuability_mean),
        ]);
    }
    write_artifact(&global.out_dir, "fit_gradient.csv", &gradients.finish())?;

    let mut residuals = CsvTable::new(
        &config.metadata(),
        &["omega0", "omega1", "r_um", "prr_sim", "prr_model", "residual"],
    );
    for combo in &results {
        for &(r, sim, model) in &combo.residuals {
            residuals.row(&[
                fmt_float(combo.omega0),
                fmt_float(combo.omega1),
                fmt_float(r),
                fmt_float(sim),
                fmt_float(model),
                fmt_float((model - sim).abs()),
            ]);
        }
    }
    write_artifact(&global.out_dir, "fit_residuals.csv", &residuals.finish())?;
    write_config(&global.out_dir, "fit", &config)?;
    let non_unimodal = results.iter().filter(|r| !r.unimodal).count();
    println!(
        "fit: {} combinations, fitted slope {} ({} flagged non-unimodal); wrote fit_radius.csv, fit_gradient.csv, fit_residuals.csv to {}",
        results.len(),
        fmt_float(slope),
        non_unimodal,
        global.out_dir.display()
    );
    Ok(())
}
