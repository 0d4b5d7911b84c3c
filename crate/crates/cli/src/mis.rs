//! `mis`: optimize final-drive parameters per mode on an instance and
//! report MIS probabilities, violation weights, and the relative sampling
//! enhancement between local and global driving.

use std::collections::BTreeMap;
use std::path::PathBuf;

use blockade_core::io::{self, fmt_float, CsvTable};
use blockade_core::mis_opt::{self, DriveMode, MisReport, OptimizeBounds};
use clap::Args;
use serde::Serialize;

use crate::common::{
    numerical, validation, CliError, GlobalOptions, RunConfig, write_artifact, write_config,
};

#[derive(Debug, Args, Serialize)]
pub struct MisArgs {
    /// Instance JSON file.
    #[arg(long)]
    pub instance: PathBuf,
    /// Drive modes to optimize, comma separated.
    #[arg(long, default_value = "local,global")]
    pub modes: String,
    /// Lower bound on κ.
    #[arg(long, default_value_t = 0.05)]
    pub kappa_min: f64,
    /// Upper bound on κ.
    #[arg(long, default_value_t = 2.0)]
    pub kappa_max: f64,
    /// Lower bound on δ_f in rad/µs.
    #[arg(long, default_value_t = 0.0)]
    pub delta_min: f64,
    /// Upper bound on δ_f in rad/µs.
    #[arg(long, default_value_t = 10.0)]
    pub delta_max: f64,
    /// Simplex refinement budget after the grid scan.
    #[arg(long, default_value_t = 200)]
    pub budget: usize,
}

pub fn run(global: &GlobalOptions, args: &MisArgs) -> Result<(), CliError> {
    let config = RunConfig::new("mis", args, global);
    let instance = io::read_instance(&args.instance).map_err(validation)?;
    if instance.graph.len() > 12 {
        return Err(CliError::Validation(format!(
            "instance has {} vertices; dense diagonalization is limited to 12 atoms",
            instance.graph.len()
        )));
    }
    let bounds = OptimizeBounds {
        kappa: (args.kappa_min, args.kappa_max),
        delta_f: (args.delta_min, args.delta_max),
    };

    let mut modes = Vec::new();
    for token in args.modes.split(',') {
        match token.trim() {
            "local" => modes.push(DriveMode::Local),
            "global" => modes.push(DriveMode::Global),
            other => {
                return Err(CliError::Validation(format!("unknown mode {other:?}")));
            }
        }
    }
    if modes.is_empty() {
        return Err(CliError::Validation("no modes requested".into()));
    }

    let mut reports: BTreeMap<&'static str, MisReport> = BTreeMap::new();
    for mode in modes {
        let report = mis_opt::optimize_drive(
            &instance.graph,
            &global.constants,
            &instance.target,
            mode,
            &bounds,
            args.budget,
        )
        .map_err(numerical)?;
        if report.flat_objective {
            return Err(CliError::Numerical(format!(
                "{} drive: P_MIS vanished on the whole grid, no informative optimum",
                mode.label()
            )));
        }
        reports.insert(mode.label(), report);
    }

    let mut optima = CsvTable::new(
        &config.metadata(),
        &[
            "instance",
            "mode",
            "kappa_opt",
            "delta_f_opt",
            "p_mis",
            "violation_weight",
        ],
    );
    for report in reports.values() {
        optima.row(&[
            instance.name.clone(),
            report.mode.label().to_string(),
            fmt_float(report.params.kappa),
            fmt_float(report.params.delta_f),
            fmt_float(report.p_mis),
            fmt_float(report.violation_weight),
        ]);
    }
    write_artifact(&global.out_dir, "mis_optima.csv", &optima.finish())?;

    // Enhancement rows only when both modes were optimized.
    if let (Some(local), Some(global_report)) = (reports.get("local"), reports.get("global")) {
        let mut enhancement = CsvTable::new(
            &config.metadata(),
            &[
                "instance",
                "k",
                "delta_k",
                "p_mis_k_local",
                "p_mis_k_global",
            ],
        );
        let levels = local.p_mis_k.len().min(global_report.p_mis_k.len());
        for k in 0..levels {
            let p_l = local.p_mis_k[k];
            let p_g = global_report.p_mis_k[k];
            enhancement.row(&[
                instance.name.clone(),
                k.to_string(),
                mis_opt::delta_k(p_l, p_g)
                    .map(fmt_float)
                    .unwrap_or_default(),
                fmt_float(p_l),
                fmt_float(p_g),
            ]);
        }
        write_artifact(&global.out_dir, "mis_delta_k.csv", &enhancement.finish())?;
    }
    write_config(&global.out_dir, "mis", &config)?;
    for report in reports.values() {
        println!(
            "mis: {} {} drive optimum at kappa = {:.4}, delta_f = {:.4}: P_MIS = {:.6}, violation weight = {:.3e}, degeneracy {}",
            instance.name,
            report.mode.label(),
            report.params.kappa,
            report.params.delta_f,
            report.p_mis,
            report.violation_weight,
            report.ground_degeneracy,
        );
    }
    Ok(())
}
