//! `embed`: λ-scaling sweep of a disk-graph instance under one driving
//! protocol, reporting the maximum independence violation and the maximal
//! correlation matrix per ratio.

use std::f64::consts::PI;
use std::path::PathBuf;

use blockade_core::embedding::{self, EmbeddingProtocol};
use blockade_core::io::{self, fmt_float, CsvTable};
use clap::Args;
use serde::Serialize;

use crate::common::{
    numerical, parse_float_list, parse_index_list, validation, CliError, GlobalOptions, RunConfig,
    write_artifact, write_config,
};

#[derive(Debug, Args, Serialize)]
pub struct EmbedArgs {
    /// Instance JSON file.
    #[arg(long)]
    pub instance: PathBuf,
    /// Driving protocol.
    #[arg(long, value_parser = ["global", "local", "shuffled"])]
    pub protocol: String,
    /// Base amplitude in rad/µs.
    #[arg(long, default_value_t = PI)]
    pub base_omega: f64,
    /// Reduced amplitude placed on special vertices, in rad/µs.
    #[arg(long, default_value_t = PI / 20.0)]
    pub special_omega: f64,
    /// Special vertices for the local protocol, comma separated.
    #[arg(long, default_value = "0,4,5")]
    pub special: String,
    /// Per-atom probability of the special amplitude (shuffled protocol).
    #[arg(long, default_value_t = 3.0 / 7.0)]
    pub probability: f64,
    /// Seed for the shuffled protocol (required there).
    #[arg(long)]
    pub seed: Option<u64>,
    /// λ/λ_c ratios to sweep, comma separated.
    #[arg(long, default_value = "0.8,2.0")]
    pub ratios: String,
    /// Quench duration in µs.
    #[arg(long, default_value_t = 100.0)]
    pub duration: f64,
    /// Observable sampling step in µs.
    #[arg(long, default_value_t = 0.05)]
    pub dt: f64,
}

pub fn run(global: &GlobalOptions, args: &EmbedArgs) -> Result<(), CliError> {
    let config = RunConfig::new("embed", args, global);
    let instance = io::read_instance(&args.instance).map_err(validation)?;
    if instance.graph.len() > 12 {
        return Err(CliError::Validation(format!(
            "instance has {} vertices; dense simulation is limited to 12 atoms",
            instance.graph.len()
        )));
    }
    let ratios = parse_float_list(&args.ratios)?;

    let protocol = match args.protocol.as_str() {
        "global" => EmbeddingProtocol::GlobalDrive {
            omega: args.base_omega,
        },
        "local" => EmbeddingProtocol::LocalDrive {
            base_omega: args.base_omega,
            special_omega: args.special_omega,
            special_vertices: parse_index_list(&args.special)?,
        },
        _ => {
            let seed = args.seed.ok_or_else(|| {
                CliError::Validation("--seed is required for the shuffled protocol".into())
            })?;
            EmbeddingProtocol::ShuffledLocalDrive {
                base_omega: args.base_omega,
                special_omega: args.special_omega,
                probability: args.probability,
                seed,
            }
        }
    };

    // Surface amplitude-assignment problems as validation before the sweep.
    protocol.amplitudes(instance.graph.len()).map_err(validation)?;

    let reports = embedding::lambda_sweep(
        &instance.graph,
        &global.constants,
        &protocol,
        &ratios,
        args.duration,
        args.dt,
    )
    .map_err(numerical)?;

    let mut violation = CsvTable::new(
        &config.metadata(),
        &["protocol", "lambda_ratio", "violation"],
    );
    for report in &reports {
        violation.row(&[
            args.protocol.clone(),
            fmt_float(report.lambda_ratio),
            fmt_float(report.violation),
        ]);
    }
    write_artifact(&global.out_dir, "embed_violation.csv", &violation.finish())?;

    for report in &reports {
        let n = instance.graph.len();
        let columns: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
        let mut meta = config.metadata();
        meta.push(("lambda_ratio", fmt_float(report.lambda_ratio)));
        let mut table = CsvTable::new(&meta, &column_refs);
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| fmt_float(report.correlation[(i, j)])).collect();
            table.row(&row);
        }
        let name = format!(
            "embed_corr_{}_{}.csv",
            args.protocol,
            fmt_ratio(report.lambda_ratio)
        );
        write_artifact(&global.out_dir, &name, &table.finish())?;
    }
    write_config(&global.out_dir, "embed", &config)?;
    println!(
        "embed: instance {} under {} drive, {} ratios; wrote embed_violation.csv and correlation blocks to {}",
        instance.name,
        args.protocol,
        reports.len(),
        global.out_dir.display()
    );
    Ok(())
}

fn fmt_ratio(ratio: f64) -> String {
    format!("{ratio}").replace('.', "p")
}
