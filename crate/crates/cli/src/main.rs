//! Command-line driver: pair scans, the local-model fit pipeline, embedding
//! sweeps, MIS drive optimization, and disk realization. Every run writes
//! CSV/JSON artifacts plus a config sidecar into the output directory, and
//! reruns with the same flags and seeds are byte-identical.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;
mod embed;
mod fit;
mod mis;
mod pair;
mod realize;

use clap::{Parser, Subcommand};

use common::{CliError, GlobalOptions};

#[derive(Debug, Parser)]
#[command(name = "blockade", version, about = "Rydberg blockade and disk-graph embedding toolkit")]
struct Cli {
    /// Output directory (overrides the BLOCKADE_OUT environment variable).
    #[arg(long, global = true)]
    out_dir: Option<std::path::PathBuf>,
    /// Worker threads for sweep-level parallelism (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Interaction coefficient C6 in rad·µm^6/µs.
    #[arg(long, global = true, conflicts_with = "level")]
    c6: Option<f64>,
    /// Rydberg level preset for C6.
    #[arg(long, global = true, value_parser = ["n70", "n82"], default_value = "n70")]
    level: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Two-atom P_RR scans and blockade-radius extraction per scenario.
    Pair(pair::PairArgs),
    /// Locally driven sweep: per-combination radii, gradients, residuals.
    Fit(fit::FitArgs),
    /// Scaling sweep of an instance: violation and correlation matrices.
    Embed(embed::EmbedArgs),
    /// Optimize final-drive parameters and report MIS probabilities.
    Mis(mis::MisArgs),
    /// Search for a disk realization of a target graph.
    Realize(realize::RealizeArgs),
}

fn main() {
    let cli = Cli::parse();
    let global = match GlobalOptions::resolve(cli.out_dir.clone(), cli.threads, cli.c6, &cli.level)
    {
        Ok(g) => g,
        Err(e) => exit_with(e),
    };
    let result = match cli.command {
        Command::Pair(args) => pair::run(&global, &args),
        Command::Fit(args) => fit::run(&global, &args),
        Command::Embed(args) => embed::run(&global, &args),
        Command::Mis(args) => mis::run(&global, &args),
        Command::Realize(args) => realize::run(&global, &args),
    };
    if let Err(e) = result {
        exit_with(e);
    }
}

fn exit_with(error: CliError) -> ! {
    eprintln!("{}", error.report());
    std::process::exit(error.exit_code());
}
