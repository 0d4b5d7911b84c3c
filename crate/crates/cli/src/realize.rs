//! `realize`: search for disk-graph coordinates and radii realizing a
//! target graph, then write the instance JSON with the target adjacency
//! and seed embedded.

use std::path::PathBuf;

use blockade_core::graphs::{realize_disk_with, AbstractGraph, RealizeOptions};
use blockade_core::instances;
use blockade_core::io;
use clap::Args;
use serde::Serialize;

use crate::common::{validation, CliError, GlobalOptions, RunConfig, write_artifact, write_config};

#[derive(Debug, Args, Serialize)]
pub struct RealizeArgs {
    /// Built-in target name (p3, k23, g3, g4, g5, k16).
    #[arg(long, conflicts_with_all = ["edges", "n"])]
    pub target: Option<String>,
    /// Explicit edge list as "i-j,i-j,...".
    #[arg(long, requires = "n")]
    pub edges: Option<String>,
    /// Vertex count for an explicit edge list.
    #[arg(long)]
    pub n: Option<usize>,
    /// Radius palette in µm, comma separated. Defaults to the built-in
    /// target's suggested palette.
    #[arg(long)]
    pub palette: Option<String>,
    /// Master seed for the stochastic search.
    #[arg(long)]
    pub seed: u64,
    /// Annealing steps per restart.
    #[arg(long, default_value_t = 60_000)]
    pub iterations: usize,
    /// Parallel restarts.
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    /// Instance name written into the JSON (defaults to the target name).
    #[arg(long)]
    pub name: Option<String>,
    /// Output file name within the output directory.
    #[arg(long)]
    pub out_file: Option<PathBuf>,
}

fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .map(|pair| {
            let mut ends = pair.trim().split('-');
            let a = ends
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| CliError::Validation(format!("bad edge {pair:?}")))?;
            let b = ends
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| CliError::Validation(format!("bad edge {pair:?}")))?;
            if ends.next().is_some() {
                return Err(CliError::Validation(format!("bad edge {pair:?}")));
            }
            Ok((a, b))
        })
        .collect()
}

pub fn run(global: &GlobalOptions, args: &RealizeArgs) -> Result<(), CliError> {
    let config = RunConfig::new("realize", args, global);
    let (target, default_palette, name) = match (&args.target, &args.edges, args.n) {
        (Some(name), None, None) => {
            let graph = instances::named_target(name).ok_or_else(|| {
                CliError::Validation(format!(
                    "unknown target {name:?}; built-ins are {:?}",
                    instances::target_names()
                ))
            })?;
            (graph, instances::suggested_palette(name), name.clone())
        }
        (None, Some(edges), Some(n)) => {
            let graph = AbstractGraph::new(n, parse_edge_list(edges)?).map_err(validation)?;
            (graph, None, "custom".to_string())
        }
        _ => {
            return Err(CliError::Validation(
                "give either --target NAME or both --edges and --n".into(),
            ));
        }
    };
    if target.n() > 12 {
        return Err(CliError::Validation(format!(
            "target has {} vertices; the realizer is limited to 12",
            target.n()
        )));
    }
    let palette = match &args.palette {
        Some(text) => crate::common::parse_float_list(text)?,
        None => default_palette.ok_or_else(|| {
            CliError::Validation("--palette is required for custom targets".into())
        })?,
    };
    if palette.iter().any(|&r| !(r > 0.0)) {
        return Err(CliError::Validation("palette radii must be positive".into()));
    }

    let options = RealizeOptions {
        iterations: args.iterations,
        restarts: args.restarts,
        ..RealizeOptions::default()
    };
    let name = args.name.clone().unwrap_or(name);
    match realize_disk_with(&target, &palette, args.seed, &options) {
        Ok(graph) => {
            let json = io::instance_to_json(&name, &graph, Some(args.seed)).map_err(validation)?;
            let file_name = args
                .out_file
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("{name}.json")));
            let path = write_artifact(&global.out_dir, &file_name.to_string_lossy(), &json)?;
            write_config(&global.out_dir, &format!("realize_{name}"), &config)?;
            println!(
                "realize: {} with {} vertices and {} edges written to {}",
                name,
                graph.len(),
                graph.induced_edges().len(),
                path.display()
            );
            Ok(())
        }
        Err(failure) => Err(CliError::Numerical(format!(
            "no exact realization of {name} found: best layout violates {} pair(s); \
             try more --iterations, more --restarts, or a different --palette",
            failure.violations
        ))),
    }
}
