//! Shared CLI plumbing: resolved global options, error-to-exit-code
//! mapping, and artifact writing with config sidecars.

use std::path::{Path, PathBuf};

use blockade_core::io;
use blockade_core::rydberg::PhysicalConstants;
use serde::Serialize;

/// Environment variable naming the default output root.
pub const OUT_ENV: &str = "BLOCKADE_OUT";

/// Exit 2: input or schema validation failed.
/// Exit 3: a numerical procedure failed (no bracket, no realization, ...).
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    /// Machine-readable one-line JSON error report.
    pub fn report(&self) -> String {
        let (kind, message) = match self {
            CliError::Validation(m) => ("validation", m),
            CliError::Numerical(m) => ("numerical", m),
        };
        serde_json::json!({ "error": kind, "message": message }).to_string()
    }
}

pub fn validation<E: std::fmt::Display>(error: E) -> CliError {
    CliError::Validation(error.to_string())
}

pub fn numerical<E: std::fmt::Display>(error: E) -> CliError {
    CliError::Numerical(error.to_string())
}

/// Options common to every subcommand, fully resolved.
#[derive(Debug)]
pub struct GlobalOptions {
    pub out_dir: PathBuf,
    pub constants: PhysicalConstants,
    pub threads: usize,
}

impl GlobalOptions {
    pub fn resolve(
        out_dir: Option<PathBuf>,
        threads: Option<usize>,
        c6: Option<f64>,
        level: &str,
    ) -> Result<Self, CliError> {
        let out_dir = out_dir
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        let constants = match c6 {
            Some(value) => PhysicalConstants::new(value).map_err(validation)?,
            None => match level {
                "n82" => PhysicalConstants::n82(),
                _ => PhysicalConstants::n70(),
            },
        };
        let threads = threads.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
        Ok(Self {
            out_dir,
            constants,
            threads,
        })
    }
}

/// Serialized run configuration plus its hash, written alongside outputs.
pub struct RunConfig {
    pub json: String,
    pub hash: String,
}

impl RunConfig {
    pub fn new<T: Serialize>(command: &str, args: &T, global: &GlobalOptions) -> Self {
        let body = serde_json::json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "c6": global.constants.c6(),
            "threads": global.threads,
            "args": serde_json::to_value(args).expect("serializable args"),
        });
        let json = serde_json::to_string_pretty(&body).expect("serializable config");
        let hash = format!("{:016x}", io::fnv1a(json.as_bytes()));
        Self { json, hash }
    }

    /// Metadata lines for CSV headers.
    pub fn metadata(&self) -> Vec<(&'static str, String)> {
        vec![
            ("version", env!("CARGO_PKG_VERSION").to_string()),
            ("config", self.hash.clone()),
        ]
    }
}

/// Write an artifact file, creating the output directory as needed.
pub fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Validation(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// Write the config sidecar for a run prefix.
pub fn write_config(dir: &Path, prefix: &str, config: &RunConfig) -> Result<(), CliError> {
    write_artifact(dir, &format!("{prefix}_config.json"), &config.json)?;
    Ok(())
}

/// Parse a comma-separated list of floats.
pub fn parse_float_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Validation(format!("bad number {s:?}: {e}")))
        })
        .collect()
}

/// Parse a comma-separated list of vertex indices.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| CliError::Validation(format!("bad index {s:?}: {e}")))
        })
        .collect()
}
