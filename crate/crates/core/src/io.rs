//! File formats: disk-graph instance JSON, register JSON, and CSV output.
//!
//! Instance files carry the geometry, the per-vertex blockade radii, the
//! intended edge set, and the seed that produced the layout:
//!
//! ```json
//! {"name": "k23", "centers": [[x, y], ...], "radii": [r, ...],
//!  "target_edges": [[i, j], ...], "seed": 7}
//! ```
//!
//! Loading re-derives the induced edge set from the geometry and refuses
//! instances whose `target_edges` disagree, listing the differing pairs.
//!
//! Register files use `{"c6": f, "atoms": [{"x", "y", "omega", "delta"}]}`.
//! Atom order in the file is atom index in the register, which is also the
//! bit position in the computational basis (little-endian).
//!
//! CSV output starts with a `#`-prefixed header block (version, config
//! hash) followed by one column-name row; all floats are printed with 12
//! significant digits so reruns are byte-identical.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

use crate::graphs::{AbstractGraph, DiskGraph, GraphError};
use crate::rydberg::{AtomRegister, PhysicalConstants, RegisterError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Register(#[from] RegisterError),
    #[error(
        "target edges disagree with the geometry: missing {missing:?}, unexpected {unexpected:?}"
    )]
    EdgeMismatch {
        missing: Vec<(usize, usize)>,
        unexpected: Vec<(usize, usize)>,
    },
}

/// On-disk instance schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub name: String,
    pub centers: Vec<[f64; 2]>,
    pub radii: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A validated instance: geometry plus the target graph it encodes.
#[derive(Debug, Clone)]
pub struct DiskGraphInstance {
    pub name: String,
    pub graph: DiskGraph,
    pub target: AbstractGraph,
    pub seed: Option<u64>,
}

/// Parse and validate an instance from raw JSON bytes.
pub fn parse_instance(bytes: &[u8]) -> Result<DiskGraphInstance, IoError> {
    let file: InstanceFile = serde_json::from_slice(bytes)?;
    let graph = DiskGraph::new(file.centers, file.radii)?;
    let induced = graph.induced_edges();
    let target = match file.target_edges {
        Some(edges) => {
            let declared = AbstractGraph::new(
                graph.len(),
                edges.iter().map(|e| (e[0], e[1])).collect(),
            )?;
            let induced_graph = AbstractGraph::new(graph.len(), induced)?;
            let missing: Vec<(usize, usize)> = declared
                .edges()
                .iter()
                .filter(|e| !induced_graph.edges().contains(e))
                .copied()
                .collect();
            let unexpected: Vec<(usize, usize)> = induced_graph
                .edges()
                .iter()
                .filter(|e| !declared.edges().contains(e))
                .copied()
                .collect();
            if !missing.is_empty() || !unexpected.is_empty() {
                return Err(IoError::EdgeMismatch {
                    missing,
                    unexpected,
                });
            }
            declared
        }
        None => AbstractGraph::new(graph.len(), induced)?,
    };
    Ok(DiskGraphInstance {
        name: file.name,
        graph,
        target,
        seed: file.seed,
    })
}

pub fn read_instance(path: &Path) -> Result<DiskGraphInstance, IoError> {
    let bytes = std::fs::read(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&bytes)
}

/// Serialize an instance, embedding the induced edge set as the target.
pub fn instance_to_json(
    name: &str,
    graph: &DiskGraph,
    seed: Option<u64>,
) -> Result<String, IoError> {
    let file = InstanceFile {
        name: name.to_string(),
        centers: graph.centers().to_vec(),
        radii: graph.radii().to_vec(),
        target_edges: Some(graph.induced_edges().iter().map(|&(i, j)| [i, j]).collect()),
        seed,
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// On-disk register schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegisterFile {
    pub c6: f64,
    pub atoms: Vec<AtomEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomEntry {
    pub x: f64,
    pub y: f64,
    pub omega: f64,
    pub delta: f64,
}

/// Parse and validate a register from raw JSON bytes.
pub fn parse_register(bytes: &[u8]) -> Result<AtomRegister, IoError> {
    let file: RegisterFile = serde_json::from_slice(bytes)?;
    let constants = PhysicalConstants::new(file.c6)?;
    let positions = file.atoms.iter().map(|a| [a.x, a.y]).collect();
    let omegas = file.atoms.iter().map(|a| a.omega).collect();
    let deltas = file.atoms.iter().map(|a| a.delta).collect();
    Ok(AtomRegister::new(positions, omegas, deltas, constants)?)
}

pub fn read_register(path: &Path) -> Result<AtomRegister, IoError> {
    let bytes = std::fs::read(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_register(&bytes)
}

pub fn register_to_json(register: &AtomRegister) -> Result<String, IoError> {
    let file = RegisterFile {
        c6: register.constants().c6(),
        atoms: register
            .positions()
            .iter()
            .zip(register.omegas())
            .zip(register.deltas())
            .map(|((p, &omega), &delta)| AtomEntry {
                x: p[0],
                y: p[1],
                omega,
                delta,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Fixed-width float formatting: 12 significant digits, scientific.
pub fn fmt_float(value: f64) -> String {
    format!("{value:.11e}")
}

/// FNV-1a hash of arbitrary bytes, used to fingerprint run configurations
/// in CSV headers.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// CSV builder with a `#`-prefixed header block and deterministic float
/// formatting.
#[derive(Debug, Clone)]
pub struct CsvTable {
    buffer: String,
    columns: usize,
}

impl CsvTable {
    /// Start a table with header metadata lines and the fixed column row.
    pub fn new(metadata: &[(&str, String)], columns: &[&str]) -> Self {
        let mut buffer = String::new();
        for (key, value) in metadata {
            writeln!(buffer, "# {key} = {value}").expect("string write");
        }
        writeln!(buffer, "{}", columns.join(",")).expect("string write");
        Self {
            buffer,
            columns: columns.len(),
        }
    }

    /// Append one row of preformatted cells.
    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "row width mismatch");
        writeln!(self.buffer, "{}", cells.join(",")).expect("string write");
    }

    pub fn finish(self) -> String {
        self.buffer
    }
}
