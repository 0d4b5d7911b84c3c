//! Exact simulation of small Rydberg atom arrays with per-atom drive
//! amplitudes, plus the graph machinery needed to embed disk graphs into
//! such arrays and judge the result.
//!
//! The crate is organised in layers:
//!
//! * [`quantum`] — dense state vectors, Hermitian operators, and
//!   constant-Hamiltonian time evolution (spectral and Runge-Kutta paths).
//! * [`rydberg`] — physical units, the van der Waals constant, atom
//!   registers, and construction of the two-level Rydberg Hamiltonian.
//! * [`blockade`] — two-atom blockade models: closed forms for sequential
//!   and global driving, the effective-amplitude local model, blockade-radius
//!   extraction from simulation, and the gradient-fit pipeline.
//! * [`graphs`] — disk graphs, independence combinatorics, exact MIS
//!   enumeration, scaling break points, and a stochastic disk realizer.
//! * [`embedding`] — quench-based embedding quality metrics: maximum
//!   independence violation and the maximal correlation matrix.
//! * [`mis_opt`] — ground-state analysis of final Hamiltonians with finite
//!   local/global drives: `P_MIS`, `P_(MIS-k)`, and drive optimization.
//! * [`io`] — JSON schemas for registers and disk-graph instances, and
//!   fixed-precision CSV emission.
//! * [`instances`] — built-in instance geometries and target graphs.
//!
//! Units are µm, µs and rad/µs throughout, with ħ = 1. Basis ordering is
//! little-endian in the atom index: bit `i` of a computational-basis index
//! is the Rydberg occupation of atom `i`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blockade;
pub mod embedding;
pub mod graphs;
pub mod instances;
pub mod io;
pub mod mis_opt;
pub mod quantum;
pub mod rydberg;
