//! Quench-based embedding quality metrics.
//!
//! A register encodes a target graph well when, over a quench from the
//! all-ground state, probability weight stays out of the non-independent
//! subspace (low maximum independence violation) and no connected pair of
//! atoms reaches joint excitation (low correlation on edges). Sweeping a
//! uniform scale factor λ over the atomic coordinates probes where encoded
//! edges break; λ_c is the scale at which the first edge is lost.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graphs::{AbstractGraph, DiskGraph, GraphError, VertexSet};
use crate::quantum::{self, HermitianOperator, QuantumState, QuenchTrajectory};
use crate::rydberg::{AtomRegister, PhysicalConstants, RegisterError};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("graph has {graph} vertices but the register has {register} atoms")]
    SizeMismatch { graph: usize, register: usize },
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("amplitude must be positive, got {0}")]
    BadAmplitude(f64),
    #[error("special vertex {vertex} out of range for {n} atoms")]
    SpecialVertexOutOfRange { vertex: usize, n: usize },
    #[error("scaling ratio must be positive, got {0}")]
    BadRatio(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Register(#[from] RegisterError),
    #[error(transparent)]
    Quantum(#[from] quantum::QuantumError),
}

/// How drive amplitudes are assigned across the register.
#[derive(Debug, Clone, PartialEq)]
pub enum EmbeddingProtocol {
    /// Uniform amplitude everywhere.
    GlobalDrive { omega: f64 },
    /// `special_omega` on the listed vertices, `base_omega` elsewhere.
    LocalDrive {
        base_omega: f64,
        special_omega: f64,
        special_vertices: Vec<usize>,
    },
    /// `special_omega` independently with the given probability per atom,
    /// drawn deterministically from the seed. Control case.
    ShuffledLocalDrive {
        base_omega: f64,
        special_omega: f64,
        probability: f64,
        seed: u64,
    },
}

impl EmbeddingProtocol {
    /// Per-atom amplitudes for an n-atom register.
    pub fn amplitudes(&self, n: usize) -> Result<Vec<f64>, EmbeddingError> {
        match self {
            EmbeddingProtocol::GlobalDrive { omega } => {
                if !(*omega > 0.0) {
                    return Err(EmbeddingError::BadAmplitude(*omega));
                }
                Ok(vec![*omega; n])
            }
            EmbeddingProtocol::LocalDrive {
                base_omega,
                special_omega,
                special_vertices,
            } => {
                if !(*base_omega > 0.0) {
                    return Err(EmbeddingError::BadAmplitude(*base_omega));
                }
                if !(*special_omega > 0.0) {
                    return Err(EmbeddingError::BadAmplitude(*special_omega));
                }
                let mut omegas = vec![*base_omega; n];
                for &v in special_vertices {
                    if v >= n {
                        return Err(EmbeddingError::SpecialVertexOutOfRange { vertex: v, n });
                    }
                    omegas[v] = *special_omega;
                }
                Ok(omegas)
            }
            EmbeddingProtocol::ShuffledLocalDrive {
                base_omega,
                special_omega,
                probability,
                seed,
            } => {
                if !(*base_omega > 0.0) {
                    return Err(EmbeddingError::BadAmplitude(*base_omega));
                }
                if !(*special_omega > 0.0) {
                    return Err(EmbeddingError::BadAmplitude(*special_omega));
                }
                if !(0.0..=1.0).contains(probability) {
                    return Err(EmbeddingError::BadProbability(*probability));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok((0..n)
                    .map(|_| {
                        if rng.random_range(0.0..1.0) < *probability {
                            *special_omega
                        } else {
                            *base_omega
                        }
                    })
                    .collect())
            }
        }
    }
}

/// Embedding quality at one scaling ratio.
#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    /// λ/λ_c applied to the instance coordinates.
    pub lambda_ratio: f64,
    /// Maximum independence violation over the quench.
    pub violation: f64,
    /// Maximal correlation matrix; diagonal holds max ⟨n_i⟩.
    pub correlation: DMatrix<f64>,
}

/// Diagonal projector onto computational basis states that are not
/// independent sets of `g`.
pub fn non_independence_projector(
    g: &AbstractGraph,
    n_atoms: usize,
) -> Result<HermitianOperator, EmbeddingError> {
    if g.n() != n_atoms {
        return Err(EmbeddingError::SizeMismatch {
            graph: g.n(),
            register: n_atoms,
        });
    }
    let dim = 1usize << n_atoms;
    let diagonal: Vec<f64> = (0..dim)
        .map(|mask| {
            let set = VertexSet::new(mask as u64, n_atoms).expect("mask within dimension");
            if g.is_independent(set) {
                0.0
            } else {
                1.0
            }
        })
        .collect();
    Ok(HermitianOperator::from_diagonal(&diagonal))
}

/// Maximum independence violation of a quench from all-ground: the peak
/// expectation of the non-independence projector.
pub fn violation_probability(
    register: &AtomRegister,
    g: &AbstractGraph,
    duration: f64,
    dt: f64,
) -> Result<f64, EmbeddingError> {
    if g.n() != register.len() {
        return Err(EmbeddingError::SizeMismatch {
            graph: g.n(),
            register: register.len(),
        });
    }
    let trajectory = quantum::evolve(
        &register.hamiltonian(),
        &QuantumState::all_ground(register.len()),
        duration,
        dt,
    )?;
    Ok(violation_from_trajectory(&trajectory, g))
}

/// Max-over-time of the non-independent weight along a trajectory.
pub fn violation_from_trajectory(trajectory: &QuenchTrajectory, g: &AbstractGraph) -> f64 {
    let n = g.n();
    let mut max = 0.0f64;
    for state in trajectory.states() {
        let mut weight = 0.0;
        for (mask, amp) in state.amplitudes().iter().enumerate() {
            let set = VertexSet::new(mask as u64, n).expect("mask within dimension");
            if !g.is_independent(set) {
                weight += amp.norm_sqr();
            }
        }
        max = max.max(weight);
    }
    max
}

/// Maximal correlation matrix of a quench from all-ground:
/// C_ij = max_t ⟨n_i n_j⟩, each pair maximized over its own time grid;
/// the diagonal reports max_t ⟨n_i⟩.
pub fn correlation_matrix(
    register: &AtomRegister,
    duration: f64,
    dt: f64,
) -> Result<DMatrix<f64>, EmbeddingError> {
    let trajectory = quantum::evolve(
        &register.hamiltonian(),
        &QuantumState::all_ground(register.len()),
        duration,
        dt,
    )?;
    Ok(correlation_from_trajectory(&trajectory))
}

/// Per-pair maximum joint-excitation weight along a trajectory.
pub fn correlation_from_trajectory(trajectory: &QuenchTrajectory) -> DMatrix<f64> {
    let n = trajectory.states()[0].n_atoms();
    let mut correlation = DMatrix::zeros(n, n);
    for state in trajectory.states() {
        let mut joint = DMatrix::zeros(n, n);
        for (mask, amp) in state.amplitudes().iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            for i in 0..n {
                if mask >> i & 1 == 0 {
                    continue;
                }
                for j in i..n {
                    if mask >> j & 1 == 1 {
                        joint[(i, j)] += p;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                if joint[(i, j)] > correlation[(i, j)] {
                    correlation[(i, j)] = joint[(i, j)];
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            correlation[(i, j)] = correlation[(j, i)];
        }
    }
    correlation
}

/// Sweep uniform coordinate scaling over λ = ratio·λ_c for each requested
/// ratio, quenching from all-ground under the protocol's amplitudes with
/// zero detuning. The violation target is the instance's induced edge set.
/// Reports come back in input order; shuffled draws depend only on the
/// protocol seed.
pub fn lambda_sweep(
    instance: &DiskGraph,
    constants: &PhysicalConstants,
    protocol: &EmbeddingProtocol,
    lambda_ratios: &[f64],
    duration: f64,
    dt: f64,
) -> Result<Vec<EmbeddingReport>, EmbeddingError> {
    for &ratio in lambda_ratios {
        if !(ratio > 0.0) {
            return Err(EmbeddingError::BadRatio(ratio));
        }
    }
    let n = instance.len();
    let target = instance.abstract_graph();
    let (lambda_c, _) = instance.lambda_breaks()?;
    let omegas = protocol.amplitudes(n)?;

    lambda_ratios
        .par_iter()
        .map(|&ratio| {
            let scaled = instance.scaled(ratio * lambda_c);
            let register = AtomRegister::new(
                scaled.centers().to_vec(),
                omegas.clone(),
                vec![0.0; n],
                *constants,
            )?;
            let trajectory = quantum::evolve(
                &register.hamiltonian(),
                &QuantumState::all_ground(n),
                duration,
                dt,
            )?;
            Ok(EmbeddingReport {
                lambda_ratio: ratio,
                violation: violation_from_trajectory(&trajectory, &target),
                correlation: correlation_from_trajectory(&trajectory),
            })
        })
        .collect()
}
