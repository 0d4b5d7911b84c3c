//! Ground-state analysis of final Hamiltonians with finite drives.
//!
//! Given a disk graph with blockade radii r_i, the final Hamiltonian
//! H(κ, δ_f) keeps local amplitudes Ω_i = κ·C6/r_i^6 (or, globally, one
//! amplitude at the average radius) and a uniform detuning δ_f. The
//! ground-state weight on maximum independent sets of the target graph,
//! P_MIS, and its near-optimal relaxations P_(MIS−k) quantify how useful
//! the Hamiltonian would be as an annealing endpoint; the relative
//! sampling enhancement compares local against global driving.

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::graphs::{AbstractGraph, DiskGraph, GraphError, VertexSet};
use crate::quantum::HermitianOperator;
use crate::rydberg::{AtomRegister, PhysicalConstants, RegisterError};

#[derive(Debug, Error)]
pub enum MisOptError {
    #[error("graph has {graph} vertices but the instance has {instance}")]
    SizeMismatch { graph: usize, instance: usize },
    #[error("kappa must be positive, got {0}")]
    BadKappa(f64),
    #[error("optimization bounds must be finite and ordered")]
    BadBounds,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Register(#[from] RegisterError),
}

/// Finite-drive mode of the final Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriveMode {
    Local,
    Global,
}

impl DriveMode {
    pub fn label(&self) -> &'static str {
        match self {
            DriveMode::Local => "local",
            DriveMode::Global => "global",
        }
    }
}

/// Drive strength κ and final detuning δ_f of a final Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinalDriveParams {
    pub kappa: f64,
    pub delta_f: f64,
}

/// Final Hamiltonian on the instance geometry: detuning δ_f everywhere and
/// amplitudes κ·C6/r_i^6 per vertex (local) or κ·C6/r_avg^6 with the
/// arithmetic mean radius (global).
pub fn final_hamiltonian(
    instance: &DiskGraph,
    constants: &PhysicalConstants,
    params: &FinalDriveParams,
    mode: DriveMode,
) -> Result<HermitianOperator, MisOptError> {
    if !(params.kappa > 0.0) {
        return Err(MisOptError::BadKappa(params.kappa));
    }
    let n = instance.len();
    let omegas: Vec<f64> = match mode {
        DriveMode::Local => instance
            .radii()
            .iter()
            .map(|&r| params.kappa * constants.interaction(r))
            .collect(),
        DriveMode::Global => {
            let r_avg = instance.radii().iter().sum::<f64>() / n as f64;
            vec![params.kappa * constants.interaction(r_avg); n]
        }
    };
    let register = AtomRegister::new(
        instance.centers().to_vec(),
        omegas,
        vec![params.delta_f; n],
        *constants,
    )?;
    Ok(register.hamiltonian())
}

/// Orthonormal basis of the lowest eigenspace together with the gap to the
/// next level.
#[derive(Debug, Clone)]
pub struct GroundSpace {
    pub energy: f64,
    pub basis: Vec<DVector<Complex64>>,
    pub gap: f64,
}

impl GroundSpace {
    pub fn degeneracy(&self) -> usize {
        self.basis.len()
    }

    /// Computational-basis weights of the uniform mixture over the
    /// ground-space basis.
    pub fn basis_weights(&self) -> Vec<f64> {
        let dim = self.basis[0].len();
        let mut weights = vec![0.0; dim];
        for vector in &self.basis {
            for (mask, amp) in vector.iter().enumerate() {
                weights[mask] += amp.norm_sqr();
            }
        }
        let m = self.basis.len() as f64;
        for w in &mut weights {
            *w /= m;
        }
        weights
    }
}

/// Eigenvectors whose eigenvalue is within `rel_tol`·(spectral range) of
/// the minimum. Degenerate ground spaces are later treated as a uniform
/// mixture, which avoids depending on the eigensolver's arbitrary basis
/// choice within the eigenspace.
pub fn ground_space(h: &HermitianOperator, rel_tol: f64) -> GroundSpace {
    let spectral = h.eigendecomposition();
    let dim = h.dimension();
    let min = spectral.eigenvalues[0];
    let max = spectral.eigenvalues[dim - 1];
    let window = rel_tol * (max - min).max(f64::MIN_POSITIVE);
    let mut basis = Vec::new();
    let mut gap = 0.0;
    for k in 0..dim {
        if spectral.eigenvalues[k] - min <= window {
            basis.push(DVector::from_column_slice(
                spectral.eigenvectors.column(k).as_slice(),
            ));
        } else {
            gap = spectral.eigenvalues[k] - min;
            break;
        }
    }
    GroundSpace {
        energy: min,
        basis,
        gap,
    }
}

/// Ground-state probability of measuring an independent set of size at
/// least |MIS| − k, under the uniform ground-space mixture. k = 0 is the
/// probability of measuring a maximum independent set.
pub fn p_mis_k(ground: &GroundSpace, g: &AbstractGraph, k: usize) -> f64 {
    let mis_size = g
        .mis_enumerate()
        .expect("graph within enumeration limits")
        .size;
    let threshold = mis_size.saturating_sub(k);
    let weights = ground.basis_weights();
    weights
        .iter()
        .enumerate()
        .filter(|(mask, _)| {
            let set = VertexSet::new(*mask as u64, g.n()).expect("mask within dimension");
            set.len() >= threshold && g.is_independent(set)
        })
        .map(|(_, w)| w)
        .sum()
}

/// Ground-state weight outside the independent-set subspace.
pub fn violation_weight(ground: &GroundSpace, g: &AbstractGraph) -> f64 {
    let weights = ground.basis_weights();
    weights
        .iter()
        .enumerate()
        .filter(|(mask, _)| {
            let set = VertexSet::new(*mask as u64, g.n()).expect("mask within dimension");
            !g.is_independent(set)
        })
        .map(|(_, w)| w)
        .sum()
}

/// Relative sampling enhancement 2(p_l − p_g)/(p_l + p_g), in [−2, 2].
/// `None` when both probabilities vanish.
pub fn delta_k(p_local: f64, p_global: f64) -> Option<f64> {
    let total = p_local + p_global;
    if total <= 0.0 {
        None
    } else {
        Some(2.0 * (p_local - p_global) / total)
    }
}

/// Search window for the drive optimization.
#[derive(Debug, Clone, Copy)]
pub struct OptimizeBounds {
    pub kappa: (f64, f64),
    pub delta_f: (f64, f64),
}

impl Default for OptimizeBounds {
    fn default() -> Self {
        // kappa = 1 puts each amplitude at its own blockade-radius
        // interaction; the window spans blockade- and drive-dominant regimes.
        Self {
            kappa: (0.05, 2.0),
            delta_f: (0.0, 10.0),
        }
    }
}

/// One optimized drive mode on one instance.
#[derive(Debug, Clone)]
pub struct MisReport {
    pub mode: DriveMode,
    pub params: FinalDriveParams,
    pub p_mis: f64,
    /// P_(MIS−k) for k = 0..=|MIS|.
    pub p_mis_k: Vec<f64>,
    pub violation_weight: f64,
    pub ground_degeneracy: usize,
    pub ground_gap: f64,
    /// Set when the whole coarse grid scored zero and the optimum is
    /// uninformative.
    pub flat_objective: bool,
}

/// Relative eigenvalue window used to detect ground-state degeneracy.
pub const GROUND_REL_TOL: f64 = 1e-9;

/// Maximize P_MIS over (κ, δ_f): a coarse grid scan (21×21 over the
/// bounds) followed by derivative-free simplex refinement from the best
/// grid point. Deterministic. The report carries the full observable set
/// at the optimum.
pub fn optimize_drive(
    instance: &DiskGraph,
    constants: &PhysicalConstants,
    g: &AbstractGraph,
    mode: DriveMode,
    bounds: &OptimizeBounds,
    refinement_budget: usize,
) -> Result<MisReport, MisOptError> {
    if g.n() != instance.len() {
        return Err(MisOptError::SizeMismatch {
            graph: g.n(),
            instance: instance.len(),
        });
    }
    let (k_lo, k_hi) = bounds.kappa;
    let (d_lo, d_hi) = bounds.delta_f;
    if !(k_lo > 0.0) || !(k_hi > k_lo) || !d_lo.is_finite() || !(d_hi >= d_lo) {
        return Err(MisOptError::BadBounds);
    }

    let objective = |kappa: f64, delta_f: f64| -> f64 {
        let params = FinalDriveParams { kappa, delta_f };
        match final_hamiltonian(instance, constants, &params, mode) {
            Ok(h) => {
                let ground = ground_space(&h, GROUND_REL_TOL);
                p_mis_k(&ground, g, 0)
            }
            Err(_) => 0.0,
        }
    };

    const GRID: usize = 21;
    let grid_points: Vec<(f64, f64)> = (0..GRID * GRID)
        .map(|idx| {
            let i = idx / GRID;
            let j = idx % GRID;
            (
                k_lo + (k_hi - k_lo) * i as f64 / (GRID - 1) as f64,
                d_lo + (d_hi - d_lo) * j as f64 / (GRID - 1) as f64,
            )
        })
        .collect();
    let scores: Vec<f64> = grid_points
        .par_iter()
        .map(|&(k, d)| objective(k, d))
        .collect();
    let (best_idx, &best_score) = scores
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    let flat_objective = best_score <= 0.0;

    let start = grid_points[best_idx];
    let optimum = if flat_objective {
        start
    } else {
        nelder_mead_2d(
            |p| -objective(p.0, p.1),
            start,
            (
                (k_hi - k_lo) / (GRID - 1) as f64,
                ((d_hi - d_lo) / (GRID - 1) as f64).max(1e-3),
            ),
            ((k_lo, k_hi), (d_lo, d_hi)),
            refinement_budget,
        )
    };

    let params = FinalDriveParams {
        kappa: optimum.0,
        delta_f: optimum.1,
    };
    let h = final_hamiltonian(instance, constants, &params, mode)?;
    let ground = ground_space(&h, GROUND_REL_TOL);
    let mis_size = g.mis_enumerate()?.size;
    let p_mis_values: Vec<f64> = (0..=mis_size).map(|k| p_mis_k(&ground, g, k)).collect();
    Ok(MisReport {
        mode,
        params,
        p_mis: p_mis_values[0],
        p_mis_k: p_mis_values,
        violation_weight: violation_weight(&ground, g),
        ground_degeneracy: ground.degeneracy(),
        ground_gap: ground.gap,
        flat_objective,
    })
}

/// Bounded Nelder-Mead in two dimensions, minimizing `f`. Candidate points
/// are clamped into the bounds, which keeps the simplex feasible.
fn nelder_mead_2d<F: Fn((f64, f64)) -> f64>(
    f: F,
    start: (f64, f64),
    step: (f64, f64),
    bounds: ((f64, f64), (f64, f64)),
    budget: usize,
) -> (f64, f64) {
    let clamp = |p: (f64, f64)| -> (f64, f64) {
        (
            p.0.clamp(bounds.0 .0, bounds.0 .1),
            p.1.clamp(bounds.1 .0, bounds.1 .1),
        )
    };
    let mut simplex = [
        clamp(start),
        clamp((start.0 + step.0, start.1)),
        clamp((start.0, start.1 + step.1)),
    ];
    let mut values = [f(simplex[0]), f(simplex[1]), f(simplex[2])];
    let mut evals = 3usize;

    while evals < budget {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let [best, mid, worst] = order;
        let spread = (values[worst] - values[best]).abs();
        let size = ((simplex[best].0 - simplex[worst].0).abs()
            + (simplex[best].1 - simplex[worst].1).abs())
        .max((simplex[best].0 - simplex[mid].0).abs() + (simplex[best].1 - simplex[mid].1).abs());
        if spread < 1e-12 && size < 1e-8 {
            break;
        }

        let centroid = (
            0.5 * (simplex[best].0 + simplex[mid].0),
            0.5 * (simplex[best].1 + simplex[mid].1),
        );
        let reflect = |alpha: f64| {
            clamp((
                centroid.0 + alpha * (centroid.0 - simplex[worst].0),
                centroid.1 + alpha * (centroid.1 - simplex[worst].1),
            ))
        };

        let reflected = reflect(1.0);
        let f_reflected = f(reflected);
        evals += 1;
        if f_reflected < values[best] {
            let expanded = reflect(2.0);
            let f_expanded = f(expanded);
            evals += 1;
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if f_reflected < values[mid] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            let contracted = reflect(-0.5);
            let f_contracted = f(contracted);
            evals += 1;
            if f_contracted < values[worst] {
                simplex[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                for idx in [mid, worst] {
                    simplex[idx] = clamp((
                        0.5 * (simplex[idx].0 + simplex[best].0),
                        0.5 * (simplex[idx].1 + simplex[best].1),
                    ));
                    values[idx] = f(simplex[idx]);
                    evals += 1;
                }
            }
        }
    }

    let mut best = 0;
    for k in 1..3 {
        if values[k] < values[best] {
            best = k;
        }
    }
    simplex[best]
}
