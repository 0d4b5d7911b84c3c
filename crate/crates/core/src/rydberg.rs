//! Physical configuration layer: units, the van der Waals constant, atom
//! registers, and construction of the Rydberg Hamiltonian
//!
//!   H = 1/2 Σ Ω_i σ_i^x − Σ δ_i n_i + Σ_{i<j} (C6 / r_ij^6) n_i n_j
//!
//! in units of µm, µs and rad/µs with ħ = 1. The C6 convention follows the
//! quoted GHz·µm^6 figures read directly as 1e3 rad·µm^6/µs per GHz·µm^6
//! (no 2π factor); only this convention reproduces the reference blockade
//! radii, e.g. 0.98·(C6/π)^(1/6) = 7.900 µm at the n = 70 level.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quantum::HermitianOperator;

#[derive(Debug, Error)]
pub enum RegisterError {
    #[error("C6 must be positive, got {0}")]
    BadConstant(f64),
    #[error("positions ({positions}), amplitudes ({omegas}) and detunings ({deltas}) differ in length")]
    LengthMismatch {
        positions: usize,
        omegas: usize,
        deltas: usize,
    },
    #[error("atoms {0} and {1} are coincident")]
    CoincidentAtoms(usize, usize),
    #[error("amplitude of atom {atom} is negative ({omega})")]
    NegativeAmplitude { atom: usize, omega: f64 },
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
}

/// Interaction coefficient C6 in rad·µm^6/µs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    c6: f64,
}

impl PhysicalConstants {
    pub fn new(c6: f64) -> Result<Self, RegisterError> {
        if !(c6 > 0.0) {
            return Err(RegisterError::BadConstant(c6));
        }
        Ok(Self { c6 })
    }

    /// Rydberg level n = 70: C6 = 862 GHz·µm^6.
    pub fn n70() -> Self {
        Self { c6: 8.62e5 }
    }

    /// Rydberg level n = 82: C6 = 5559 GHz·µm^6.
    pub fn n82() -> Self {
        Self { c6: 5.559e6 }
    }

    pub fn c6(&self) -> f64 {
        self.c6
    }

    /// Van der Waals interaction C6/r^6 at separation `r` µm.
    pub fn interaction(&self, r: f64) -> f64 {
        self.c6 / r.powi(6)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::n70()
    }
}

/// Atom positions with per-atom drive amplitude and detuning.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomRegister {
    positions: Vec<[f64; 2]>,
    omegas: Vec<f64>,
    deltas: Vec<f64>,
    constants: PhysicalConstants,
}

impl AtomRegister {
    pub fn new(
        positions: Vec<[f64; 2]>,
        omegas: Vec<f64>,
        deltas: Vec<f64>,
        constants: PhysicalConstants,
    ) -> Result<Self, RegisterError> {
        if positions.len() != omegas.len() || positions.len() != deltas.len() {
            return Err(RegisterError::LengthMismatch {
                positions: positions.len(),
                omegas: omegas.len(),
                deltas: deltas.len(),
            });
        }
        for (i, &omega) in omegas.iter().enumerate() {
            if omega < 0.0 {
                return Err(RegisterError::NegativeAmplitude { atom: i, omega });
            }
        }
        for i in 0..positions.len() {
            for j in (i + 1)..positions.len() {
                if distance(positions[i], positions[j]) <= 0.0 {
                    return Err(RegisterError::CoincidentAtoms(i, j));
                }
            }
        }
        Ok(Self {
            positions,
            omegas,
            deltas,
            constants,
        })
    }

    /// Uniform drive and detuning at the given positions.
    pub fn uniform(
        positions: Vec<[f64; 2]>,
        omega: f64,
        delta: f64,
        constants: PhysicalConstants,
    ) -> Result<Self, RegisterError> {
        let n = positions.len();
        Self::new(positions, vec![omega; n], vec![delta; n], constants)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        distance(self.positions[i], self.positions[j])
    }

    /// Positions multiplied by `lambda`; amplitudes, detunings and constants
    /// unchanged. The interaction term scales as lambda^-6.
    pub fn scaled(&self, lambda: f64) -> Result<Self, RegisterError> {
        if !(lambda > 0.0) {
            return Err(RegisterError::NonPositiveScale(lambda));
        }
        Ok(Self {
            positions: self
                .positions
                .iter()
                .map(|p| [p[0] * lambda, p[1] * lambda])
                .collect(),
            omegas: self.omegas.clone(),
            deltas: self.deltas.clone(),
            constants: self.constants,
        })
    }

    /// Build the Rydberg Hamiltonian in the little-endian computational
    /// basis (bit i of a basis index = occupation of atom i).
    pub fn hamiltonian(&self) -> HermitianOperator {
        let n = self.len();
        let dim = 1usize << n;
        let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);

        // Diagonal: detuning and interaction terms.
        for mask in 0..dim {
            let mut energy = 0.0;
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    energy -= self.deltas[i];
                    for j in (i + 1)..n {
                        if mask >> j & 1 == 1 {
                            energy += self.constants.interaction(self.distance(i, j));
                        }
                    }
                }
            }
            matrix[(mask, mask)] = Complex64::new(energy, 0.0);
        }

        // Off-diagonal: transverse drive flips one atom at a time.
        for i in 0..n {
            let half_omega = Complex64::new(self.omegas[i] / 2.0, 0.0);
            if half_omega.re == 0.0 {
                continue;
            }
            for mask in 0..dim {
                let flipped = mask ^ (1 << i);
                matrix[(mask, flipped)] += half_omega;
            }
        }

        HermitianOperator::new(matrix).expect("constructed matrix is Hermitian by symmetry")
    }
}

pub fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constants() -> PhysicalConstants {
        PhysicalConstants::n70()
    }

    #[test]
    fn single_atom_drive_is_half_omega_sigma_x() {
        let reg = AtomRegister::new(vec![[0.0, 0.0]], vec![2.0], vec![0.0], constants()).unwrap();
        let h = reg.hamiltonian();
        let m = h.matrix();
        assert_eq!(m[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(m[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(1, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn two_atom_interaction_shifts_double_excitation() {
        // r = 10 um: C6/r^6 = 8.62e5/1e6 = 0.862 rad/us on |RR> only.
        let reg = AtomRegister::new(
            vec![[0.0, 0.0], [10.0, 0.0]],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            constants(),
        )
        .unwrap();
        let h = reg.hamiltonian();
        let diag: Vec<f64> = (0..4).map(|k| h.matrix()[(k, k)].re).collect();
        assert_eq!(diag[0], 0.0);
        assert_eq!(diag[1], 0.0);
        assert_eq!(diag[2], 0.0);
        assert!((diag[3] - 0.862).abs() < 1e-12);
    }

    #[test]
    fn detuning_lowers_excited_states() {
        let reg = AtomRegister::new(
            vec![[0.0, 0.0], [100.0, 0.0]],
            vec![0.0, 0.0],
            vec![1.0, 1.0],
            constants(),
        )
        .unwrap();
        let h = reg.hamiltonian();
        let diag: Vec<f64> = (0..4).map(|k| h.matrix()[(k, k)].re).collect();
        assert_eq!(diag[0], 0.0);
        assert!((diag[1] + 1.0).abs() < 1e-12);
        assert!((diag[2] + 1.0).abs() < 1e-12);
        assert!((diag[3] - (-2.0 + 8.62e-7)).abs() < 1e-12);
    }

    #[test]
    fn hamiltonian_is_diagonal_without_drive() {
        let reg = AtomRegister::new(
            vec![[0.0, 0.0], [7.0, 1.0], [3.0, -4.0]],
            vec![0.0, 0.0, 0.0],
            vec![0.3, -0.2, 1.1],
            constants(),
        )
        .unwrap();
        let h = reg.hamiltonian();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(h.matrix()[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn relabeling_atoms_permutes_basis() {
        let positions = vec![[0.0, 0.0], [6.0, 0.0], [2.0, 5.0]];
        let omegas = vec![1.0, 2.0, 0.5];
        let deltas = vec![0.1, -0.4, 0.7];
        let reg = AtomRegister::new(positions.clone(), omegas.clone(), deltas.clone(), constants())
            .unwrap();
        // Swap atoms 0 and 2.
        let perm = [2usize, 1, 0];
        let reg_p = AtomRegister::new(
            perm.iter().map(|&i| positions[i]).collect(),
            perm.iter().map(|&i| omegas[i]).collect(),
            perm.iter().map(|&i| deltas[i]).collect(),
            constants(),
        )
        .unwrap();
        let h = reg.hamiltonian();
        let hp = reg_p.hamiltonian();
        let permute_mask = |mask: usize| -> usize {
            let mut out = 0;
            for (new_bit, &old_bit) in perm.iter().enumerate() {
                if mask >> old_bit & 1 == 1 {
                    out |= 1 << new_bit;
                }
            }
            out
        };
        for a in 0..8 {
            for b in 0..8 {
                let diff = (h.matrix()[(a, b)] - hp.matrix()[(permute_mask(a), permute_mask(b))]).norm();
                assert!(diff < 1e-12);
            }
        }
    }

    #[test]
    fn scaling_register_scales_distances() {
        let reg = AtomRegister::uniform(
            vec![[0.0, 0.0], [5.0, 0.0]],
            1.0,
            0.0,
            constants(),
        )
        .unwrap();
        let scaled = reg.scaled(2.0).unwrap();
        assert!((scaled.distance(0, 1) - 10.0).abs() < 1e-12);
        assert_eq!(scaled.omegas(), reg.omegas());
        let identical = reg.scaled(1.0).unwrap();
        assert_eq!(identical, reg);
        assert!(matches!(reg.scaled(0.0), Err(RegisterError::NonPositiveScale(_))));
    }

    #[test]
    fn interaction_follows_inverse_sixth_power() {
        let c = constants();
        let ratio = c.interaction(10.0) / c.interaction(5.0);
        assert!((ratio - 1.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_coincident_atoms() {
        let err = AtomRegister::uniform(
            vec![[1.0, 2.0], [1.0, 2.0]],
            1.0,
            0.0,
            constants(),
        );
        assert!(matches!(err, Err(RegisterError::CoincidentAtoms(0, 1))));
    }

    #[test]
    fn blockade_radius_convention_matches_reference_value() {
        // 0.98 (C6/pi)^(1/6) should land within 0.2% of 7.9055 um.
        let c = constants();
        let rb = 0.98 * (c.c6() / std::f64::consts::PI).powf(1.0 / 6.0);
        assert!((rb - 7.9055).abs() / 7.9055 < 2e-3, "rb = {rb}");
    }
}
