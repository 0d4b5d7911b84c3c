//! Dense state-vector simulation of small atom arrays.
//!
//! States live in the 2^N computational basis with little-endian atom
//! ordering (bit `i` of a basis index is the Rydberg occupation of atom
//! `i`). Evolution under a constant Hamiltonian goes through a full
//! Hermitian eigendecomposition once, followed by phase rotation per
//! sampled time, so norm and energy are conserved to machine precision.
//! A fixed-step fourth-order integrator is provided as an independent
//! cross-check and is only meant for test-scale systems.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Norm tolerance for state invariants.
pub const NORM_TOL: f64 = 1e-9;
/// Per-element Hermiticity tolerance.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Allowed norm drift of the reference integrator over a full run.
pub const INTEGRATOR_DRIFT_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("amplitude vector of length {len} is not 2^{n_atoms}")]
    BadDimension { n_atoms: usize, len: usize },
    #[error("state norm {norm} deviates from 1 by more than {NORM_TOL}")]
    NotNormalized { norm: f64 },
    #[error("matrix entry ({row},{col}) violates Hermiticity by {deviation:.3e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("operator is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator dimension {op_dim} does not match state dimension {state_dim}")]
    DimensionMismatch { op_dim: usize, state_dim: usize },
    #[error("duration and step must be positive (duration {duration}, dt {dt})")]
    BadTimeGrid { duration: f64, dt: f64 },
    #[error("integrator norm drift {drift:.3e} exceeds {INTEGRATOR_DRIFT_TOL}")]
    NormDrift { drift: f64 },
    #[error("expectation value has imaginary part {imag:.3e}")]
    ComplexExpectation { imag: f64 },
}

/// Normalized complex amplitude vector over the 2^N computational basis.
#[derive(Debug, Clone)]
pub struct QuantumState {
    n_atoms: usize,
    amplitudes: DVector<Complex64>,
}

impl QuantumState {
    pub fn new(n_atoms: usize, amplitudes: DVector<Complex64>) -> Result<Self, QuantumError> {
        if amplitudes.len() != 1 << n_atoms {
            return Err(QuantumError::BadDimension {
                n_atoms,
                len: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::NotNormalized { norm });
        }
        Ok(Self { n_atoms, amplitudes })
    }

    /// Computational basis state for a given occupation bitmask.
    pub fn basis_state(n_atoms: usize, mask: usize) -> Self {
        let dim = 1 << n_atoms;
        assert!(mask < dim, "basis index {mask} out of range for {n_atoms} atoms");
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[mask] = Complex64::new(1.0, 0.0);
        Self { n_atoms, amplitudes }
    }

    /// All atoms in the ground state.
    pub fn all_ground(n_atoms: usize) -> Self {
        Self::basis_state(n_atoms, 0)
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Population of one computational basis state.
    pub fn probability(&self, mask: usize) -> f64 {
        self.amplitudes[mask].norm_sqr()
    }

    /// Per-basis-state populations.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Dense Hermitian matrix, validated element-wise on construction.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    matrix: DMatrix<Complex64>,
}

impl HermitianOperator {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self, QuantumError> {
        if matrix.nrows() != matrix.ncols() {
            return Err(QuantumError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        for i in 0..matrix.nrows() {
            for j in i..matrix.ncols() {
                let dev = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                if dev > HERMITICITY_TOL {
                    return Err(QuantumError::NotHermitian {
                        row: i,
                        col: j,
                        deviation: dev,
                    });
                }
            }
        }
        Ok(Self { matrix })
    }

    /// Real diagonal operator.
    pub fn from_diagonal(diagonal: &[f64]) -> Self {
        let dim = diagonal.len();
        let mut matrix = DMatrix::zeros(dim, dim);
        for (i, &d) in diagonal.iter().enumerate() {
            matrix[(i, i)] = Complex64::new(d, 0.0);
        }
        Self { matrix }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// ⟨ψ|O|ψ⟩, which must be real up to numerical noise.
    pub fn expectation(&self, state: &QuantumState) -> Result<f64, QuantumError> {
        if self.dimension() != state.dim() {
            return Err(QuantumError::DimensionMismatch {
                op_dim: self.dimension(),
                state_dim: state.dim(),
            });
        }
        let product = &self.matrix * state.amplitudes();
        let value: Complex64 = state
            .amplitudes()
            .iter()
            .zip(product.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        if value.im.abs() > 1e-10 {
            return Err(QuantumError::ComplexExpectation { imag: value.im });
        }
        Ok(value.re)
    }

    /// Full eigendecomposition with eigenvalues sorted ascending.
    pub fn eigendecomposition(&self) -> SpectralDecomposition {
        let eig = self.matrix.clone().symmetric_eigen();
        let dim = self.dimension();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues = DVector::from_iterator(dim, order.iter().map(|&k| eig.eigenvalues[k]));
        let mut eigenvectors = DMatrix::zeros(dim, dim);
        for (col, &k) in order.iter().enumerate() {
            eigenvectors.set_column(col, &eig.eigenvectors.column(k));
        }
        SpectralDecomposition {
            eigenvalues,
            eigenvectors,
        }
    }
}

/// Eigendecomposition H = V Λ V† with Λ ascending and V unitary.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    /// Largest entry-wise deviation of V Λ V† from a given matrix.
    pub fn reconstruction_error(&self, reference: &HermitianOperator) -> f64 {
        let dim = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for k in 0..dim {
            let lambda = Complex64::new(self.eigenvalues[k], 0.0);
            for i in 0..dim {
                scaled[(i, k)] *= lambda;
            }
        }
        let rebuilt = &scaled * self.eigenvectors.adjoint();
        (rebuilt - reference.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Time series of states from one constant-Hamiltonian quench.
#[derive(Debug, Clone)]
pub struct QuenchTrajectory {
    times: Vec<f64>,
    states: Vec<QuantumState>,
}

impl QuenchTrajectory {
    fn new(times: Vec<f64>, states: Vec<QuantumState>) -> Self {
        debug_assert_eq!(times.len(), states.len());
        debug_assert!(times.windows(2).all(|w| w[1] > w[0]));
        Self { times, states }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[QuantumState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// ⟨ψ(t)|O|ψ(t)⟩ for every sampled time.
    pub fn expectation_series(&self, observable: &HermitianOperator) -> Result<Vec<f64>, QuantumError> {
        self.states.iter().map(|s| observable.expectation(s)).collect()
    }
}

fn time_grid(duration: f64, dt: f64) -> Result<Vec<f64>, QuantumError> {
    if !(duration > 0.0) || !(dt > 0.0) {
        return Err(QuantumError::BadTimeGrid { duration, dt });
    }
    let steps = (duration / dt).round().max(1.0) as usize;
    Ok((0..=steps).map(|k| k as f64 * dt).collect())
}

/// Evolve `psi0` under constant `h` and sample the state every `dt`.
///
/// The state at time t is exp(-iHt)·psi0, evaluated by diagonalising `h`
/// once and applying per-eigenvalue phases at each sample.
pub fn evolve(
    h: &HermitianOperator,
    psi0: &QuantumState,
    duration: f64,
    dt: f64,
) -> Result<QuenchTrajectory, QuantumError> {
    if h.dimension() != psi0.dim() {
        return Err(QuantumError::DimensionMismatch {
            op_dim: h.dimension(),
            state_dim: psi0.dim(),
        });
    }
    let times = time_grid(duration, dt)?;
    let spectral = h.eigendecomposition();
    let coefficients = spectral.eigenvectors.adjoint() * psi0.amplitudes();

    let mut states = Vec::with_capacity(times.len());
    let mut rotated = coefficients.clone();
    for &t in &times {
        for (k, c) in coefficients.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -spectral.eigenvalues[k] * t);
            rotated[k] = c * phase;
        }
        let amplitudes = &spectral.eigenvectors * &rotated;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::NotNormalized { norm });
        }
        states.push(QuantumState {
            n_atoms: psi0.n_atoms(),
            amplitudes,
        });
    }
    Ok(QuenchTrajectory::new(times, states))
}

/// Independent fixed-step fourth-order integrator of the Schrödinger
/// equation, sampled at every step. Cross-check oracle for [`evolve`];
/// `dt_fine` must resolve the fastest frequency in `h` (1e-3 µs or finer
/// recommended at interaction strengths of order 1 rad/µs).
pub fn evolve_reference(
    h: &HermitianOperator,
    psi0: &QuantumState,
    duration: f64,
    dt_fine: f64,
) -> Result<QuenchTrajectory, QuantumError> {
    if h.dimension() != psi0.dim() {
        return Err(QuantumError::DimensionMismatch {
            op_dim: h.dimension(),
            state_dim: psi0.dim(),
        });
    }
    let times = time_grid(duration, dt_fine)?;
    let minus_i = Complex64::new(0.0, -1.0);
    let derivative = |psi: &DVector<Complex64>| (h.matrix() * psi).map(|z| minus_i * z);

    let mut states = Vec::with_capacity(times.len());
    let mut psi = psi0.amplitudes().clone();
    states.push(psi0.clone());
    for _ in 1..times.len() {
        let k1 = derivative(&psi);
        let k2 = derivative(&(&psi + &k1 * Complex64::new(dt_fine / 2.0, 0.0)));
        let k3 = derivative(&(&psi + &k2 * Complex64::new(dt_fine / 2.0, 0.0)));
        let k4 = derivative(&(&psi + &k3 * Complex64::new(dt_fine, 0.0)));
        psi += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4)
            * Complex64::new(dt_fine / 6.0, 0.0);
        let drift = (psi.norm() - 1.0).abs();
        if drift > INTEGRATOR_DRIFT_TOL {
            return Err(QuantumError::NormDrift { drift });
        }
        states.push(QuantumState {
            n_atoms: psi0.n_atoms(),
            amplitudes: psi.clone(),
        });
    }
    Ok(QuenchTrajectory::new(times, states))
}

/// Maximum of ⟨ψ(t)|O|ψ(t)⟩ over the sampled grid of a quench under `h`,
/// together with the earliest time achieving it.
pub fn max_expectation(
    h: &HermitianOperator,
    psi0: &QuantumState,
    observable: &HermitianOperator,
    duration: f64,
    dt: f64,
) -> Result<(f64, f64), QuantumError> {
    if observable.dimension() != h.dimension() {
        return Err(QuantumError::DimensionMismatch {
            op_dim: observable.dimension(),
            state_dim: h.dimension(),
        });
    }
    let trajectory = evolve(h, psi0, duration, dt)?;
    let series = trajectory.expectation_series(observable)?;
    // Values within 1e-12 count as ties, broken toward the earliest time.
    let mut best = (series[0], trajectory.times()[0]);
    for (&value, &t) in series.iter().zip(trajectory.times()).skip(1) {
        if value > best.0 + 1e-12 {
            best = (value, t);
        }
    }
    Ok(best)
}
