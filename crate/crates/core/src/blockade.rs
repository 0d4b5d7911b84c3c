//! Two-atom blockade models for the three driving scenarios (sequential,
//! global, local), blockade-radius extraction from quench simulations, and
//! the fluctuability-weighted gradient fit that calibrates the local model.
//!
//! Closed forms, with r_B^pi = (C6/Ω)^(1/6):
//!
//! * sequential: P_RR(r) = 1 / (1 + [(C6/r^6 − δ)/Ω]^2), radius
//!   (C6/(Ω+δ))^(1/6)
//! * global: exact saturation bound from the four-level eigen-system, a
//!   simplified curve 1 / (1 + [(1/Ω)·C6/(1.29r − 0.26·r_B^pi)^6]^2), and
//!   radius 0.98·r_B^pi
//! * local: effective amplitude Ω_eff = (½[Ω0^(-1/6) + Ω1^(-1/6)])^(-6),
//!   radius ½(r_B^G(Ω0) + r_B^G(Ω1)) and curve
//!   1 / (1 + [(1/Ω_eff)·C6/(1.18r − 0.16·r_B)^6]^2) with r_B = r_B^pi(Ω_eff).
//!
//! The local closed forms hold in the zero-detuning regime.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::quantum::{self, HermitianOperator, QuantumState};
use crate::rydberg::{AtomRegister, PhysicalConstants};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("rate must be positive, got {0}")]
    NonPositiveRate(f64),
    #[error("separation must be positive, got {0}")]
    NonPositiveSeparation(f64),
    #[error("outside the trigonometric-cubic regime (P = {p}, M = {m})")]
    OutOfRegime { p: f64, m: f64 },
    #[error("eigenvalue {eigenvalue} is a pole of the saturation bound; perturb r by 1 part in 1e9")]
    EigenvaluePole { eigenvalue: f64 },
    #[error("formula domain violated: {0} must be positive")]
    FormulaDomain(f64),
    #[error("P_RR does not bracket 0.5 on [{lo}, {hi}] (values {f_lo:.4} / {f_hi:.4})")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("fit sample needs at least {needed} points, got {got}")]
    SampleTooSmall { needed: usize, got: usize },
    #[error("sample radii must be strictly increasing")]
    UnorderedRadii,
    #[error("sample probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("sample must cover both sides of the local blockade radius {rb}")]
    SampleDoesNotStraddle { rb: f64 },
    #[error(transparent)]
    Quantum(#[from] quantum::QuantumError),
    #[error(transparent)]
    Register(#[from] crate::rydberg::RegisterError),
}

/// Two-atom driving scenario. Sequential starts from atom 0 excited and
/// undriven; global and local start from both atoms in the ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriveScenario {
    Sequential { omega: f64, delta: f64 },
    Global { omega: f64, delta: f64 },
    Local { omega0: f64, omega1: f64, delta: f64 },
}

impl DriveScenario {
    pub fn delta(&self) -> f64 {
        match *self {
            DriveScenario::Sequential { delta, .. }
            | DriveScenario::Global { delta, .. }
            | DriveScenario::Local { delta, .. } => delta,
        }
    }

    /// Per-atom amplitudes (Ω0, Ω1).
    pub fn omegas(&self) -> (f64, f64) {
        match *self {
            DriveScenario::Sequential { omega, .. } => (0.0, omega),
            DriveScenario::Global { omega, .. } => (omega, omega),
            DriveScenario::Local { omega0, omega1, .. } => (omega0, omega1),
        }
    }

    /// Initial computational basis state of the quench.
    pub fn initial_state(&self) -> QuantumState {
        match self {
            // Atom 0 pre-excited: occupation bit 0 set.
            DriveScenario::Sequential { .. } => QuantumState::basis_state(2, 0b01),
            _ => QuantumState::all_ground(2),
        }
    }

    /// Model blockade radius for this scenario.
    pub fn model_radius(&self, constants: &PhysicalConstants) -> Result<f64, ModelError> {
        match *self {
            DriveScenario::Sequential { omega, delta } => rb_sequential(constants, omega, delta),
            DriveScenario::Global { omega, .. } => rb_global(constants, omega),
            DriveScenario::Local { omega0, omega1, .. } => rb_local(constants, omega0, omega1),
        }
    }
}

/// Blockade radius of the sequential scenario, (C6/(Ω+δ))^(1/6).
pub fn rb_sequential(
    constants: &PhysicalConstants,
    omega: f64,
    delta: f64,
) -> Result<f64, ModelError> {
    let rate = omega + delta;
    if !(rate > 0.0) {
        return Err(ModelError::NonPositiveRate(rate));
    }
    Ok((constants.c6() / rate).powf(1.0 / 6.0))
}

/// Closed-form maximum double-excitation population for sequential driving.
pub fn prr_sequential(
    constants: &PhysicalConstants,
    r: f64,
    omega: f64,
    delta: f64,
) -> Result<f64, ModelError> {
    if !(r > 0.0) {
        return Err(ModelError::NonPositiveSeparation(r));
    }
    if !(omega > 0.0) {
        return Err(ModelError::NonPositiveRate(omega));
    }
    let detuning_ratio = (constants.interaction(r) - delta) / omega;
    Ok(1.0 / (1.0 + detuning_ratio * detuning_ratio))
}

/// Blockade radius of the global scenario, 0.98·(C6/Ω)^(1/6).
pub fn rb_global(constants: &PhysicalConstants, omega: f64) -> Result<f64, ModelError> {
    if !(omega > 0.0) {
        return Err(ModelError::NonPositiveRate(omega));
    }
    Ok(0.98 * (constants.c6() / omega).powf(1.0 / 6.0))
}

/// Generalized mean of two amplitudes with exponent −1/6. A locally driven
/// pair behaves, for radius purposes, like a global pair at this amplitude.
pub fn omega_eff(omega0: f64, omega1: f64) -> Result<f64, ModelError> {
    if !(omega0 > 0.0) {
        return Err(ModelError::NonPositiveRate(omega0));
    }
    if !(omega1 > 0.0) {
        return Err(ModelError::NonPositiveRate(omega1));
    }
    let mean = 0.5 * (omega0.powf(-1.0 / 6.0) + omega1.powf(-1.0 / 6.0));
    Ok(mean.powi(-6))
}

/// Blockade radius of the local scenario, ½(r_B^G(Ω0) + r_B^G(Ω1)).
/// Identical to 0.98·(C6/Ω_eff)^(1/6).
pub fn rb_local(
    constants: &PhysicalConstants,
    omega0: f64,
    omega1: f64,
) -> Result<f64, ModelError> {
    Ok(0.5 * (rb_global(constants, omega0)? + rb_global(constants, omega1)?))
}

/// Parameters of the two-atom four-level eigenproblem under global drive:
/// a = −δ, b = Ω/2, c = C6/r^6 − 2δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourLevelParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl FourLevelParams {
    pub fn from_drive(constants: &PhysicalConstants, r: f64, omega: f64, delta: f64) -> Self {
        Self {
            a: -delta,
            b: omega / 2.0,
            c: constants.interaction(r) - 2.0 * delta,
        }
    }

    /// The 4x4 Hamiltonian in the (gg, gR, Rg, RR) basis.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let re = |x: f64| Complex64::new(x, 0.0);
        DMatrix::from_row_slice(
            4,
            4,
            &[
                re(0.0),
                re(self.b),
                re(self.b),
                re(0.0),
                re(self.b),
                re(self.a),
                re(0.0),
                re(self.b),
                re(self.b),
                re(0.0),
                re(self.a),
                re(self.b),
                re(0.0),
                re(self.b),
                re(self.b),
                re(self.c),
            ],
        )
    }

    /// Eigenvalue of the antisymmetric combination (gR − Rg)/sqrt(2).
    pub fn antisymmetric_eigenvalue(&self) -> f64 {
        self.a
    }
}

/// The three closed-form eigenvalues of the symmetric block, via the
/// trigonometric solution of its characteristic cubic
/// E^3 − (A+C)E^2 + (AC − 4B^2)E + 2B^2 C = 0.
pub fn symmetric_block_eigenvalues(p: &FourLevelParams) -> Result<(f64, f64, f64), ModelError> {
    let (a, b, c) = (p.a, p.b, p.c);
    let big_p = -3.0 * a * c + 12.0 * b * b + (a + c) * (a + c);
    let big_m = 27.0 * b * b * c + 4.5 * (a + c) * (a * c - 4.0 * b * b) - (a + c).powi(3);
    let disc = big_p.powi(3) - big_m * big_m;
    if big_p < 0.0 || disc < 0.0 {
        return Err(ModelError::OutOfRegime { p: big_p, m: big_m });
    }
    let q = disc.sqrt();
    // atan2 keeps the angle in [0, pi]; the M = 0 case lands on pi/2.
    let theta = q.atan2(big_m) / 3.0;
    let sqrt_p = big_p.sqrt();
    let (sin_t, cos_t) = theta.sin_cos();
    let e2 = (a + c - 2.0 * sqrt_p * cos_t) / 3.0;
    let e3 = (a + c + sqrt_p * cos_t - (3.0 * big_p).sqrt() * sin_t) / 3.0;
    let e4 = (a + c + sqrt_p * cos_t + (3.0 * big_p).sqrt() * sin_t) / 3.0;
    Ok((e2, e3, e4))
}

/// Exact saturation bound on the |gg⟩→|RR⟩ population under global drive,
/// from closed-form eigenvalues and eigenvectors of the four-level system.
/// Upper-bounds the simulated maximum over any finite quench.
pub fn prr_global_exact(
    constants: &PhysicalConstants,
    r: f64,
    omega: f64,
    delta: f64,
) -> Result<f64, ModelError> {
    if !(r > 0.0) {
        return Err(ModelError::NonPositiveSeparation(r));
    }
    if !(omega > 0.0) {
        return Err(ModelError::NonPositiveRate(omega));
    }
    let p = FourLevelParams::from_drive(constants, r, omega, delta);
    let (e2, e3, e4) = symmetric_block_eigenvalues(&p)?;
    let scale = p.a.abs().max(p.c.abs()).max(2.0 * p.b.abs()).max(1.0);
    let mut weight_sum = 0.0;
    for e in [e2, e3, e4] {
        if e.abs() <= 1e-12 * scale {
            return Err(ModelError::EigenvaluePole { eigenvalue: e });
        }
        // Unnormalized eigenvector ((E−C)/E, (E−C)/2B, (E−C)/2B, 1).
        let head = (e - p.c) / e;
        let mid = (e - p.c) / (2.0 * p.b);
        let length_sq = head * head + 2.0 * mid * mid + 1.0;
        weight_sum += (head / length_sq).abs();
    }
    Ok(weight_sum * weight_sum)
}

/// Simplified global-drive curve obtained by mapping the global blockade
/// profile onto the sequential one. Zero-detuning regime.
pub fn prr_global_simplified(
    constants: &PhysicalConstants,
    r: f64,
    omega: f64,
) -> Result<f64, ModelError> {
    if !(r > 0.0) {
        return Err(ModelError::NonPositiveSeparation(r));
    }
    if !(omega > 0.0) {
        return Err(ModelError::NonPositiveRate(omega));
    }
    let rb_pi = (constants.c6() / omega).powf(1.0 / 6.0);
    let mapped = 1.29 * r - 0.26 * rb_pi;
    if mapped <= 0.0 {
        return Err(ModelError::FormulaDomain(mapped));
    }
    let bracket = constants.c6() / mapped.powi(6) / omega;
    Ok(1.0 / (1.0 + bracket * bracket))
}

/// Local-drive curve: the sequential profile at Ω_eff with the separation
/// mapped as 1.18r − 0.16·r_B, r_B = (C6/Ω_eff)^(1/6). Zero detuning.
pub fn prr_local(
    constants: &PhysicalConstants,
    r: f64,
    omega0: f64,
    omega1: f64,
) -> Result<f64, ModelError> {
    if !(r > 0.0) {
        return Err(ModelError::NonPositiveSeparation(r));
    }
    let eff = omega_eff(omega0, omega1)?;
    let rb = (constants.c6() / eff).powf(1.0 / 6.0);
    let mapped = 1.18 * r - 0.16 * rb;
    if mapped <= 0.0 {
        return Err(ModelError::FormulaDomain(mapped));
    }
    let bracket = constants.c6() / mapped.powi(6) / eff;
    Ok(1.0 / (1.0 + bracket * bracket))
}

/// Default observable sampling step for pair quenches, in µs.
pub const DEFAULT_DT: f64 = 0.05;

/// Register for a two-atom quench at separation `r` under the scenario's
/// amplitudes and detuning.
pub fn pair_register(
    constants: &PhysicalConstants,
    scenario: &DriveScenario,
    r: f64,
) -> Result<AtomRegister, ModelError> {
    let (omega0, omega1) = scenario.omegas();
    let delta = scenario.delta();
    Ok(AtomRegister::new(
        vec![[0.0, 0.0], [r, 0.0]],
        vec![omega0, omega1],
        vec![delta, delta],
        *constants,
    )?)
}

/// Simulated maximum double-excitation population over a quench of the
/// given duration, sampled every `dt`.
pub fn simulate_prr(
    constants: &PhysicalConstants,
    scenario: &DriveScenario,
    r: f64,
    duration: f64,
    dt: f64,
) -> Result<f64, ModelError> {
    let register = pair_register(constants, scenario, r)?;
    let h = register.hamiltonian();
    let psi0 = scenario.initial_state();
    let rr_projector = HermitianOperator::from_diagonal(&[0.0, 0.0, 0.0, 1.0]);
    let (max, _) = quantum::max_expectation(&h, &psi0, &rr_projector, duration, dt)?;
    Ok(max)
}

/// Blockade radius extracted from simulation: bisection on the separation
/// at which the simulated P_RR crosses 0.5. The search starts from a
/// bracket of [0.5, 2.0] times the scenario's model radius.
pub fn rb_from_simulation(
    constants: &PhysicalConstants,
    scenario: &DriveScenario,
    duration: f64,
    dt: f64,
    tol_r: f64,
) -> Result<f64, ModelError> {
    let guide = scenario.model_radius(constants)?;
    let mut lo = 0.5 * guide;
    let mut hi = 2.0 * guide;
    let f_lo = simulate_prr(constants, scenario, lo, duration, dt)?;
    let f_hi = simulate_prr(constants, scenario, hi, duration, dt)?;
    if f_lo >= 0.5 || f_hi <= 0.5 {
        return Err(ModelError::NoBracket { lo, hi, f_lo, f_hi });
    }
    while hi - lo > tol_r {
        let mid = 0.5 * (lo + hi);
        if simulate_prr(constants, scenario, mid, duration, dt)? < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One locally driven simulation sweep over separations, with per-point
/// fluctuability weights.
#[derive(Debug, Clone)]
pub struct FitSample {
    pub omega0: f64,
    pub omega1: f64,
    pub r_values: Vec<f64>,
    pub prr_values: Vec<f64>,
    pub fluctuability: Vec<f64>,
}

impl FitSample {
    pub fn new(
        omega0: f64,
        omega1: f64,
        r_values: Vec<f64>,
        prr_values: Vec<f64>,
    ) -> Result<Self, ModelError> {
        if r_values.len() < 3 {
            return Err(ModelError::SampleTooSmall {
                needed: 3,
                got: r_values.len(),
            });
        }
        if r_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ModelError::UnorderedRadii);
        }
        for &p in &prr_values {
            if !(0.0..=1.0).contains(&p) {
                return Err(ModelError::BadProbability(p));
            }
        }
        let fluctuability = fluctuability(&prr_values);
        Ok(Self {
            omega0,
            omega1,
            r_values,
            prr_values,
            fluctuability,
        })
    }

    /// Simulate P_RR on a radius grid under local driving.
    pub fn from_simulation(
        constants: &PhysicalConstants,
        omega0: f64,
        omega1: f64,
        r_values: Vec<f64>,
        duration: f64,
        dt: f64,
    ) -> Result<Self, ModelError> {
        let scenario = DriveScenario::Local {
            omega0,
            omega1,
            delta: 0.0,
        };
        let prr_values = r_values
            .iter()
            .map(|&r| simulate_prr(constants, &scenario, r, duration, dt))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(omega0, omega1, r_values, prr_values)
    }

    pub fn mean_fluctuability(&self) -> f64 {
        self.fluctuability.iter().sum::<f64>() / self.fluctuability.len() as f64
    }
}

/// Per-point non-monotonicity weight: within a centered window of five
/// points, the fraction of the total variation made up of decreases.
/// Zero on monotone non-decreasing (or constant) windows; clipped to
/// [0, 0.99].
pub fn fluctuability(series: &[f64]) -> Vec<f64> {
    let n = series.len();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(2);
            let hi = (i + 2).min(n - 1);
            let mut decreases = 0.0;
            let mut variation = 0.0;
            for k in lo..hi {
                let step = series[k + 1] - series[k];
                variation += step.abs();
                if step < 0.0 {
                    decreases -= step;
                }
            }
            if variation == 0.0 {
                0.0
            } else {
                (decreases / variation).min(0.99)
            }
        })
        .collect()
}

/// Result of the one-dimensional gradient fit. `unimodal` is false when
/// the objective had multiple separated minima and `slope` is then the
/// best coarse-grid point.
#[derive(Debug, Clone, Copy)]
pub struct GradientFit {
    pub slope: f64,
    pub unimodal: bool,
}

/// Sequential profile at Ω_eff extended by zero below r = 0 (its
/// deep-blockade limit), used as the mapping target of the fit.
fn prr_pi_extended(constants: &PhysicalConstants, r: f64, omega: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else {
        let ratio = constants.interaction(r) / omega;
        1.0 / (1.0 + ratio * ratio)
    }
}

/// Fit the gradient Δ^L of a locally driven sweep: find the slope whose
/// rescaling r → (Δ^L/Δ^pi)(r − r_B^L) + r_B^pi maps the sweep onto the
/// sequential profile, minimizing the fluctuability-weighted L1 distance
/// Σ_i |P^pi(mapped r_i) − prr_i|·(1 − F_i). Golden-section search over
/// Δ^L in [1, 10]/r_B^pi(Ω_eff) after a coarse scan.
pub fn fit_local_gradient(
    constants: &PhysicalConstants,
    sample: &FitSample,
) -> Result<GradientFit, ModelError> {
    let eff = omega_eff(sample.omega0, sample.omega1)?;
    let rb_pi = (constants.c6() / eff).powf(1.0 / 6.0);
    let rb_l = rb_local(constants, sample.omega0, sample.omega1)?;
    let first = *sample.r_values.first().expect("validated non-empty");
    let last = *sample.r_values.last().expect("validated non-empty");
    if first >= rb_l || last <= rb_l {
        return Err(ModelError::SampleDoesNotStraddle { rb: rb_l });
    }
    let delta_pi = 3.0 / rb_pi;

    let objective = |slope: f64| -> f64 {
        sample
            .r_values
            .iter()
            .zip(&sample.prr_values)
            .zip(&sample.fluctuability)
            .map(|((&r, &prr), &f)| {
                let mapped = slope / delta_pi * (r - rb_l) + rb_pi;
                (prr_pi_extended(constants, mapped, eff) - prr).abs() * (1.0 - f)
            })
            .sum()
    };

    let lo = 1.0 / rb_pi;
    let hi = 10.0 / rb_pi;
    let grid_points = 64;
    let grid: Vec<f64> = (0..grid_points)
        .map(|k| lo + (hi - lo) * k as f64 / (grid_points - 1) as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&s| objective(s)).collect();
    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .expect("non-empty grid");

    // Count separated local minima deeper than a thousandth of the range.
    let spread = values.iter().cloned().fold(f64::MIN, f64::max)
        - values.iter().cloned().fold(f64::MAX, f64::min);
    let depth_tol = 1e-3 * spread;
    let mut minima = 0;
    for k in 1..grid_points - 1 {
        if values[k] + depth_tol < values[k - 1] && values[k] + depth_tol < values[k + 1] {
            minima += 1;
        }
    }
    if minima > 1 {
        return Ok(GradientFit {
            slope: grid[best],
            unimodal: false,
        });
    }

    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(grid_points - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    while b - a > 1e-6 / rb_pi {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        }
    }
    Ok(GradientFit {
        slope: 0.5 * (a + b),
        unimodal: true,
    })
}

/// Weighted L1 proportional fit y ≈ slope·x minimizing
/// Σ_i |y_i − slope·x_i|·w_i, solved exactly as a weighted median of the
/// per-point ratios. Used to fit the fitted gradients against 1/r_B.
pub fn weighted_proportional_fit(xs: &[f64], ys: &[f64], weights: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert_eq!(xs.len(), weights.len());
    assert!(!xs.is_empty());
    let mut candidates: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .zip(weights)
        .filter(|((&x, _), _)| x != 0.0)
        .map(|((&x, &y), &w)| (y / x, w * x.abs()))
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = candidates.iter().map(|c| c.1).sum();
    let mut acc = 0.0;
    for &(ratio, weight) in &candidates {
        acc += weight;
        if acc >= total / 2.0 {
            return ratio;
        }
    }
    candidates.last().expect("non-empty").0
}
