//! Variational quantum eigensolver and the exact-diagonalization oracle.
//!
//! The energy of a parameter vector `t` is `⟨HF| U(t)† H U(t) |HF⟩` with
//! `U(t)` the single-step Trotter product of the ansatz, evaluated exactly
//! on a statevector.

mod fci;
mod optimize;

pub use fci::{
    dense_ground_energy, dense_spectrum, fci_ground_energy, fci_ground_energy_in_sector, MAX_FCI_DIMENSION,
};
pub use optimize::{nelder_mead, spsa, Minimum, STALL_WINDOW};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Uniform};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ansatz::{AnsatzError, AnsatzSpec, TrotterPlan};
use crate::encoding::QubitOperator;
use crate::sim::{SimError, StateVector, DEFAULT_MAX_QUBITS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VqeError {
    #[error("determinant space of dimension {dimension} exceeds the limit {limit}")]
    BasisTooLarge { dimension: u64, limit: u64 },
    #[error("operator acts on {operator} qubits but the ansatz on {ansatz}")]
    WidthMismatch { operator: usize, ansatz: usize },
    #[error("reference has {reference} qubits but the ansatz acts on {ansatz}")]
    ReferenceWidth { reference: usize, ansatz: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error(transparent)]
    Ansatz(#[from] AnsatzError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimizer {
    NelderMead,
    Spsa,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialParameters {
    Zeros,
    /// Uniform in `[−ε, ε]`, drawn from the seeded generator.
    Perturbed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeConfig {
    pub optimizer: Optimizer,
    /// Optimizer iterations per start.
    pub max_iterations: usize,
    /// Convergence threshold on energy changes, Hartree.
    pub tolerance: f64,
    pub initial: InitialParameters,
    pub seed: u64,
    /// Extra starts from the best point found so far.
    pub restarts: usize,
    /// Initial simplex edge (Nelder-Mead) or step gain (SPSA).
    pub step: f64,
    pub max_qubits: usize,
}

impl Default for VqeConfig {
    fn default() -> Self {
        Self {
            optimizer: Optimizer::NelderMead,
            max_iterations: 20_000,
            tolerance: 1e-7,
            initial: InitialParameters::Zeros,
            seed: 0,
            restarts: 2,
            step: 0.05,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl VqeConfig {
    pub fn validate(&self) -> Result<(), VqeError> {
        if !(self.tolerance > 0.0) {
            return Err(VqeError::InvalidConfig(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_iterations == 0 {
            return Err(VqeError::InvalidConfig("max_iterations must be positive".into()));
        }
        if !(self.step > 0.0) {
            return Err(VqeError::InvalidConfig(format!("step must be positive, got {}", self.step)));
        }
        if let InitialParameters::Perturbed(eps) = self.initial {
            if !(eps >= 0.0) || !eps.is_finite() {
                return Err(VqeError::InvalidConfig(format!("perturbation must be finite and ≥ 0, got {eps}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeResult {
    pub energy: f64,
    pub parameters: Vec<f64>,
    pub iterations: usize,
    pub evaluations: usize,
    /// Best energy after each optimizer iteration, across all starts.
    pub trace: Vec<f64>,
    pub converged: bool,
}

/// Energy landscape of an ansatz on a fixed Hamiltonian.
#[derive(Debug, Clone)]
pub struct EnergyFunction<'a> {
    hamiltonian: &'a QubitOperator,
    plan: &'a TrotterPlan,
    reference: StateVector,
}

impl<'a> EnergyFunction<'a> {
    pub fn new(
        hamiltonian: &'a QubitOperator,
        plan: &'a TrotterPlan,
        reference: &[bool],
        max_qubits: usize,
    ) -> Result<Self, VqeError> {
        if hamiltonian.n_qubits() != plan.n_qubits() {
            return Err(VqeError::WidthMismatch { operator: hamiltonian.n_qubits(), ansatz: plan.n_qubits() });
        }
        if reference.len() != plan.n_qubits() {
            return Err(VqeError::ReferenceWidth { reference: reference.len(), ansatz: plan.n_qubits() });
        }
        let reference = StateVector::prepare_reference(reference, max_qubits)?;
        // surfaces non-Hermitian input once, up front
        reference.expectation(hamiltonian)?;
        Ok(Self { hamiltonian, plan, reference })
    }

    pub fn n_parameters(&self) -> usize {
        self.plan.n_parameters()
    }

    pub fn state(&self, params: &[f64]) -> Result<StateVector, VqeError> {
        let mut state = self.reference.clone();
        for step in self.plan.steps(params)? {
            state.apply_pauli_rotation(&step.string, step.angle)?;
        }
        Ok(state)
    }

    pub fn energy(&self, params: &[f64]) -> Result<f64, VqeError> {
        Ok(self.state(params)?.expectation(self.hamiltonian)?)
    }
}

/// Minimizes the ansatz energy of `hamiltonian` from the spec's Hartree-Fock
/// reference.
pub fn run_vqe(hamiltonian: &QubitOperator, spec: &AnsatzSpec, cfg: &VqeConfig) -> Result<VqeResult, VqeError> {
    let plan = TrotterPlan::new(spec)?;
    run_vqe_with_plan(hamiltonian, &plan, &spec.reference(), cfg)
}

/// Minimizes the energy for an explicit plan and reference, as produced by
/// symmetry reduction.
pub fn run_vqe_with_plan(
    hamiltonian: &QubitOperator,
    plan: &TrotterPlan,
    reference: &[bool],
    cfg: &VqeConfig,
) -> Result<VqeResult, VqeError> {
    cfg.validate()?;
    let energy = EnergyFunction::new(hamiltonian, plan, reference, cfg.max_qubits)?;
    let n = energy.n_parameters();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut x: Vec<f64> = match cfg.initial {
        InitialParameters::Zeros => vec![0.0; n],
        InitialParameters::Perturbed(eps) if eps > 0.0 => {
            let dist = Uniform::new_inclusive(-eps, eps).expect("finite bounds");
            (0..n).map(|_| dist.sample(&mut rng)).collect()
        }
        InitialParameters::Perturbed(_) => vec![0.0; n],
    };
    // All ansatz evaluations are valid once EnergyFunction::new succeeded.
    let objective = |t: &[f64]| energy.energy(t).expect("validated ansatz evaluation");

    let mut result = VqeResult {
        energy: f64::INFINITY,
        parameters: x.clone(),
        iterations: 0,
        evaluations: 0,
        trace: Vec::new(),
        converged: false,
    };
    for start in 0..=cfg.restarts {
        let m = match cfg.optimizer {
            Optimizer::NelderMead => nelder_mead(objective, &x, cfg.step, cfg.max_iterations, cfg.tolerance),
            Optimizer::Spsa => {
                let seed = cfg.seed.wrapping_add(start as u64);
                spsa(objective, &x, cfg.step * 4.0, cfg.step, cfg.max_iterations, cfg.tolerance, seed)
            }
        };
        result.iterations += m.iterations;
        result.evaluations += m.evaluations;
        let floor = result.energy;
        result.trace.extend(m.trace.iter().map(|&e| e.min(floor)));
        let improvement = result.energy - m.value;
        if m.value < result.energy {
            result.energy = m.value;
            result.parameters.clone_from(&m.point);
        }
        result.converged = m.converged;
        x.clone_from(&result.parameters);
        if start > 0 && m.converged && improvement < cfg.tolerance {
            break;
        }
    }
    Ok(result)
}
