use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qpep::ansatz::{build_kupccgsd, build_uccsd, TrotterPlan};
use qpep::chemio::parse_integral_file;
use qpep::encoding::jordan_wigner;
use qpep::fermion::build_hamiltonian;
use qpep::sim::StateVector;
use qpep::taper::taper_problem;
use qpep::vqe::{fci_ground_energy, run_vqe_with_plan, InitialParameters, Optimizer, VqeConfig};

use crate::{read_file, AnsatzKind, CliError, OptimizerKind};

pub const VQE_SCHEMA_VERSION: u32 = 1;

pub(crate) struct VqeOptions {
    pub ansatz: AnsatzKind,
    pub k: usize,
    pub taper: bool,
    pub fci: bool,
    pub n_core: usize,
    pub optimizer: OptimizerKind,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
    pub restarts: usize,
    pub perturb: Option<f64>,
    pub max_qubits: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeReport {
    pub schema_version: u32,
    pub ansatz: String,
    pub spin_orbitals: usize,
    pub electrons: usize,
    pub frozen_core: usize,
    /// Qubits actually simulated.
    pub width: usize,
    pub generators: Vec<String>,
    pub sector: Vec<i8>,
    pub parameters_total: usize,
    pub dropped_excitations: usize,
    pub hf_energy: f64,
    pub energy: f64,
    pub parameters: Vec<f64>,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    pub trace: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fci_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
}

pub(crate) fn run(path: &Path, opts: &VqeOptions, out: &mut dyn Write) -> Result<(), CliError> {
    let domain = |e: &dyn std::fmt::Display| CliError::Domain(e.to_string());
    let full = parse_integral_file(&read_file(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let ints = if opts.n_core > 0 { full.freeze_core(opts.n_core).map_err(|e| domain(&e))? } else { full };
    let (m, eta) = (ints.n_spin_orbitals(), ints.n_electrons);
    let spec = match opts.ansatz {
        AnsatzKind::Uccsd => build_uccsd(m, eta),
        AnsatzKind::Kupccgsd => build_kupccgsd(m, eta, opts.k),
    }
    .map_err(|e| domain(&e))?;
    let fermion = build_hamiltonian(&ints);
    let hamiltonian = jordan_wigner(&fermion, m).map_err(|e| domain(&e))?;
    let plan = TrotterPlan::new(&spec).map_err(|e| domain(&e))?;

    let over_cap = |width: usize| {
        CliError::Domain(format!(
            "problem needs {width} qubits but the simulator cap is {}; try --taper, --n-core, or raise {}",
            opts.max_qubits,
            crate::MAX_QUBITS_ENV
        ))
    };
    let (h, plan, reference, generators, sector, dropped) = if opts.taper {
        if m > 62 {
            return Err(over_cap(m));
        }
        let t = taper_problem(&hamiltonian, &plan, &spec.reference(), 62).map_err(|e| domain(&e))?;
        let gens = t.generators.iter().map(|g| g.pauli.to_string()).collect();
        (t.hamiltonian, t.plan, t.reference, gens, t.sector, t.dropped_blocks)
    } else {
        (hamiltonian, plan, spec.reference(), Vec::new(), Vec::new(), 0)
    };
    if h.n_qubits() > opts.max_qubits {
        return Err(over_cap(h.n_qubits()));
    }

    let cfg = VqeConfig {
        optimizer: match opts.optimizer {
            OptimizerKind::NelderMead => Optimizer::NelderMead,
            OptimizerKind::Spsa => Optimizer::Spsa,
        },
        max_iterations: opts.max_iter,
        tolerance: opts.tol,
        initial: opts.perturb.map_or(InitialParameters::Zeros, InitialParameters::Perturbed),
        seed: opts.seed,
        restarts: opts.restarts,
        max_qubits: opts.max_qubits,
        ..VqeConfig::default()
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let hf_energy = StateVector::prepare_reference(&reference, opts.max_qubits)
        .and_then(|s| s.expectation(&h))
        .map_err(|e| domain(&e))?;
    let result = run_vqe_with_plan(&h, &plan, &reference, &cfg).map_err(|e| domain(&e))?;
    let fci_energy = if opts.fci { Some(fci_ground_energy(&fermion, m, eta).map_err(|e| domain(&e))?) } else { None };

    let report = VqeReport {
        schema_version: VQE_SCHEMA_VERSION,
        ansatz: match opts.ansatz {
            AnsatzKind::Uccsd => "uccsd".to_string(),
            AnsatzKind::Kupccgsd => format!("{}-upccgsd", opts.k),
        },
        spin_orbitals: m,
        electrons: eta,
        frozen_core: opts.n_core,
        width: h.n_qubits(),
        generators,
        sector,
        parameters_total: spec.parameter_count(),
        dropped_excitations: dropped,
        hf_energy,
        energy: result.energy,
        parameters: result.parameters,
        iterations: result.iterations,
        evaluations: result.evaluations,
        converged: result.converged,
        trace: result.trace,
        fci_energy,
        gap: fci_energy.map(|f| result.energy - f),
    };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}
