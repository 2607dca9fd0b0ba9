//! Classical molecular-mechanics potential and torsion-series fitting.
//!
//! Units: energies kcal/mol, lengths Å, angles radians, charges in units of
//! the elementary charge. Coulomb energies are `k_e q_i q_j / r` with `k_e`
//! taken from [`ForceFieldConfig`].

mod energy;
mod torsion_fit;

pub use energy::{dihedral, evaluate_energy, evaluate_gradient, forces};
pub use torsion_fit::{
    fit_torsion, format_fit_csv, parse_scan_csv, torsion_series, EnergyUnit, TorsionFit, TorsionScan,
    HARTREE_TO_KCAL_PER_MOL,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `e²/(4πε₀)` in kcal·Å/(mol·e²).
pub const COULOMB_KCAL_ANGSTROM: f64 = 332.0637;

/// Pairs closer than this are treated as coincident.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FfError {
    #[error("atom index {index} out of range for {n_atoms} atoms")]
    IndexOutOfRange { index: usize, n_atoms: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("atoms {0} and {1} coincide in a nonbonded pair")]
    Singularity(usize, usize),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("invalid scan: {0}")]
    Scan(String),
    #[error("fit is rank deficient: {distinct} distinct angles, {needed} unknowns")]
    RankDeficient { distinct: usize, needed: usize },
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForceFieldConfig {
    pub coulomb_constant: f64,
}

impl Default for ForceFieldConfig {
    fn default() -> Self {
        Self { coulomb_constant: COULOMB_KCAL_ANGSTROM }
    }
}

/// `½ k (r − r̄)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BondTerm {
    pub atoms: [usize; 2],
    pub k: f64,
    pub r0: f64,
}

/// `½ τ (θ − θ̄)²` for the angle at `atoms[1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleTerm {
    pub atoms: [usize; 3],
    pub tau: f64,
    pub theta0: f64,
}

/// One periodic component `½ V (1 + cos(nω − ω̄))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorsionComponent {
    pub n: u32,
    pub v: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionTerm {
    pub atoms: [usize; 4],
    pub components: Vec<TorsionComponent>,
}

/// `4ε[(σ/r)¹² − (σ/r)⁶]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LennardJonesPair {
    pub atoms: [usize; 2],
    pub epsilon: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FFParameters {
    pub bonds: Vec<BondTerm>,
    pub angles: Vec<AngleTerm>,
    pub torsions: Vec<TorsionTerm>,
    /// Per-atom charges; empty disables electrostatics.
    pub charges: Vec<f64>,
    pub lennard_jones: Vec<LennardJonesPair>,
    /// Pairs left out of the Coulomb sum.
    pub exclusions: Vec<[usize; 2]>,
    pub config: ForceFieldConfig,
}

impl FFParameters {
    /// Checks parameter invariants and that every index is below `n_atoms`.
    pub fn validate(&self, n_atoms: usize) -> Result<(), FfError> {
        let check = |index: usize| {
            if index < n_atoms {
                Ok(())
            } else {
                Err(FfError::IndexOutOfRange { index, n_atoms })
            }
        };
        let bad = |what: String| Err(FfError::InvalidParameter(what));
        for b in &self.bonds {
            b.atoms.iter().try_for_each(|&i| check(i))?;
            if !(b.k >= 0.0) {
                return bad(format!("bond {:?} has k = {}", b.atoms, b.k));
            }
        }
        for a in &self.angles {
            a.atoms.iter().try_for_each(|&i| check(i))?;
            if !(a.tau >= 0.0) {
                return bad(format!("angle {:?} has tau = {}", a.atoms, a.tau));
            }
        }
        for t in &self.torsions {
            t.atoms.iter().try_for_each(|&i| check(i))?;
            if t.components.iter().any(|c| c.n == 0) {
                return bad(format!("torsion {:?} has periodicity 0", t.atoms));
            }
        }
        for lj in &self.lennard_jones {
            lj.atoms.iter().try_for_each(|&i| check(i))?;
            if !(lj.epsilon >= 0.0) || !(lj.sigma > 0.0) {
                return bad(format!("LJ pair {:?} has epsilon = {}, sigma = {}", lj.atoms, lj.epsilon, lj.sigma));
            }
        }
        if !self.charges.is_empty() && self.charges.len() != n_atoms {
            return bad(format!("{} charges for {n_atoms} atoms", self.charges.len()));
        }
        self.exclusions.iter().flatten().try_for_each(|&i| check(i))?;
        Ok(())
    }
}
