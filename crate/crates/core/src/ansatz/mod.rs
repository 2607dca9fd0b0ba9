//! UCCSD and k-UpCCGSD generator lists and their first-order Trotter product.
//!
//! Amplitudes are real. Each generator is `T − T†` for a single excitation
//! product `T`; its Jordan-Wigner image is a sum of mutually commuting Pauli
//! strings with purely imaginary coefficients, so `exp(t(T − T†))` factorizes
//! exactly into string exponentials and the only Trotter error comes from
//! ordering different generators.

mod trotter;

use serde::Serialize;
use thiserror::Error;

use crate::encoding::EncodingError;
use crate::fermion::{FermionOperator, Ladder};

pub use trotter::{trotterize, TrotterPlan, TrotterStep};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnsatzError {
    #[error("electron count {n_electrons} must lie strictly between 0 and {n_modes}")]
    ElectronCount { n_modes: usize, n_electrons: usize },
    #[error("k-UpCCGSD needs an even number of spin orbitals, got {0}")]
    OddModes(usize),
    #[error("repetition count must be at least 1")]
    ZeroRepetitions,
    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("{0} spin orbitals is too many to expand into Pauli strings")]
    TooLarge(usize),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExcitationKind {
    Single,
    Double,
    PairedDouble,
}

/// `T = a†_{creators[0]} a†_{creators[1]} … a_{annihilators[1]} a_{annihilators[0]}`,
/// generator `T − T†` weighted by parameter slot `parameter`.
///
/// Singles: `a†_a a_i`. Doubles: `a†_a a†_b a_j a_i`. Paired doubles move
/// both electrons of spatial orbital `q` to spatial orbital `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcitationGenerator {
    pub kind: ExcitationKind,
    /// Orbitals emptied, ascending (`i` or `i, j`).
    pub annihilators: Vec<usize>,
    /// Orbitals filled, ascending (`a` or `a, b`).
    pub creators: Vec<usize>,
    pub parameter: usize,
}

impl ExcitationGenerator {
    fn single(i: usize, a: usize, parameter: usize) -> Self {
        Self { kind: ExcitationKind::Single, annihilators: vec![i], creators: vec![a], parameter }
    }

    fn double(i: usize, j: usize, a: usize, b: usize, parameter: usize) -> Self {
        Self {
            kind: ExcitationKind::Double,
            annihilators: vec![i, j],
            creators: vec![a, b],
            parameter,
        }
    }

    /// Spatial `q → p`, i.e. spin orbitals `(2q, 2q+1) → (2p, 2p+1)`.
    fn paired(p: usize, q: usize, parameter: usize) -> Self {
        Self {
            kind: ExcitationKind::PairedDouble,
            annihilators: vec![2 * q, 2 * q + 1],
            creators: vec![2 * p, 2 * p + 1],
            parameter,
        }
    }

    /// The excitation product `T` (not yet anti-Hermitian).
    pub fn excitation(&self) -> FermionOperator {
        let mut factors: Vec<Ladder> = self.creators.iter().map(|&m| Ladder::create(m)).collect();
        factors.extend(self.annihilators.iter().rev().map(|&m| Ladder::annihilate(m)));
        FermionOperator::from_term(factors, 1.0)
    }

    /// `T − T†`, normal ordered.
    pub fn operator(&self) -> FermionOperator {
        let t = self.excitation();
        (&t - &t.adjoint()).normal_order()
    }

    /// Distinct spin orbitals touched.
    pub fn indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.annihilators.iter().chain(&self.creators).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Full Jordan-Wigner weight of each of its Pauli strings, Z ladders
    /// included: sorted indices `s0 < s1 (< s2 < s3)` give `s1 − s0 + 1`
    /// (`+ s3 − s2 + 1`).
    pub fn jw_string_weight(&self) -> usize {
        let s = self.indices();
        s.chunks(2).map(|c| c[1] - c[0] + 1).sum()
    }

    /// Number of Pauli strings in the Jordan-Wigner image of `T − T†`.
    pub fn jw_string_count(&self) -> usize {
        match self.kind {
            ExcitationKind::Single => 2,
            ExcitationKind::Double | ExcitationKind::PairedDouble => 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum AnsatzFamily {
    Uccsd,
    KUpCCGSD { k: usize },
}

/// A generator family bound to a register and a Hartree-Fock reference.
///
/// Generators are produced on demand so that specs for peptide-size active
/// spaces can be counted without being materialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnsatzSpec {
    pub family: AnsatzFamily,
    pub n_modes: usize,
    pub n_electrons: usize,
}

/// UCCSD over `n_modes` spin orbitals with the lowest `n_electrons` occupied.
pub fn build_uccsd(n_modes: usize, n_electrons: usize) -> Result<AnsatzSpec, AnsatzError> {
    if n_electrons == 0 || n_electrons >= n_modes {
        return Err(AnsatzError::ElectronCount { n_modes, n_electrons });
    }
    Ok(AnsatzSpec { family: AnsatzFamily::Uccsd, n_modes, n_electrons })
}

/// k-UpCCGSD over `n_modes` (even) spin orbitals; `n_electrons` only fixes
/// the reference determinant.
pub fn build_kupccgsd(n_modes: usize, n_electrons: usize, k: usize) -> Result<AnsatzSpec, AnsatzError> {
    if n_modes % 2 != 0 {
        return Err(AnsatzError::OddModes(n_modes));
    }
    if k == 0 {
        return Err(AnsatzError::ZeroRepetitions);
    }
    if n_electrons > n_modes {
        return Err(AnsatzError::ElectronCount { n_modes, n_electrons });
    }
    Ok(AnsatzSpec { family: AnsatzFamily::KUpCCGSD { k }, n_modes, n_electrons })
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl AnsatzSpec {
    pub fn repetitions(&self) -> usize {
        match self.family {
            AnsatzFamily::Uccsd => 1,
            AnsatzFamily::KUpCCGSD { k } => k,
        }
    }

    pub fn n_virtual(&self) -> usize {
        self.n_modes - self.n_electrons
    }

    /// `(singles, doubles)` generator counts over all repetitions.
    pub fn generator_counts(&self) -> (usize, usize) {
        match self.family {
            AnsatzFamily::Uccsd => {
                let (o, v) = (self.n_electrons, self.n_virtual());
                (o * v, choose2(o) * choose2(v))
            }
            AnsatzFamily::KUpCCGSD { k } => {
                let spatial = self.n_modes / 2;
                (k * 2 * choose2(spatial), k * choose2(spatial))
            }
        }
    }

    pub fn parameter_count(&self) -> usize {
        let (s, d) = self.generator_counts();
        s + d
    }

    /// Paired-double terms per repetition counted over ordered spatial
    /// pairs, `(M/2)(M/2 − 1)`; generators and parameters use unordered
    /// pairs, half as many.
    pub fn paired_double_term_count(&self) -> usize {
        match self.family {
            AnsatzFamily::Uccsd => 0,
            AnsatzFamily::KUpCCGSD { .. } => {
                let n = self.n_modes / 2;
                n * n.saturating_sub(1)
            }
        }
    }

    /// Hartree-Fock occupation: the lowest `n_electrons` spin orbitals.
    pub fn reference(&self) -> Vec<bool> {
        (0..self.n_modes).map(|m| m < self.n_electrons).collect()
    }

    /// Ordered generators: per repetition, all doubles (lexicographic) then
    /// all singles (lexicographic); parameter slots dense in that order.
    pub fn generators(&self) -> Vec<ExcitationGenerator> {
        let mut out = Vec::with_capacity(self.parameter_count());
        let mut slot = 0;
        let mut next = || {
            slot += 1;
            slot - 1
        };
        match self.family {
            AnsatzFamily::Uccsd => {
                let (o, m) = (self.n_electrons, self.n_modes);
                for i in 0..o {
                    for j in i + 1..o {
                        for a in o..m {
                            for b in a + 1..m {
                                out.push(ExcitationGenerator::double(i, j, a, b, next()));
                            }
                        }
                    }
                }
                for i in 0..o {
                    for a in o..m {
                        out.push(ExcitationGenerator::single(i, a, next()));
                    }
                }
            }
            AnsatzFamily::KUpCCGSD { k } => {
                let spatial = self.n_modes / 2;
                for _ in 0..k {
                    for q in 0..spatial {
                        for p in q + 1..spatial {
                            out.push(ExcitationGenerator::paired(p, q, next()));
                        }
                    }
                    for p in 0..self.n_modes {
                        for q in (p + 2..self.n_modes).step_by(2) {
                            out.push(ExcitationGenerator::single(p, q, next()));
                        }
                    }
                }
            }
        }
        out
    }

    /// JSON-friendly summary.
    pub fn summary(&self) -> AnsatzSummary {
        let (singles, doubles) = self.generator_counts();
        AnsatzSummary {
            family: self.family,
            n_modes: self.n_modes,
            n_electrons: self.n_electrons,
            singles,
            doubles,
            parameters: self.parameter_count(),
            paired_double_terms: self.paired_double_term_count(),
            note: match self.family {
                AnsatzFamily::Uccsd => None,
                AnsatzFamily::KUpCCGSD { .. } => Some(
                    "paired-double gates counted over ordered spatial pairs; parameters over unordered pairs",
                ),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnsatzSummary {
    pub family: AnsatzFamily,
    pub n_modes: usize,
    pub n_electrons: usize,
    pub singles: usize,
    pub doubles: usize,
    pub parameters: usize,
    pub paired_double_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}
