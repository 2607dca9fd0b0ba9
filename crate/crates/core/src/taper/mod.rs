//! Z2 symmetry detection and qubit tapering.
//!
//! Symmetries are found as the GF(2) null space of the Hamiltonian's check
//! matrix under the symplectic form. Each chosen generator `τ_i` is paired
//! with a single-qubit Pauli `σ_i` that anticommutes with it and commutes
//! with every other generator; the Clifford `U_i = (σ_i + τ_i)/√2` maps
//! `τ_i` to `σ_i`, after which qubit `q_i` can be replaced by the sector
//! eigenvalue.

mod gf2;

use num_complex::Complex64;
use thiserror::Error;

use crate::ansatz::TrotterPlan;
use crate::encoding::{i_pow, Pauli, PauliString, QubitOperator};
use crate::sim::{SimError, StateVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TaperError {
    #[error("generator {0} does not commute with the operator")]
    NotASymmetry(String),
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("{gens} generators but {sector} sector values")]
    SectorLength { gens: usize, sector: usize },
    #[error("sector values must be ±1")]
    SectorValue,
    #[error("generators are not independent over GF(2)")]
    Dependent,
    #[error("no distinct single-qubit pivots for the generator set")]
    NoPivot,
    #[error("reference state cannot be tapered: generators are not all Z-type")]
    ReferenceNotTaperable,
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// A Pauli string `τ` (coefficient 1) commuting with every Hamiltonian term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGenerator {
    pub pauli: PauliString,
}

impl std::fmt::Display for SymmetryGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1 * {}", self.pauli)
    }
}

fn string_to_row(s: &PauliString, n: usize) -> Vec<bool> {
    // [x | z]
    let mut row = vec![false; 2 * n];
    for (q, p) in s.letters() {
        let (x, z) = p.bits();
        row[q] = x;
        row[n + q] = z;
    }
    row
}

fn row_to_string(row: &[bool], n: usize) -> PauliString {
    let letters: Vec<(usize, Pauli)> = (0..n)
        .map(|q| (q, Pauli::from_bits(row[q], row[n + q])))
        .filter(|(_, p)| *p != Pauli::I)
        .collect();
    PauliString::from_letters(n, &letters)
}

/// Independent, mutually commuting symmetries of `op` (identity excluded).
///
/// Z-type kernel elements are taken first; further kernel elements are added
/// greedily while they commute with everything chosen so far.
pub fn find_z2_symmetries(op: &QubitOperator) -> Vec<SymmetryGenerator> {
    let n = op.n_qubits();
    if n == 0 {
        return Vec::new();
    }
    // τ commutes with P iff x_P·z_τ + z_P·x_τ = 0; rows are [z_P | x_P] so
    // that the kernel vector is [x_τ | z_τ].
    let check: Vec<Vec<bool>> = op
        .terms()
        .filter(|(s, _)| !s.is_identity())
        .map(|(s, _)| {
            let row = string_to_row(s, n);
            row[n..].iter().chain(&row[..n]).copied().collect()
        })
        .collect();
    // Reducing the kernel basis with x columns first leaves the Z-type
    // subspace spanned by the rows whose pivot lies in the z block.
    let (basis, _) = gf2::rref(gf2::kernel(check, 2 * n), 2 * n);
    let mut candidates: Vec<PauliString> = basis.iter().map(|v| row_to_string(v, n)).collect();
    candidates.sort_by_key(|s| (!s.is_z_type(), s.weight()));
    let mut chosen: Vec<PauliString> = Vec::new();
    for cand in candidates {
        if chosen.iter().all(|c| c.commutes_with(&cand)) {
            chosen.push(cand);
        }
    }
    chosen.into_iter().map(|pauli| SymmetryGenerator { pauli }).collect()
}

/// The Clifford frame that turns generators into single-qubit Paulis.
#[derive(Debug, Clone)]
pub struct TaperingFrame {
    n_qubits: usize,
    generators: Vec<PauliString>,
    pivots: Vec<(usize, Pauli)>,
}

impl TaperingFrame {
    /// Validates `gens` against `op` and picks pivot qubits.
    pub fn new(op: &QubitOperator, gens: &[SymmetryGenerator]) -> Result<Self, TaperError> {
        let n = op.n_qubits();
        for g in gens {
            if op.terms().any(|(s, _)| !s.commutes_with(&g.pauli)) {
                return Err(TaperError::NotASymmetry(g.pauli.to_string()));
            }
        }
        Self::from_generators(n, gens.iter().map(|g| g.pauli.clone()).collect())
    }

    fn from_generators(n: usize, gens: Vec<PauliString>) -> Result<Self, TaperError> {
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !gens[i].commutes_with(&gens[j]) {
                    return Err(TaperError::NonCommuting(i, j));
                }
            }
        }
        let rows: Vec<Vec<bool>> = gens.iter().map(|g| string_to_row(g, n)).collect();
        if gf2::rank(rows, 2 * n) != gens.len() {
            return Err(TaperError::Dependent);
        }
        let pivots = assign_pivots(n, &gens).ok_or(TaperError::NoPivot)?;
        let generators = gens;
        Ok(Self { n_qubits: n, generators, pivots })
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn tapered_qubits(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(q, _)| q).collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_tapered(&self) -> usize {
        self.n_qubits - self.pivots.len()
    }

    /// `U P U` for the product of all frame Cliffords; returns the image as
    /// a list of `(phase, string)` terms (one term if `P` commutes with
    /// every generator).
    fn rotate_string(&self, s: &PauliString) -> Vec<(Complex64, PauliString)> {
        let mut current = vec![(Complex64::new(1.0, 0.0), s.clone())];
        for (g, &(q, sigma)) in self.generators.iter().zip(&self.pivots) {
            let sig = PauliString::single(self.n_qubits, q, sigma);
            let mut next = QubitOperator::zero(self.n_qubits);
            for (c, p) in &current {
                // ((σ + τ) P (σ + τ)) / 2
                for a in [&sig, g] {
                    for b in [&sig, g] {
                        let (k1, ap) = a.multiply(p).expect("same width");
                        let (k2, apb) = ap.multiply(b).expect("same width");
                        next.add_term(apb, c * i_pow(k1 + k2) * 0.5);
                    }
                }
            }
            current = next.terms().map(|(s, c)| (c, s.clone())).collect();
        }
        current
    }

    /// Rotated string with the pivot qubits replaced by sector values and
    /// removed. `None` if the string does not commute with the generators.
    fn project_string(&self, s: &PauliString, sector: &[i8]) -> Option<Vec<(Complex64, PauliString)>> {
        if self.generators.iter().any(|g| !g.commutes_with(s)) {
            return None;
        }
        let removed = self.tapered_qubits();
        let mut out = Vec::new();
        for (mut c, r) in self.rotate_string(s) {
            for (&(q, sigma), &lambda) in self.pivots.iter().zip(sector) {
                match r.get(q) {
                    Pauli::I => {}
                    p if p == sigma => c *= lambda as f64,
                    _ => unreachable!("rotated term anticommutes with pivot"),
                }
            }
            out.push((c, r.remove_qubits(&removed)));
        }
        Some(out)
    }

    fn check_sector(&self, sector: &[i8]) -> Result<(), TaperError> {
        if sector.len() != self.pivots.len() {
            return Err(TaperError::SectorLength { gens: self.pivots.len(), sector: sector.len() });
        }
        if sector.iter().any(|&s| s != 1 && s != -1) {
            return Err(TaperError::SectorValue);
        }
        Ok(())
    }

    /// Operator on the remaining `n − |gens|` qubits for `sector`.
    pub fn taper_operator(&self, op: &QubitOperator, sector: &[i8]) -> Result<QubitOperator, TaperError> {
        self.check_sector(sector)?;
        let mut out = QubitOperator::zero(self.n_tapered());
        for (s, c) in op.terms() {
            let projected = self
                .project_string(s, sector)
                .ok_or_else(|| TaperError::NotASymmetry(s.to_string()))?;
            for (phase, r) in projected {
                out.add_term(r, c * phase);
            }
        }
        Ok(out)
    }

    /// Rotates and projects an ansatz plan. Blocks whose strings do not
    /// commute with every generator are dropped; returns the new plan and
    /// the number of dropped blocks.
    pub fn taper_plan(&self, plan: &TrotterPlan, sector: &[i8]) -> Result<(TrotterPlan, usize), TaperError> {
        self.check_sector(sector)?;
        let mut blocks = Vec::new();
        let mut dropped = 0;
        for (slot, strings) in plan.blocks() {
            let mut out = Vec::with_capacity(strings.len());
            let mut ok = true;
            for (s, c) in strings {
                match self.project_string(s, sector) {
                    Some(terms) if terms.len() == 1 => {
                        let (phase, r) = &terms[0];
                        debug_assert!(phase.im.abs() < 1e-12);
                        if !r.is_identity() {
                            out.push((r.clone(), c * phase.re));
                        }
                    }
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                blocks.push((*slot, out));
            } else {
                dropped += 1;
            }
        }
        Ok((TrotterPlan::from_blocks(self.n_tapered(), plan.n_parameters(), blocks), dropped))
    }

    /// Image of a computational basis state, valid when every generator is
    /// Z-type: the kept qubits retain their bits, and the sector is fixed
    /// by the generators' eigenvalues on the state.
    pub fn taper_reference(&self, occupation: &[bool]) -> Option<(Vec<bool>, Vec<i8>)> {
        if !self.generators.iter().all(PauliString::is_z_type) {
            return None;
        }
        let sector = self
            .generators
            .iter()
            .map(|g| {
                let parity = g.letters().filter(|&(q, _)| occupation[q]).count() % 2;
                if parity == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let removed = self.tapered_qubits();
        let kept = (0..self.n_qubits).filter(|q| !removed.contains(q)).map(|q| occupation[q]).collect();
        Some((kept, sector))
    }

    /// Sector whose tapered operator has the lowest expectation on the
    /// tapered reference, scanning all `2^k` sign choices.
    pub fn best_sector_by_reference(&self, op: &QubitOperator, reference: &[bool], cap: usize) -> Result<Vec<i8>, TaperError> {
        let removed = self.tapered_qubits();
        let kept: Vec<bool> =
            (0..self.n_qubits).filter(|q| !removed.contains(q)).map(|q| reference[q]).collect();
        let state = StateVector::prepare_reference(&kept, cap)?;
        let k = self.pivots.len();
        let mut best: Option<(f64, Vec<i8>)> = None;
        for mask in 0..(1u32 << k) {
            let sector: Vec<i8> = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let e = state.expectation(&self.taper_operator(op, &sector)?)?;
            if best.as_ref().is_none_or(|(b, _)| e < *b) {
                best = Some((e, sector));
            }
        }
        Ok(best.map(|(_, s)| s).unwrap_or_default())
    }
}

/// Picks a distinct qubit `q_i` and letter `σ_i` per generator such that
/// `σ_i` anticommutes with `τ_i` only. Small backtracking search.
fn assign_pivots(n: usize, gens: &[PauliString]) -> Option<Vec<(usize, Pauli)>> {
    let options: Vec<Vec<(usize, Pauli)>> = (0..gens.len())
        .map(|i| {
            let mut opts = Vec::new();
            for q in 0..n {
                for sigma in [Pauli::X, Pauli::Z, Pauli::Y] {
                    let s = PauliString::single(n, q, sigma);
                    if gens.iter().enumerate().all(|(j, g)| s.commutes_with(g) != (i == j)) {
                        opts.push((q, sigma));
                    }
                }
            }
            opts
        })
        .collect();
    fn search(i: usize, options: &[Vec<(usize, Pauli)>], acc: &mut Vec<(usize, Pauli)>) -> bool {
        if i == options.len() {
            return true;
        }
        for &(q, sigma) in &options[i] {
            if acc.iter().any(|&(p, _)| p == q) {
                continue;
            }
            acc.push((q, sigma));
            if search(i + 1, options, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::with_capacity(gens.len());
    search(0, &options, &mut acc).then_some(acc)
}

/// Tapers `op` with `gens` in `sector`.
///
/// `sector[i]` is the eigenvalue assigned to `gens[i]`.
pub fn taper(op: &QubitOperator, gens: &[SymmetryGenerator], sector: &[i8]) -> Result<QubitOperator, TaperError> {
    if gens.is_empty() {
        if !sector.is_empty() {
            return Err(TaperError::SectorLength { gens: 0, sector: sector.len() });
        }
        return Ok(op.clone());
    }
    TaperingFrame::new(op, gens)?.taper_operator(op, sector)
}

/// A Hamiltonian, ansatz plan and reference reduced together.
#[derive(Debug, Clone)]
pub struct TaperedProblem {
    pub frame: TaperingFrame,
    pub generators: Vec<SymmetryGenerator>,
    pub sector: Vec<i8>,
    pub hamiltonian: QubitOperator,
    pub plan: TrotterPlan,
    pub reference: Vec<bool>,
    /// Ansatz blocks removed because they break a symmetry.
    pub dropped_blocks: usize,
}

/// Finds symmetries of `op`, picks the sector whose tapered operator has
/// the lowest expectation on the tapered reference, and reduces the
/// Hamiltonian, the plan and the reference consistently.
pub fn taper_problem(
    op: &QubitOperator,
    plan: &TrotterPlan,
    reference: &[bool],
    cap: usize,
) -> Result<TaperedProblem, TaperError> {
    let generators = find_z2_symmetries(op);
    let frame = TaperingFrame::new(op, &generators)?;
    let (kept, _) = frame.taper_reference(reference).ok_or(TaperError::ReferenceNotTaperable)?;
    let sector = frame.best_sector_by_reference(op, reference, cap)?;
    let hamiltonian = frame.taper_operator(op, &sector)?;
    let (plan, dropped_blocks) = frame.taper_plan(plan, &sector)?;
    Ok(TaperedProblem { frame, generators, sector, hamiltonian, plan, reference: kept, dropped_blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::PauliTerm;

    fn op(text: &str) -> QubitOperator {
        text.parse().unwrap()
    }

    #[test]
    fn zz_symmetries() {
        let h = op("1 * Z0 Z1\n");
        let gens = find_z2_symmetries(&h);
        assert_eq!(gens.len(), 2);
        let strings: Vec<String> = gens.iter().map(|g| g.pauli.to_string()).collect();
        assert!(strings.contains(&"Z0".to_string()) || strings.contains(&"Z1".to_string()));
        assert!(gens.iter().all(|g| g.pauli.is_z_type()));
        for g in &gens {
            assert!(h.terms().all(|(s, _)| s.commutes_with(&g.pauli)));
        }
    }

    #[test]
    fn no_generators_is_identity() {
        let h = op("0.5 * X0 Z1\n-0.2 * Y1\n");
        assert_eq!(taper(&h, &[], &[]).unwrap(), h);
    }

    #[test]
    fn sector_length_checked() {
        let h = op("1 * Z0 Z1\n0.5 * X0 X1\n");
        let gens = find_z2_symmetries(&h);
        assert!(matches!(taper(&h, &gens, &[1]), Err(TaperError::SectorLength { .. })));
        assert!(matches!(taper(&h, &gens[..1], &[2]), Err(TaperError::SectorValue)));
    }

    #[test]
    fn non_commuting_generators_rejected() {
        let h = op("1 * Z0 Z1\n");
        let gens = [
            SymmetryGenerator { pauli: PauliString::single(2, 0, Pauli::Z) },
            SymmetryGenerator { pauli: PauliString::from_letters(2, &[(0, Pauli::X), (1, Pauli::X)]) },
        ];
        assert!(matches!(taper(&h, &gens, &[1, 1]), Err(TaperError::NonCommuting(0, 1))));
        let bad = [SymmetryGenerator { pauli: PauliString::single(2, 0, Pauli::X) }];
        assert!(matches!(taper(&h, &bad, &[1]), Err(TaperError::NotASymmetry(_))));
    }

    #[test]
    fn taper_two_site_model() {
        // H = Z0 Z1 + X0 X1 has symmetries X0X1 and Z0Z1 (commuting)
        let h = QubitOperator::from_terms(
            2,
            [
                PauliTerm::new(PauliString::from_letters(2, &[(0, Pauli::Z), (1, Pauli::Z)]), 1.0),
                PauliTerm::new(PauliString::from_letters(2, &[(0, Pauli::X), (1, Pauli::X)]), 0.5),
            ],
        )
        .unwrap();
        let gens = find_z2_symmetries(&h);
        assert_eq!(gens.len(), 2);
        let mut values = Vec::new();
        for a in [1i8, -1] {
            for b in [1i8, -1] {
                let t = taper(&h, &gens, &[a, b]).unwrap();
                assert_eq!(t.n_qubits(), 0);
                values.push(t.constant().re);
            }
        }
        values.sort_by(f64::total_cmp);
        // eigenvalues of Z0Z1 + 0.5 X0X1: ±1 ± 0.5
        let expected = [-1.5, -0.5, 0.5, 1.5];
        for (v, e) in values.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12, "{values:?}");
        }
    }
}
