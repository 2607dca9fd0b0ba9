//! Dense statevector simulation with exact expectation values.
//!
//! Qubit `j` is bit `j` of the amplitude index.

use num_complex::Complex64;
use thiserror::Error;

use crate::encoding::{PauliString, QubitOperator};
use crate::synth::{Circuit, Gate};

/// Default register cap: 2^24 amplitudes, 256 MiB.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Tolerance on the imaginary residue of an expectation value.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("{requested} qubits exceeds the simulator cap of {cap}")]
    TooWide { requested: usize, cap: usize },
    #[error("width mismatch: state has {state} qubits, operand has {operand}")]
    WidthMismatch { state: usize, operand: usize },
    #[error("operator is not Hermitian (imaginary residue {0:e})")]
    NotHermitian(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero_state(n_qubits: usize, cap: usize) -> Result<Self, SimError> {
        if n_qubits > cap || n_qubits > 62 {
            return Err(SimError::TooWide { requested: n_qubits, cap });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Computational basis state with 1s at the occupied positions.
    pub fn prepare_reference(occupation: &[bool], cap: usize) -> Result<Self, SimError> {
        let mut state = Self::zero_state(occupation.len(), cap)?;
        let index = occupation
            .iter()
            .enumerate()
            .filter(|(_, &o)| o)
            .fold(0usize, |acc, (q, _)| acc | 1 << q);
        state.amplitudes[0] = Complex64::new(0.0, 0.0);
        state.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        let n = amplitudes.len();
        assert!(n.is_power_of_two(), "amplitude count must be a power of two");
        Self { n_qubits: n.trailing_zeros() as usize, amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    fn apply_single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | bit]);
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<(), SimError> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.n_qubits) {
            return Err(SimError::WidthMismatch { state: self.n_qubits, operand: q + 1 });
        }
        match *gate {
            Gate::Cnot { control, target } => {
                let (c, t) = (1usize << control, 1usize << target);
                for i in 0..self.amplitudes.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
            Gate::Z(q) => {
                let bit = 1usize << q;
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::Rz { qubit, angle } => {
                let bit = 1usize << qubit;
                let (lo, hi) = (Complex64::from_polar(1.0, -angle / 2.0), Complex64::from_polar(1.0, angle / 2.0));
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    *a *= if i & bit == 0 { lo } else { hi };
                }
            }
            g => {
                let m = g.single_qubit_matrix().expect("single-qubit gate");
                self.apply_single(g.qubits()[0], m);
            }
        }
        Ok(())
    }

    /// Applies the gates in order, in place.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if circuit.width() != self.n_qubits {
            return Err(SimError::WidthMismatch { state: self.n_qubits, operand: circuit.width() });
        }
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// `|ψ⟩ ← exp(iθP)|ψ⟩ = cos θ |ψ⟩ + i sin θ P|ψ⟩`.
    pub fn apply_pauli_rotation(&mut self, string: &PauliString, angle: f64) -> Result<(), SimError> {
        if string.n_qubits() != self.n_qubits {
            return Err(SimError::WidthMismatch { state: self.n_qubits, operand: string.n_qubits() });
        }
        if angle == 0.0 {
            return Ok(());
        }
        let (c, s) = (angle.cos(), angle.sin());
        let x = string.x_bits() as usize;
        if x == 0 {
            for (b, a) in self.amplitudes.iter_mut().enumerate() {
                let (_, phase) = string.apply_to_basis(b as u64);
                *a *= Complex64::new(c, 0.0) + Complex64::new(0.0, s) * phase;
            }
            return Ok(());
        }
        // pair each index with its partner b ^ x, visiting each pair once
        let pivot = 1usize << (63 - (x as u64).leading_zeros());
        let is = Complex64::new(0.0, s);
        for b in 0..self.amplitudes.len() {
            if b & pivot != 0 {
                continue;
            }
            let b2 = b ^ x;
            let (_, p_b) = string.apply_to_basis(b as u64); // P|b⟩ = p_b |b2⟩
            let (_, p_b2) = string.apply_to_basis(b2 as u64); // P|b2⟩ = p_b2 |b⟩
            let (a, a2) = (self.amplitudes[b], self.amplitudes[b2]);
            self.amplitudes[b] = c * a + is * p_b2 * a2;
            self.amplitudes[b2] = c * a2 + is * p_b * a;
        }
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn pauli_expectation(&self, string: &PauliString) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, a) in self.amplitudes.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let (b2, phase) = string.apply_to_basis(b as u64);
            acc += self.amplitudes[b2 as usize].conj() * phase * a;
        }
        acc
    }

    /// `⟨ψ|H|ψ⟩`, exact. Fails when the result carries an imaginary part
    /// above [`HERMITIAN_TOLERANCE`].
    pub fn expectation(&self, op: &QubitOperator) -> Result<f64, SimError> {
        if op.n_qubits() != self.n_qubits {
            return Err(SimError::WidthMismatch { state: self.n_qubits, operand: op.n_qubits() });
        }
        let worst = op.max_imaginary();
        if worst > HERMITIAN_TOLERANCE {
            return Err(SimError::NotHermitian(worst));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (s, c) in op.terms() {
            // states are normalized, so the identity term is its coefficient
            total += if s.is_identity() { c } else { c * self.pauli_expectation(s) };
        }
        if total.im.abs() > HERMITIAN_TOLERANCE * (1.0 + total.re.abs()) {
            return Err(SimError::NotHermitian(total.im.abs()));
        }
        Ok(total.re)
    }
}

/// Applies `circuit` to `state`, returning the new state.
pub fn apply_circuit(mut state: StateVector, circuit: &Circuit) -> Result<StateVector, SimError> {
    state.apply_circuit(circuit)?;
    Ok(state)
}

/// `⟨ψ|H|ψ⟩`.
pub fn expectation(state: &StateVector, op: &QubitOperator) -> Result<f64, SimError> {
    state.expectation(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{Pauli, PauliTerm};

    const CAP: usize = DEFAULT_MAX_QUBITS;

    #[test]
    fn references() {
        let s = StateVector::prepare_reference(&[false, false], CAP).unwrap();
        assert_eq!(s.amplitudes()[0], Complex64::new(1.0, 0.0));
        let s = StateVector::prepare_reference(&[true, true, false, false], CAP).unwrap();
        assert_eq!(s.amplitudes()[0b0011], Complex64::new(1.0, 0.0));
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!(matches!(
            StateVector::prepare_reference(&[false; 30], CAP),
            Err(SimError::TooWide { requested: 30, cap: 24 })
        ));
    }

    #[test]
    fn x_and_cnot() {
        let mut s = StateVector::zero_state(1, CAP).unwrap();
        s.apply_gate(&Gate::X(0)).unwrap();
        assert_eq!(s.amplitudes()[1], Complex64::new(1.0, 0.0));
        // |10⟩ with qubit 0 set
        let mut s = StateVector::prepare_reference(&[true, false], CAP).unwrap();
        s.apply_gate(&Gate::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(s.amplitudes()[0b11], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn z_expectations() {
        let z = QubitOperator::from_terms(1, [PauliTerm::new(PauliString::single(1, 0, Pauli::Z), 1.0)]).unwrap();
        let zero = StateVector::zero_state(1, CAP).unwrap();
        assert_eq!(expectation(&zero, &z).unwrap(), 1.0);
        let mut plus = zero.clone();
        plus.apply_gate(&Gate::H(0)).unwrap();
        assert!(expectation(&plus, &z).unwrap().abs() < 1e-15);
    }

    #[test]
    fn identity_operator_expectation_is_coefficient() {
        let op = QubitOperator::identity(3, -1.25);
        let mut s = StateVector::zero_state(3, CAP).unwrap();
        s.apply_gate(&Gate::H(1)).unwrap();
        assert_eq!(expectation(&s, &op).unwrap(), -1.25);
    }

    #[test]
    fn non_hermitian_rejected() {
        let op = QubitOperator::identity(1, Complex64::new(0.0, 1.0));
        let s = StateVector::zero_state(1, CAP).unwrap();
        assert!(matches!(expectation(&s, &op), Err(SimError::NotHermitian(_))));
    }

    #[test]
    fn width_checks() {
        let s = StateVector::zero_state(2, CAP).unwrap();
        let c = Circuit::new(3);
        assert!(matches!(apply_circuit(s.clone(), &c), Err(SimError::WidthMismatch { .. })));
        let op = QubitOperator::identity(3, 1.0);
        assert!(matches!(expectation(&s, &op), Err(SimError::WidthMismatch { .. })));
    }

    #[test]
    fn pauli_rotation_matches_cos_sin_formula() {
        let mut s = StateVector::zero_state(2, CAP).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        let p = PauliString::from_letters(2, &[(0, Pauli::Y), (1, Pauli::X)]);
        let mut rotated = s.clone();
        rotated.apply_pauli_rotation(&p, 0.3).unwrap();
        // ⟨ψ|exp(−iθP) P exp(iθP)|ψ⟩ = ⟨P⟩ since P commutes with itself
        assert!((rotated.pauli_expectation(&p) - s.pauli_expectation(&p)).norm() < 1e-14);
        assert!((rotated.norm() - 1.0).abs() < 1e-14);
    }
}
