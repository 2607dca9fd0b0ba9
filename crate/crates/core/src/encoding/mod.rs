//! Fermion-to-qubit encodings and Pauli-string algebra.
//!
//! Pauli strings are stored in binary symplectic form, `(x, z)` bit pairs per
//! qubit with I/X/Z/Y = 00/10/01/11, packed into 64-bit words.

mod jw;
mod operator;
mod pauli;

use num_bigint::BigUint;
use thiserror::Error;

use crate::fermion::FermionOperator;

pub use jw::{jordan_wigner, JordanWigner};
pub use operator::QubitOperator;
pub use pauli::{i_pow, Pauli, PauliString, PauliTerm};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EncodingError {
    #[error("mode index {index} out of range for {n} modes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("width mismatch: {0} vs {1} qubits")]
    WidthMismatch(usize, usize),
    #[error("operator is not Hermitian (imaginary part {0:e})")]
    NotHermitian(f64),
    #[error("syntax error: {0}")]
    Syntax(String),
}

/// A map from fermionic to qubit operators.
pub trait FermionEncoding {
    fn encode(&self, op: &FermionOperator, n_modes: usize) -> Result<QubitOperator, EncodingError>;
}

/// `(⌈log2 C(M, n)⌉, M)`: information-theoretic floor and the one-qubit-per-mode ceiling.
pub fn qubit_count_bounds(n_modes: u64, n_electrons: u64) -> (u64, u64) {
    assert!(n_electrons <= n_modes, "electron count exceeds mode count");
    let configurations = binomial(n_modes, n_electrons);
    let lower = if configurations <= BigUint::from(1u32) {
        0
    } else {
        (configurations - 1u32).bits()
    };
    (lower, n_modes)
}

/// Exact `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
