use num_complex::Complex64;

use super::{EncodingError, FermionEncoding, Pauli, PauliString, QubitOperator};
use crate::fermion::{FermionOperator, Ladder};

/// `a_i ↦ Z_0⋯Z_{i−1} (X_i + iY_i)/2`, `a†_i ↦ Z_0⋯Z_{i−1} (X_i − iY_i)/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct JordanWigner;

impl JordanWigner {
    fn ladder(l: Ladder, n: usize) -> QubitOperator {
        let mut x = PauliString::single(n, l.mode, Pauli::X);
        let mut y = PauliString::single(n, l.mode, Pauli::Y);
        for q in 0..l.mode {
            x.set(q, Pauli::Z);
            y.set(q, Pauli::Z);
        }
        let y_sign = if l.dagger { -0.5 } else { 0.5 };
        let mut op = QubitOperator::zero(n);
        op.add_term(x, Complex64::new(0.5, 0.0));
        op.add_term(y, Complex64::new(0.0, y_sign));
        op
    }
}

impl FermionEncoding for JordanWigner {
    fn encode(&self, op: &FermionOperator, n_modes: usize) -> Result<QubitOperator, EncodingError> {
        if let Some(bad) = op.terms().flat_map(|(f, _)| f.iter()).find(|l| l.mode >= n_modes) {
            return Err(EncodingError::IndexOutOfRange { index: bad.mode, n: n_modes });
        }
        let ladders: Vec<[QubitOperator; 2]> = (0..n_modes)
            .map(|m| [Self::ladder(Ladder::annihilate(m), n_modes), Self::ladder(Ladder::create(m), n_modes)])
            .collect();
        let mut out = QubitOperator::zero(n_modes);
        for (factors, coeff) in op.terms() {
            let mut product = QubitOperator::identity(n_modes, coeff);
            for l in factors {
                product = product.multiply(&ladders[l.mode][l.dagger as usize])?;
            }
            for (s, c) in product.terms() {
                out.add_term(s.clone(), c);
            }
        }
        Ok(out)
    }
}

/// Jordan-Wigner image of `op` on `n_modes` qubits.
pub fn jordan_wigner(op: &FermionOperator, n_modes: usize) -> Result<QubitOperator, EncodingError> {
    JordanWigner.encode(op, n_modes)
}
