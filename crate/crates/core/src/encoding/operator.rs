use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::pauli::{format_coefficient, i_pow, parse_coefficient, parse_letters};
use super::{EncodingError, PauliString, PauliTerm};
use crate::fermion::PRUNE_TOLERANCE;

/// Sum of Pauli strings on a fixed register width.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitOperator {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl QubitOperator {
    pub fn zero(n_qubits: usize) -> Self {
        Self { n_qubits, terms: BTreeMap::new() }
    }

    pub fn identity(n_qubits: usize, coefficient: impl Into<Complex64>) -> Self {
        let mut op = Self::zero(n_qubits);
        op.add_term(PauliString::identity(n_qubits), coefficient.into());
        op
    }

    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self, EncodingError>
    where
        I: IntoIterator<Item = PauliTerm>,
    {
        let mut op = Self::zero(n_qubits);
        for t in terms {
            if t.n_qubits() != n_qubits {
                return Err(EncodingError::WidthMismatch(n_qubits, t.n_qubits()));
            }
            op.add_term(t.string, t.coefficient);
        }
        Ok(op)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coefficient · string`, pruning entries that cancel.
    pub fn add_term(&mut self, string: PauliString, coefficient: Complex64) {
        use std::collections::btree_map::Entry;
        assert_eq!(string.n_qubits(), self.n_qubits, "Pauli string width mismatch");
        match self.terms.entry(string) {
            Entry::Vacant(slot) => {
                if coefficient.norm() >= PRUNE_TOLERANCE {
                    slot.insert(coefficient);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().norm() < PRUNE_TOLERANCE {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, Complex64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn to_terms(&self) -> Vec<PauliTerm> {
        self.terms.iter().map(|(k, v)| PauliTerm::new(k.clone(), *v)).collect()
    }

    pub fn coefficient(&self, string: &PauliString) -> Complex64 {
        self.terms.get(string).copied().unwrap_or_default()
    }

    /// Coefficient of the identity string.
    pub fn constant(&self) -> Complex64 {
        self.coefficient(&PauliString::identity(self.n_qubits))
    }

    /// Self-adjoint under the fixed phase convention: every coefficient real.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imaginary() <= tol
    }

    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let factor = factor.into();
        let mut out = Self::zero(self.n_qubits);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * factor);
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n_qubits);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.conj());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, EncodingError> {
        if self.n_qubits != other.n_qubits {
            return Err(EncodingError::WidthMismatch(self.n_qubits, other.n_qubits));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), *v);
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, EncodingError> {
        if self.n_qubits != other.n_qubits {
            return Err(EncodingError::WidthMismatch(self.n_qubits, other.n_qubits));
        }
        let mut out = Self::zero(self.n_qubits);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let (k, s) = ka.multiply(kb)?;
                out.add_term(s, va * vb * i_pow(k));
            }
        }
        Ok(out)
    }

    /// Drops imaginary parts below `tol`; fails if any is larger.
    pub fn into_real(self, tol: f64) -> Result<Self, EncodingError> {
        let worst = self.max_imaginary();
        if worst > tol {
            return Err(EncodingError::NotHermitian(worst));
        }
        let mut out = Self::zero(self.n_qubits);
        for (k, v) in self.terms {
            out.add_term(k, Complex64::new(v.re, 0.0));
        }
        Ok(out)
    }

    /// Dense `2^n × 2^n` matrix; qubit `j` is bit `j` of the basis index.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        assert!(self.n_qubits <= 14, "dense matrix requested for {} qubits", self.n_qubits);
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for (s, c) in &self.terms {
            for b in 0..dim as u64 {
                let (b2, phase) = s.apply_to_basis(b);
                m[(b2 as usize, b as usize)] += c * phase;
            }
        }
        m
    }
}

impl fmt::Display for QubitOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.terms {
            writeln!(f, "{} * {}", format_coefficient(*v), k)?;
        }
        Ok(())
    }
}

impl FromStr for QubitOperator {
    type Err = EncodingError;

    /// One `c * X0 Z1` term per line; the width is one past the largest
    /// qubit index unless a `# qubits: n` line says otherwise.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut width = None;
        let mut rows = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(n) = rest.trim().strip_prefix("qubits:") {
                    width = Some(n.trim().parse().map_err(|_| {
                        EncodingError::Syntax(format!("bad width line `{line}`"))
                    })?);
                }
                continue;
            }
            let (c, letters) = line
                .split_once('*')
                .ok_or_else(|| EncodingError::Syntax(format!("missing `*` in `{line}`")))?;
            let coeff = parse_coefficient(c)
                .ok_or_else(|| EncodingError::Syntax(format!("bad coefficient `{}`", c.trim())))?;
            rows.push((coeff, letters.trim().to_string()));
        }
        let n = width.unwrap_or_else(|| {
            rows.iter()
                .flat_map(|(_, l)| l.split_whitespace().filter_map(|t| t.get(1..)?.parse::<usize>().ok()))
                .map(|q| q + 1)
                .max()
                .unwrap_or(0)
        });
        let mut op = Self::zero(n);
        for (c, letters) in rows {
            op.add_term(parse_letters(&letters, n)?, c);
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::Pauli;

    #[test]
    fn text_round_trip() {
        let text = "0.5 * I\n-0.25 * Z0 Z1\n0.125 * X0 Y2\n";
        let op: QubitOperator = text.parse().unwrap();
        assert_eq!(op.n_qubits(), 3);
        assert_eq!(op.len(), 3);
        let again: QubitOperator = op.to_string().parse().unwrap();
        assert_eq!(op, again);
        let wide: QubitOperator = "# qubits: 5\n1 * Z0\n".parse().unwrap();
        assert_eq!(wide.n_qubits(), 5);
    }

    #[test]
    fn matrix_of_z_and_x() {
        let z = QubitOperator::from_terms(1, [PauliTerm::new(PauliString::single(1, 0, Pauli::Z), 1.0)]).unwrap();
        let m = z.to_matrix();
        assert_eq!(m[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(1, 1)], Complex64::new(-1.0, 0.0));
        let y = QubitOperator::from_terms(1, [PauliTerm::new(PauliString::single(1, 0, Pauli::Y), 1.0)]).unwrap();
        let m = y.to_matrix();
        // Y = [[0, -i], [i, 0]]
        assert_eq!(m[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(m[(1, 0)], Complex64::new(0.0, 1.0));
    }

    #[test]
    fn cancellation_prunes() {
        let mut op = QubitOperator::zero(2);
        let s = PauliString::single(2, 1, Pauli::X);
        op.add_term(s.clone(), Complex64::new(0.3, 0.0));
        op.add_term(s, Complex64::new(-0.3, 0.0));
        assert!(op.is_empty());
    }
}
