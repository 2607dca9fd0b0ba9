use std::fmt;

use num_complex::Complex64;

use super::EncodingError;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `(x, z)` bits: I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `i^k` for `k mod 4`.
pub fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Tensor product of Pauli letters in binary symplectic form, packed
/// 64 qubits per word.
///
/// The string denotes the literal product of its letters, so `Y` is the Pauli
/// matrix itself; in terms of the bit pattern that is `i^{|x∧z|} X^x Z^z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        Self { n_qubits, x: vec![0; words(n_qubits)], z: vec![0; words(n_qubits)] }
    }

    pub fn single(n_qubits: usize, qubit: usize, pauli: Pauli) -> Self {
        let mut s = Self::identity(n_qubits);
        s.set(qubit, pauli);
        s
    }

    pub fn from_letters(n_qubits: usize, letters: &[(usize, Pauli)]) -> Self {
        let mut s = Self::identity(n_qubits);
        for &(q, p) in letters {
            s.set(q, p);
        }
        s
    }

    /// Builds a string from the low 64-bit words; panics past 64 qubits.
    pub fn from_words(n_qubits: usize, x: u64, z: u64) -> Self {
        assert!(n_qubits <= 64);
        let mask = if n_qubits == 64 { u64::MAX } else { (1u64 << n_qubits) - 1 };
        Self { n_qubits, x: vec![x & mask], z: vec![z & mask] }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// Low word of the x bits; only meaningful up to 64 qubits.
    pub fn x_bits(&self) -> u64 {
        self.x[0]
    }

    pub fn z_bits(&self) -> u64 {
        self.z[0]
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        assert!(qubit < self.n_qubits, "qubit {qubit} out of range");
        let (w, b) = (qubit / 64, qubit % 64);
        Pauli::from_bits(self.x[w] >> b & 1 == 1, self.z[w] >> b & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        assert!(qubit < self.n_qubits, "qubit {qubit} out of range");
        let (w, b) = (qubit / 64, qubit % 64);
        let (x, z) = pauli.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((x as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((z as u64) << b);
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Only I and Z letters.
    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits).filter(|&q| self.get(q) != Pauli::I).collect()
    }

    pub fn letters(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        (0..self.n_qubits).map(|q| (q, self.get(q))).filter(|(_, p)| *p != Pauli::I)
    }

    fn y_count(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(x, z)| (x & z).count_ones()).sum()
    }

    /// Symplectic inner product parity: `true` when the strings commute.
    pub fn commutes_with(&self, other: &Self) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity += (self.x[w] & other.z[w]).count_ones() + (self.z[w] & other.x[w]).count_ones();
        }
        parity % 2 == 0
    }

    /// Product `self · other = i^k · result`; returns `(k mod 4, result)`.
    pub fn multiply(&self, other: &Self) -> Result<(u32, Self), EncodingError> {
        if self.n_qubits != other.n_qubits {
            return Err(EncodingError::WidthMismatch(self.n_qubits, other.n_qubits));
        }
        let mut out = Self::identity(self.n_qubits);
        let mut swaps = 0u32;
        for w in 0..self.x.len() {
            out.x[w] = self.x[w] ^ other.x[w];
            out.z[w] = self.z[w] ^ other.z[w];
            swaps += (self.z[w] & other.x[w]).count_ones();
        }
        // P = i^{y} X^x Z^z;  Z^{z1} X^{x2} = (−1)^{|z1∧x2|} X^{x2} Z^{z1}
        let k = self.y_count() + other.y_count() + 2 * swaps + 4 * 64 * self.x.len() as u32
            - out.y_count();
        Ok((k % 4, out))
    }

    /// Action on a computational basis state (≤ 64 qubits):
    /// `P|b⟩ = phase · |b'⟩`.
    #[inline]
    pub fn apply_to_basis(&self, b: u64) -> (u64, Complex64) {
        let (x, z) = (self.x[0], self.z[0]);
        let k = (x & z).count_ones() + 2 * (z & b).count_ones();
        (b ^ x, i_pow(k))
    }

    /// Removes the listed qubits (ascending or not) and compacts the rest.
    pub fn remove_qubits(&self, removed: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.n_qubits).filter(|q| !removed.contains(q)).collect();
        let mut out = Self::identity(keep.len());
        for (new, &old) in keep.iter().enumerate() {
            out.set(new, self.get(old));
        }
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        for (i, (q, p)) in self.letters().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{q}", p.symbol())?;
        }
        Ok(())
    }
}

/// Coefficient times a Pauli string.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub string: PauliString,
    pub coefficient: Complex64,
}

impl PauliTerm {
    pub fn new(string: PauliString, coefficient: impl Into<Complex64>) -> Self {
        Self { string, coefficient: coefficient.into() }
    }

    pub fn n_qubits(&self) -> usize {
        self.string.n_qubits()
    }

    pub fn weight(&self) -> usize {
        self.string.weight()
    }

    /// Exact product including the phase from letter reordering.
    pub fn multiply(&self, other: &Self) -> Result<Self, EncodingError> {
        let (k, string) = self.string.multiply(&other.string)?;
        Ok(Self { string, coefficient: self.coefficient * other.coefficient * i_pow(k) })
    }
}

pub(crate) fn format_coefficient(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

pub(crate) fn parse_coefficient(text: &str) -> Option<Complex64> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
    if let Some(im) = t.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = im.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        return match split {
            Some(k) => Some(Complex64::new(im[..k].parse().ok()?, im[k..].parse().ok()?)),
            None => Some(Complex64::new(0.0, im.parse().ok()?)),
        };
    }
    t.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0))
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", format_coefficient(self.coefficient), self.string)
    }
}

/// Parses the letters part, e.g. `X0 Z1 Y4` or `I`.
pub(crate) fn parse_letters(text: &str, n_qubits: usize) -> Result<PauliString, EncodingError> {
    let mut s = PauliString::identity(n_qubits);
    for token in text.split_whitespace() {
        if token == "I" {
            continue;
        }
        let mut chars = token.chars();
        let letter = match chars.next() {
            Some('X') => Pauli::X,
            Some('Y') => Pauli::Y,
            Some('Z') => Pauli::Z,
            _ => return Err(EncodingError::Syntax(format!("bad Pauli token `{token}`"))),
        };
        let q: usize = chars
            .as_str()
            .parse()
            .map_err(|_| EncodingError::Syntax(format!("bad qubit index in `{token}`")))?;
        if q >= n_qubits {
            return Err(EncodingError::IndexOutOfRange { index: q, n: n_qubits });
        }
        if s.get(q) != Pauli::I {
            return Err(EncodingError::Syntax(format!("qubit {q} repeated")));
        }
        s.set(q, letter);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_products() {
        let x = PauliTerm::new(PauliString::single(1, 0, Pauli::X), 1.0);
        let z = PauliTerm::new(PauliString::single(1, 0, Pauli::Z), 1.0);
        let xz = x.multiply(&z).unwrap();
        assert_eq!(xz.string.get(0), Pauli::Y);
        assert_eq!(xz.coefficient, Complex64::new(0.0, -1.0));
        let zz = z.multiply(&z).unwrap();
        assert!(zz.string.is_identity());
        assert_eq!(zz.coefficient, Complex64::new(1.0, 0.0));
        let y = PauliTerm::new(PauliString::single(1, 0, Pauli::Y), 1.0);
        // X·Y = iZ
        let xy = x.multiply(&y).unwrap();
        assert_eq!(xy.string.get(0), Pauli::Z);
        assert_eq!(xy.coefficient, Complex64::new(0.0, 1.0));
    }

    #[test]
    fn width_mismatch() {
        let a = PauliString::identity(2);
        let b = PauliString::identity(3);
        assert!(matches!(a.multiply(&b), Err(EncodingError::WidthMismatch(2, 3))));
    }

    #[test]
    fn wide_strings_pack_words() {
        let mut s = PauliString::identity(130);
        s.set(0, Pauli::X);
        s.set(64, Pauli::Y);
        s.set(129, Pauli::Z);
        assert_eq!(s.weight(), 3);
        assert_eq!(s.get(64), Pauli::Y);
        let (k, sq) = s.multiply(&s).unwrap();
        assert_eq!(k, 0);
        assert!(sq.is_identity());
        assert_eq!(s.to_string(), "X0 Y64 Z129");
    }

    #[test]
    fn text_format() {
        let t = PauliTerm::new(
            PauliString::from_letters(5, &[(0, Pauli::X), (1, Pauli::Z), (4, Pauli::Y)]),
            Complex64::new(0.5, -0.25),
        );
        assert_eq!(t.to_string(), "(0.5-0.25i) * X0 Z1 Y4");
        assert_eq!(parse_coefficient("(0.5-0.25i)"), Some(Complex64::new(0.5, -0.25)));
        assert_eq!(parse_coefficient("-2.5e-3i"), Some(Complex64::new(0.0, -2.5e-3)));
        assert_eq!(parse_coefficient("(1e-3+2e+1i)"), Some(Complex64::new(1e-3, 20.0)));
        assert_eq!(parse_letters("X0 Z1 Y4", 5).unwrap(), t.string);
        assert!(parse_letters("X0 X0", 5).is_err());
        assert!(parse_letters("X9", 5).is_err());
    }

    #[test]
    fn remove_qubits_compacts() {
        let s = PauliString::from_letters(4, &[(0, Pauli::X), (2, Pauli::Y), (3, Pauli::Z)]);
        let r = s.remove_qubits(&[1, 3]);
        assert_eq!(r.n_qubits(), 2);
        assert_eq!(r.to_string(), "X0 Y1");
    }
}
