//! Second-quantized operators over spin orbitals.
//!
//! Spin orbitals are interleaved: spatial orbital `p` owns modes `2p` (α)
//! and `2p + 1` (β). The canonical (normal-ordered) form of a product puts
//! every creation operator to the left in descending mode order, followed by
//! the annihilation operators in ascending mode order.

mod hamiltonian;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub use hamiltonian::{build_hamiltonian, number_operator, sz_operator};

/// Coefficients with modulus below this are dropped.
pub const PRUNE_TOLERANCE: f64 = 1e-14;

/// A single creation (`dagger`) or annihilation operator on one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }

    fn adjoint(self) -> Self {
        Self { mode: self.mode, dagger: !self.dagger }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dagger {
            write!(f, "a+{}", self.mode)
        } else {
            write!(f, "a{}", self.mode)
        }
    }
}

/// Coefficient times an ordered product of ladder operators.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderTerm {
    pub factors: Vec<Ladder>,
    pub coefficient: Complex64,
}

impl LadderTerm {
    pub fn new(factors: Vec<Ladder>, coefficient: impl Into<Complex64>) -> Self {
        Self { factors, coefficient: coefficient.into() }
    }

    pub fn is_normal_ordered(&self) -> bool {
        self.factors.windows(2).all(|w| in_canonical_order(w[0], w[1]))
    }
}

/// Whether `left right` may stay adjacent in canonical form.
fn in_canonical_order(left: Ladder, right: Ladder) -> bool {
    match (left.dagger, right.dagger) {
        (true, false) => true,
        (false, true) => false,
        (true, true) => left.mode > right.mode,
        (false, false) => left.mode < right.mode,
    }
}

/// Sum of ladder products, merged on identical factor sequences.
///
/// Terms are stored as written; call [`FermionOperator::normal_order`] to get
/// a representation in which equal operators compare equal.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FermionOperator {
    terms: BTreeMap<Vec<Ladder>, Complex64>,
}

impl FermionOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(coefficient: impl Into<Complex64>) -> Self {
        Self::from_term(Vec::new(), coefficient)
    }

    pub fn from_term(factors: Vec<Ladder>, coefficient: impl Into<Complex64>) -> Self {
        let mut op = Self::zero();
        op.add_term(factors, coefficient.into());
        op
    }

    /// `a†_p a_q`.
    pub fn hopping(p: usize, q: usize) -> Self {
        Self::from_term(vec![Ladder::create(p), Ladder::annihilate(q)], 1.0)
    }

    pub fn add_term(&mut self, factors: Vec<Ladder>, coefficient: Complex64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(factors) {
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Ladder], Complex64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn coefficient(&self, factors: &[Ladder]) -> Complex64 {
        self.terms.get(factors).copied().unwrap_or_default()
    }

    /// One past the largest mode index referenced.
    pub fn n_modes(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|l| l.mode + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let factor = factor.into();
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * factor);
        }
        out
    }

    /// Hermitian adjoint: reversed products, flipped daggers, conjugated coefficients.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let factors = k.iter().rev().map(|l| l.adjoint()).collect();
            out.add_term(factors, v.conj());
        }
        out
    }

    /// Canonical form using the anticommutation relations.
    pub fn normal_order(&self) -> Self {
        let mut out = Self::zero();
        for (factors, coeff) in &self.terms {
            for (f, c) in normal_order_term(factors.clone(), *coeff) {
                out.add_term(f, c);
            }
        }
        out
    }

    pub fn is_normal_ordered(&self) -> bool {
        self.terms.keys().all(|k| k.windows(2).all(|w| in_canonical_order(w[0], w[1])))
    }

    /// `[self, other]`, normal ordered.
    pub fn commutator(&self, other: &Self) -> Self {
        (&(self * other) - &(other * self)).normal_order()
    }

    /// Whether normal ordering of `self − self†` vanishes.
    pub fn is_hermitian(&self) -> bool {
        (self - &self.adjoint()).normal_order().is_empty()
    }

    /// Largest modulus of an imaginary coefficient part.
    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }
}

/// Applies an ordered ladder product (rightmost first) to the occupation
/// bitstring `det`. Returns the new bitstring and the fermionic sign, or
/// `None` if the product annihilates the state.
pub fn apply_ladder_product(factors: &[Ladder], det: u64) -> Option<(u64, f64)> {
    let mut state = det;
    let mut sign = 1.0;
    for l in factors.iter().rev() {
        let bit = 1u64 << l.mode;
        let occupied = state & bit != 0;
        if occupied == l.dagger {
            return None;
        }
        if (state & (bit - 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        state ^= bit;
    }
    Some((state, sign))
}

fn normal_order_term(factors: Vec<Ladder>, coeff: Complex64) -> Vec<(Vec<Ladder>, Complex64)> {
    let mut done = Vec::new();
    let mut stack = vec![(factors, coeff)];
    'outer: while let Some((mut f, mut c)) = stack.pop() {
        // insertion sort; each adjacent swap flips the sign
        for i in 1..f.len() {
            let mut j = i;
            while j > 0 && !in_canonical_order(f[j - 1], f[j]) {
                let (left, right) = (f[j - 1], f[j]);
                if left.mode == right.mode {
                    if left.dagger == right.dagger {
                        // a_p a_p = a†_p a†_p = 0
                        continue 'outer;
                    }
                    // a_p a†_p = 1 − a†_p a_p
                    let mut contracted = f.clone();
                    contracted.drain(j - 1..=j);
                    stack.push((contracted, c));
                }
                f.swap(j - 1, j);
                c = -c;
                j -= 1;
            }
        }
        done.push((f, c));
    }
    done
}

impl Add for &FermionOperator {
    type Output = FermionOperator;

    fn add(self, rhs: &FermionOperator) -> FermionOperator {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), *v);
        }
        out
    }
}

impl Sub for &FermionOperator {
    type Output = FermionOperator;

    fn sub(self, rhs: &FermionOperator) -> FermionOperator {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -*v);
        }
        out
    }
}

impl Neg for &FermionOperator {
    type Output = FermionOperator;

    fn neg(self) -> FermionOperator {
        self.scale(-1.0)
    }
}

impl Mul for &FermionOperator {
    type Output = FermionOperator;

    fn mul(self, rhs: &FermionOperator) -> FermionOperator {
        let mut out = FermionOperator::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut f = ka.clone();
                f.extend_from_slice(kb);
                out.add_term(f, va * vb);
            }
        }
        out
    }
}

impl fmt::Display for FermionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "({:+}{:+}i)", v.re, v.im)?;
            for l in k {
                write!(f, " {l}")?;
            }
        }
        Ok(())
    }
}
