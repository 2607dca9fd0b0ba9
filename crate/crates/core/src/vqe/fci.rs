//! Exact diagonalization in a fixed-particle-number determinant basis.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::encoding::QubitOperator;
use crate::fermion::{apply_ladder_product, FermionOperator};

use super::VqeError;

/// Largest determinant space the oracle accepts.
pub const MAX_FCI_DIMENSION: u64 = 1_000_000;

/// Spaces up to this size are diagonalized densely; larger ones by Lanczos.
const DENSE_LIMIT: usize = 1500;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let c = (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1));
    u64::try_from(c).unwrap_or(u64::MAX)
}

/// All `n_modes`-bit strings with `n_electrons` set bits and, if given,
/// `n_alpha − n_beta = ms2` (even modes are alpha).
fn determinants(n_modes: usize, n_electrons: usize, ms2: Option<i32>) -> Vec<u64> {
    let mut dets = Vec::new();
    if n_electrons == 0 {
        dets.push(0);
    } else {
        // Gosper's hack
        let limit = 1u64 << n_modes;
        let mut v = (1u64 << n_electrons) - 1;
        while v < limit {
            dets.push(v);
            let t = v | (v - 1);
            v = (t + 1) | (((!t & (!t).wrapping_neg()) - 1) >> (v.trailing_zeros() + 1));
        }
    }
    if let Some(ms2) = ms2 {
        let alpha_mask = (0..n_modes).step_by(2).fold(0u64, |m, i| m | 1 << i);
        dets.retain(|d| {
            let a = (d & alpha_mask).count_ones() as i32;
            let b = (d & !alpha_mask).count_ones() as i32;
            a - b == ms2
        });
    }
    dets
}

/// Sparse Hermitian matrix of `op` on the determinant list, column-wise.
fn build_columns(op: &FermionOperator, dets: &[u64]) -> Vec<Vec<(usize, Complex64)>> {
    let index: HashMap<u64, usize> = dets.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let terms: Vec<(&[crate::fermion::Ladder], Complex64)> = op.terms().collect();
    dets.iter()
        .map(|&det| {
            let mut col: HashMap<usize, Complex64> = HashMap::new();
            for (factors, c) in &terms {
                if let Some((out, sign)) = apply_ladder_product(factors, det) {
                    if let Some(&row) = index.get(&out) {
                        *col.entry(row).or_default() += c * sign;
                    }
                }
            }
            let mut col: Vec<(usize, Complex64)> = col.into_iter().filter(|(_, v)| v.norm() > 0.0).collect();
            col.sort_by_key(|&(r, _)| r);
            col
        })
        .collect()
}

/// Lowest eigenvalue of `op` restricted to `n_electrons` particles in
/// `n_modes` modes, optionally within the `S_z = ms2/2` sector.
pub fn fci_ground_energy_in_sector(
    op: &FermionOperator,
    n_modes: usize,
    n_electrons: usize,
    ms2: Option<i32>,
) -> Result<f64, VqeError> {
    if n_electrons > n_modes || n_modes > 63 || op.n_modes() > n_modes {
        return Err(VqeError::InvalidProblem(format!(
            "{n_electrons} electrons in {n_modes} modes (operator touches {} modes)",
            op.n_modes()
        )));
    }
    let dim = binomial(n_modes as u64, n_electrons as u64);
    if dim > MAX_FCI_DIMENSION {
        return Err(VqeError::BasisTooLarge { dimension: dim, limit: MAX_FCI_DIMENSION });
    }
    let dets = determinants(n_modes, n_electrons, ms2);
    if dets.is_empty() {
        return Err(VqeError::InvalidProblem(format!("empty sector ms2={ms2:?}")));
    }
    let columns = build_columns(op, &dets);
    if dets.len() <= DENSE_LIMIT {
        let n = dets.len();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for (j, col) in columns.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] = v;
            }
        }
        return Ok(lowest_eigenvalue_dense(m));
    }
    Ok(lanczos_lowest(&columns))
}

/// Lowest eigenvalue of `op` with exactly `n_electrons` particles.
pub fn fci_ground_energy(op: &FermionOperator, n_modes: usize, n_electrons: usize) -> Result<f64, VqeError> {
    fci_ground_energy_in_sector(op, n_modes, n_electrons, None)
}

/// Lowest eigenvalue of a qubit operator by dense diagonalization over the
/// full `2^n` space (at most 14 qubits).
pub fn dense_ground_energy(op: &QubitOperator) -> f64 {
    lowest_eigenvalue_dense(op.to_matrix())
}

/// Full sorted spectrum of a qubit operator (at most 14 qubits).
pub fn dense_spectrum(op: &QubitOperator) -> Vec<f64> {
    let mut values: Vec<f64> = op.to_matrix().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

fn lowest_eigenvalue_dense(m: DMatrix<Complex64>) -> f64 {
    m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

fn matvec(columns: &[Vec<(usize, Complex64)>], v: &DVector<Complex64>) -> DVector<Complex64> {
    let mut out = DVector::zeros(v.len());
    for (j, col) in columns.iter().enumerate() {
        let vj = v[j];
        if vj.norm_sqr() == 0.0 {
            continue;
        }
        for &(i, a) in col {
            out[i] += a * vj;
        }
    }
    out
}

/// Lanczos with full reorthogonalization, started from a deterministic
/// vector with weight on every basis state.
fn lanczos_lowest(columns: &[Vec<(usize, Complex64)>]) -> f64 {
    let n = columns.len();
    let max_steps = n.min(400);
    let mut start = DVector::from_fn(n, |i, _| Complex64::new(1.0 + (i % 7) as f64 * 0.1, 0.0));
    start /= Complex64::new(start.norm(), 0.0);
    let mut basis: Vec<DVector<Complex64>> = vec![start];
    let (mut alphas, mut betas) = (Vec::new(), Vec::new());
    let mut previous = f64::INFINITY;
    for step in 0..max_steps {
        let mut w = matvec(columns, &basis[step]);
        let alpha = basis[step].dotc(&w).re;
        alphas.push(alpha);
        for b in &basis {
            let overlap = b.dotc(&w);
            w -= b * overlap;
        }
        let beta = w.norm();
        let ritz = tridiagonal_lowest(&alphas, &betas);
        if (previous - ritz).abs() < 1e-12 * (1.0 + ritz.abs()) || beta < 1e-12 {
            return ritz;
        }
        previous = ritz;
        betas.push(beta);
        basis.push(w / Complex64::new(beta, 0.0));
    }
    previous
}

fn tridiagonal_lowest(alphas: &[f64], betas: &[f64]) -> f64 {
    let k = alphas.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    t.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::Ladder;

    #[test]
    fn single_level_filled() {
        // h00 = −1 on both spins
        let mut op = FermionOperator::zero();
        for m in 0..2 {
            op.add_term(vec![Ladder::create(m), Ladder::annihilate(m)], Complex64::new(-1.0, 0.0));
        }
        assert!((fci_ground_energy(&op, 2, 2).unwrap() + 2.0).abs() < 1e-14);
    }

    #[test]
    fn determinant_enumeration() {
        assert_eq!(determinants(6, 3, None).len(), 20);
        assert_eq!(determinants(4, 2, Some(0)).len(), 4);
        assert_eq!(determinants(4, 0, None), vec![0]);
        assert_eq!(determinants(4, 4, None), vec![0b1111]);
    }

    #[test]
    fn oversized_basis_rejected() {
        let op = FermionOperator::identity(1.0);
        assert!(matches!(fci_ground_energy(&op, 40, 20), Err(VqeError::BasisTooLarge { .. })));
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        // tight-binding ring on 12 modes, 6 particles: C(12,6) = 924
        let mut op = FermionOperator::zero();
        for p in 0..12 {
            let q = (p + 1) % 12;
            op = &op + &FermionOperator::hopping(p, q).scale(-1.0);
            op = &op + &FermionOperator::hopping(q, p).scale(-1.0);
            op.add_term(
                vec![Ladder::create(p), Ladder::annihilate(p), Ladder::create(q), Ladder::annihilate(q)],
                Complex64::new(0.3, 0.0),
            );
        }
        let dets = determinants(12, 6, None);
        let columns = build_columns(&op, &dets);
        let dense = fci_ground_energy(&op, 12, 6).unwrap();
        let iterative = lanczos_lowest(&columns);
        assert!((dense - iterative).abs() < 1e-9, "{dense} vs {iterative}");
    }
}
