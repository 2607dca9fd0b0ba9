use num_complex::Complex64;

use super::{FermionOperator, Ladder};
use crate::chemio::MolecularIntegrals;

/// Spin-orbital Hamiltonian of the integrals, normal ordered.
///
/// `H = E_core + Σ h_pq a†_pσ a_qσ + ½ Σ (pq|rs) a†_pσ a†_rτ a_sτ a_qσ`
/// over `2·M_spatial` interleaved modes.
pub fn build_hamiltonian(ints: &MolecularIntegrals) -> FermionOperator {
    let n = ints.n_orbitals();
    let mode = |p: usize, spin: usize| 2 * p + spin;
    let mut op = FermionOperator::identity(ints.core_energy);

    for p in 0..n {
        for q in 0..n {
            let h = ints.h(p, q);
            if h == 0.0 {
                continue;
            }
            for s in 0..2 {
                op.add_term(
                    vec![Ladder::create(mode(p, s)), Ladder::annihilate(mode(q, s))],
                    Complex64::new(h, 0.0),
                );
            }
        }
    }

    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = ints.v(p, q, r, s);
                    if v == 0.0 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (a, b) = (mode(p, sigma), mode(r, tau));
                            let (c, d) = (mode(s, tau), mode(q, sigma));
                            if a == b || c == d {
                                continue;
                            }
                            op.add_term(
                                vec![
                                    Ladder::create(a),
                                    Ladder::create(b),
                                    Ladder::annihilate(c),
                                    Ladder::annihilate(d),
                                ],
                                Complex64::new(0.5 * v, 0.0),
                            );
                        }
                    }
                }
            }
        }
    }
    op.normal_order()
}

/// `N = Σ a†_i a_i` over `n_modes` modes.
pub fn number_operator(n_modes: usize) -> FermionOperator {
    let mut op = FermionOperator::zero();
    for i in 0..n_modes {
        op.add_term(vec![Ladder::create(i), Ladder::annihilate(i)], Complex64::new(1.0, 0.0));
    }
    op
}

/// `S_z` with even modes α (+½) and odd modes β (−½).
pub fn sz_operator(n_modes: usize) -> FermionOperator {
    let mut op = FermionOperator::zero();
    for i in 0..n_modes {
        let s = if i % 2 == 0 { 0.5 } else { -0.5 };
        op.add_term(vec![Ladder::create(i), Ladder::annihilate(i)], Complex64::new(s, 0.0));
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_orbital_kinetic_only() {
        let mut ints = MolecularIntegrals::zeros(1, 2).unwrap();
        ints.set_h(0, 0, -1.0);
        let h = build_hamiltonian(&ints);
        let expected = &FermionOperator::hopping(0, 0).scale(-1.0) + &FermionOperator::hopping(1, 1).scale(-1.0);
        assert_eq!(h, expected);
    }

    #[test]
    fn one_orbital_coulomb_term() {
        let u = 0.7;
        let mut ints = MolecularIntegrals::zeros(1, 2).unwrap();
        ints.set_v(0, 0, 0, 0, u);
        let h = build_hamiltonian(&ints);
        let expected = FermionOperator::from_term(
            vec![Ladder::create(0), Ladder::create(1), Ladder::annihilate(1), Ladder::annihilate(0)],
            u,
        )
        .normal_order();
        assert_eq!(h.len(), 1);
        assert!((h.coefficient(expected.terms().next().unwrap().0) - Complex64::new(u, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn core_energy_is_identity_term() {
        let mut ints = MolecularIntegrals::zeros(2, 2).unwrap();
        ints.core_energy = 0.71;
        let h = build_hamiltonian(&ints);
        assert_eq!(h.coefficient(&[]), Complex64::new(0.71, 0.0));
    }
}
