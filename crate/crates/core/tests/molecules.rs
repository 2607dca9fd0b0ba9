mod common;

use common::{Problem, FIXTURES, LIH_FROZEN_CORE_FCI, REFERENCE_ENERGIES};
use qpep::ansatz::{build_kupccgsd, build_uccsd, TrotterPlan};
use qpep::encoding::QubitOperator;
use qpep::fermion::{number_operator, sz_operator};
use qpep::sim::{StateVector, DEFAULT_MAX_QUBITS};
use qpep::taper::{find_z2_symmetries, taper, taper_problem, TaperingFrame};
use qpep::vqe::{
    dense_ground_energy, dense_spectrum, fci_ground_energy, fci_ground_energy_in_sector, run_vqe,
    run_vqe_with_plan, EnergyFunction, InitialParameters, Optimizer, VqeConfig,
};

const CHEMICAL_ACCURACY: f64 = 1.6e-3;

fn hf_energy(p: &Problem) -> f64 {
    StateVector::prepare_reference(&p.reference(), DEFAULT_MAX_QUBITS).unwrap().expectation(&p.qubit).unwrap()
}

#[test]
fn hartree_fock_and_fci_match_reference_values() {
    for (name, hf, fci) in REFERENCE_ENERGIES {
        let p = Problem::new(name, 0);
        assert!((hf_energy(&p) - hf).abs() < 1e-9, "{name} HF {}", hf_energy(&p));
        let e = fci_ground_energy(&p.fermion, p.modes(), p.electrons()).unwrap();
        assert!((e - fci).abs() < 1e-9, "{name} FCI {e} vs {fci}");
        assert!(e <= hf_energy(&p) + 1e-12, "{name}");
    }
}

#[test]
fn h2_fci_near_literature_value() {
    let p = Problem::new("h2_sto3g_0.7414", 0);
    let e = fci_ground_energy(&p.fermion, 4, 2).unwrap();
    assert!((e + 1.1373).abs() < 1e-3);
}

#[test]
fn fci_agrees_with_qubit_diagonalization() {
    // The particle-number sector ground state of the JW matrix; the full
    // 2^n minimum may sit in a different sector, so restrict it by hand.
    for name in ["h2_sto3g_0.7414", "heh+_sto3g_0.772", "h4_sto3g_chain"] {
        let p = Problem::new(name, 0);
        let n = p.modes();
        let matrix = p.qubit.to_matrix();
        let basis: Vec<usize> = (0..1usize << n).filter(|b| b.count_ones() as usize == p.electrons()).collect();
        let sub = nalgebra::DMatrix::from_fn(basis.len(), basis.len(), |i, j| matrix[(basis[i], basis[j])]);
        let qubit_min = sub.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        let fci = fci_ground_energy(&p.fermion, n, p.electrons()).unwrap();
        assert!((qubit_min - fci).abs() < 1e-10, "{name}: {qubit_min} vs {fci}");
    }
}

#[test]
fn frozen_core_lih() {
    let p = Problem::new("lih_sto3g_1.595", 1);
    assert_eq!((p.modes(), p.electrons()), (10, 2));
    let e = fci_ground_energy(&p.fermion, 10, 2).unwrap();
    assert!((e - LIH_FROZEN_CORE_FCI).abs() < 1e-9, "{e}");
    // singlet sector holds the ground state
    let singlet = fci_ground_energy_in_sector(&p.fermion, 10, 2, Some(0)).unwrap();
    assert!((singlet - e).abs() < 1e-10);
}

#[test]
fn hamiltonians_conserve_number_and_spin() {
    for name in FIXTURES {
        let p = Problem::new(name, 0);
        let m = p.modes();
        for sym in [number_operator(m), sz_operator(m)] {
            assert!(p.fermion.commutator(&sym).normal_order().terms().all(|(_, c)| c.norm() < 1e-10), "{name}");
        }
        assert!(p.qubit.is_hermitian(1e-12), "{name}");
    }
}

#[test]
fn every_molecule_has_two_symmetries_and_h2_three() {
    for name in FIXTURES {
        let p = Problem::new(name, 0);
        let gens = find_z2_symmetries(&p.qubit);
        assert!(gens.len() >= 2, "{name}: {}", gens.len());
        for g in &gens {
            assert!(p.qubit.terms().all(|(s, _)| s.commutes_with(&g.pauli)), "{name}: {g}");
        }
        for (i, a) in gens.iter().enumerate() {
            assert!(gens[i + 1..].iter().all(|b| b.pauli.commutes_with(&a.pauli)));
        }
    }
    for name in ["h2_sto3g_0.7414", "h2_sto3g_1.5"] {
        assert!(find_z2_symmetries(&Problem::new(name, 0).qubit).len() >= 3, "{name}");
    }
}

fn all_sectors(k: usize) -> Vec<Vec<i8>> {
    (0..1u32 << k).map(|mask| (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

#[test]
fn sector_spectra_partition_the_full_spectrum() {
    for name in ["h2_sto3g_0.7414", "heh+_sto3g_0.772"] {
        let p = Problem::new(name, 0);
        let gens = find_z2_symmetries(&p.qubit);
        let mut union: Vec<f64> = all_sectors(gens.len())
            .iter()
            .flat_map(|s| dense_spectrum(&taper(&p.qubit, &gens, s).unwrap()))
            .collect();
        union.sort_by(f64::total_cmp);
        let full = dense_spectrum(&p.qubit);
        assert_eq!(union.len(), full.len());
        for (a, b) in union.iter().zip(&full) {
            assert!((a - b).abs() < 1e-10, "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn tapered_ground_energy_in_the_reference_sector() {
    for (name, n_core) in [("h2_sto3g_0.7414", 0), ("h2_sto3g_1.5", 0), ("heh+_sto3g_0.772", 0)] {
        let p = Problem::new(name, n_core);
        let gens = find_z2_symmetries(&p.qubit);
        let frame = TaperingFrame::new(&p.qubit, &gens).unwrap();
        let sector = frame.best_sector_by_reference(&p.qubit, &p.reference(), DEFAULT_MAX_QUBITS).unwrap();
        let (_, hf_sector) = frame.taper_reference(&p.reference()).unwrap();
        assert_eq!(sector, hf_sector, "{name}");
        let tapered = taper(&p.qubit, &gens, &sector).unwrap();
        assert_eq!(tapered.n_qubits(), p.modes() - gens.len());
        let fci = fci_ground_energy(&p.fermion, p.modes(), p.electrons()).unwrap();
        assert!((dense_ground_energy(&tapered) - fci).abs() < 1e-10, "{name}");
    }
}

#[test]
fn other_h2_sectors_lie_higher() {
    // Not true in general: for HeH+ a sector with a different electron count
    // lies below the physical one.
    let p = Problem::new("h2_sto3g_0.7414", 0);
    let gens = find_z2_symmetries(&p.qubit);
    let fci = fci_ground_energy(&p.fermion, 4, 2).unwrap();
    let sectors = all_sectors(gens.len());
    assert_eq!(sectors.len(), 8);
    for s in sectors {
        let e = dense_ground_energy(&taper(&p.qubit, &gens, &s).unwrap());
        assert!(e >= fci - 1e-10, "{s:?}: {e}");
    }
}

#[test]
fn h2_tapers_to_one_qubit() {
    let p = Problem::new("h2_sto3g_0.7414", 0);
    let gens = find_z2_symmetries(&p.qubit);
    assert_eq!(gens.len(), 3);
    let t = taper_problem(&p.qubit, &TrotterPlan::new(&build_uccsd(4, 2).unwrap()).unwrap(), &p.reference(), 24).unwrap();
    assert_eq!(t.hamiltonian.n_qubits(), 1);
    // tapered reference keeps the HF energy
    let e = StateVector::prepare_reference(&t.reference, 24).unwrap().expectation(&t.hamiltonian).unwrap();
    assert!((e - hf_energy(&p)).abs() < 1e-12);
}

fn vqe_error(p: &Problem, spec_energy: f64) -> f64 {
    spec_energy - fci_ground_energy(&p.fermion, p.modes(), p.electrons()).unwrap()
}

#[test]
fn h2_uccsd_reaches_chemical_accuracy() {
    for name in ["h2_sto3g_0.7414", "h2_sto3g_1.5"] {
        let p = Problem::new(name, 0);
        let r = run_vqe(&p.qubit, &build_uccsd(4, 2).unwrap(), &VqeConfig::default()).unwrap();
        let err = vqe_error(&p, r.energy);
        assert!((-1e-9..=CHEMICAL_ACCURACY).contains(&err), "{name}: {err}");
        assert!(r.converged);
    }
}

#[test]
fn h2_kupccgsd_reaches_chemical_accuracy() {
    let p = Problem::new("h2_sto3g_0.7414", 0);
    let r = run_vqe(&p.qubit, &build_kupccgsd(4, 2, 1).unwrap(), &VqeConfig::default()).unwrap();
    let err = vqe_error(&p, r.energy);
    assert!((-1e-9..=CHEMICAL_ACCURACY).contains(&err), "{err}");
}

#[test]
fn spsa_runs_are_seeded() {
    let p = Problem::new("h2_sto3g_0.7414", 0);
    let spec = build_uccsd(4, 2).unwrap();
    let cfg = VqeConfig {
        optimizer: Optimizer::Spsa,
        max_iterations: 300,
        initial: InitialParameters::Perturbed(0.05),
        seed: 11,
        restarts: 0,
        ..VqeConfig::default()
    };
    let a = run_vqe(&p.qubit, &spec, &cfg).unwrap();
    let b = run_vqe(&p.qubit, &spec, &cfg).unwrap();
    assert_eq!(a.trace.iter().map(|e| e.to_bits()).collect::<Vec<_>>(), b.trace.iter().map(|e| e.to_bits()).collect::<Vec<_>>());
    assert_eq!(a.parameters, b.parameters);
    let c = run_vqe(&p.qubit, &spec, &VqeConfig { seed: 12, ..cfg }).unwrap();
    assert_ne!(a.trace, c.trace);
    assert!(a.energy < hf_energy(&p));
}

#[test]
fn nelder_mead_trace_is_monotone_and_deterministic() {
    let p = Problem::new("heh+_sto3g_0.772", 0);
    let spec = build_uccsd(4, 2).unwrap();
    let cfg = VqeConfig { initial: InitialParameters::Perturbed(0.1), seed: 3, ..VqeConfig::default() };
    let a = run_vqe(&p.qubit, &spec, &cfg).unwrap();
    let b = run_vqe(&p.qubit, &spec, &cfg).unwrap();
    assert_eq!(a, b);
    assert!(a.trace.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(*a.trace.last().unwrap(), a.energy);
}

#[test]
fn zero_parameters_give_the_hartree_fock_energy() {
    for name in FIXTURES {
        let p = Problem::new(name, 0);
        let spec = build_uccsd(p.modes(), p.electrons()).unwrap();
        let plan = TrotterPlan::new(&spec).unwrap();
        let f = EnergyFunction::new(&p.qubit, &plan, &spec.reference(), DEFAULT_MAX_QUBITS).unwrap();
        let e = f.energy(&vec![0.0; spec.parameter_count()]).unwrap();
        assert!((e - hf_energy(&p)).abs() < 1e-10, "{name}");
    }
}

#[test]
fn ansatz_energies_are_variational() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for name in ["h2_sto3g_1.5", "h4_sto3g_chain"] {
        let p = Problem::new(name, 0);
        let fci = fci_ground_energy(&p.fermion, p.modes(), p.electrons()).unwrap();
        for spec in [build_uccsd(p.modes(), p.electrons()).unwrap(), build_kupccgsd(p.modes(), p.electrons(), 2).unwrap()] {
            let plan = TrotterPlan::new(&spec).unwrap();
            let f = EnergyFunction::new(&p.qubit, &plan, &spec.reference(), DEFAULT_MAX_QUBITS).unwrap();
            for _ in 0..20 {
                let t: Vec<f64> = (0..spec.parameter_count()).map(|_| rng.random_range(-1.0..1.0)).collect();
                assert!(f.energy(&t).unwrap() >= fci - 1e-9, "{name}");
            }
        }
    }
}

#[test]
fn lih_frozen_core_tapered_vqe() {
    let p = Problem::new("lih_sto3g_1.595", 1);
    let spec = build_uccsd(p.modes(), p.electrons()).unwrap();
    let plan = TrotterPlan::new(&spec).unwrap();
    let t = taper_problem(&p.qubit, &plan, &spec.reference(), DEFAULT_MAX_QUBITS).unwrap();
    assert!(t.hamiltonian.n_qubits() <= p.modes() - 2);
    let r = run_vqe_with_plan(&t.hamiltonian, &t.plan, &t.reference, &VqeConfig::default()).unwrap();
    let full_fci = REFERENCE_ENERGIES[4].2;
    assert!((r.energy - full_fci).abs() <= 5e-3, "{}", r.energy - full_fci);
    assert!(r.energy >= LIH_FROZEN_CORE_FCI - 1e-9);
}

#[test]
fn identity_only_hamiltonian_needs_no_optimization() {
    let h = QubitOperator::identity(4, 0.25);
    let r = run_vqe(&h, &build_kupccgsd(4, 2, 1).unwrap(), &VqeConfig::default()).unwrap();
    assert_eq!(r.energy, 0.25);
}
