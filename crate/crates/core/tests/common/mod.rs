#![allow(dead_code)]

use qpep::chemio::{parse_integral_file, MolecularIntegrals};
use qpep::encoding::{jordan_wigner, QubitOperator};
use qpep::fermion::{build_hamiltonian, FermionOperator};

pub const FIXTURES: [&str; 5] =
    ["h2_sto3g_0.7414", "h2_sto3g_1.5", "heh+_sto3g_0.772", "h4_sto3g_chain", "lih_sto3g_1.595"];

/// (fixture, HF energy, FCI energy) from an independent PySCF run.
pub const REFERENCE_ENERGIES: [(&str, f64, f64); 5] = [
    ("h2_sto3g_0.7414", -1.1166843870853405, -1.137270174660903),
    ("h2_sto3g_1.5", -0.9108735545943865, -0.9981493534714101),
    ("heh+_sto3g_0.772", -2.841382489828413, -2.8510240299774203),
    ("h4_sto3g_chain", -2.098545936997718, -2.1663874486347625),
    ("lih_sto3g_1.595", -7.8620238601271195, -7.882401932290224),
];

/// LiH with one frozen core orbital, CASCI(2e, 5o) from the same run.
pub const LIH_FROZEN_CORE_FCI: f64 = -7.882174505767287;

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/tests/data/{name}.fcidump", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn load(name: &str) -> MolecularIntegrals {
    parse_integral_file(&fixture_text(name)).unwrap()
}

pub struct Problem {
    pub integrals: MolecularIntegrals,
    pub fermion: FermionOperator,
    pub qubit: QubitOperator,
}

impl Problem {
    pub fn new(name: &str, n_core: usize) -> Self {
        let full = load(name);
        let integrals = if n_core > 0 { full.freeze_core(n_core).unwrap() } else { full };
        let fermion = build_hamiltonian(&integrals);
        let qubit = jordan_wigner(&fermion, integrals.n_spin_orbitals()).unwrap();
        Self { integrals, fermion, qubit }
    }

    pub fn modes(&self) -> usize {
        self.integrals.n_spin_orbitals()
    }

    pub fn electrons(&self) -> usize {
        self.integrals.n_electrons
    }

    pub fn reference(&self) -> Vec<bool> {
        (0..self.modes()).map(|m| m < self.electrons()).collect()
    }
}
