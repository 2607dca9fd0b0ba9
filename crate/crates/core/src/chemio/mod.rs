//! Integral-file ingestion, basis-set function counting and active-space
//! accounting.
//!
//! Integrals are stored in chemists' notation `(pq|rs)` over real spatial
//! orbitals; every consumer in the crate reads them through
//! [`MolecularIntegrals::v`].

mod basis;
mod fcidump;
mod formula;
mod integrals;
mod roster;

use thiserror::Error;

pub use basis::{
    count_active_qubits, count_qubits, valence_shell, BasisCatalog, BasisCatalogEntry,
    ValenceShell, CATALOG_VERSION,
};
pub use fcidump::{parse_integral_file, serialize_integral_file, DUPLICATE_TOLERANCE};
pub use formula::{atomic_number, MolecularFormula};
pub use integrals::{permutation_images, MolecularIntegrals};
pub use roster::{dipeptide, format_roster, homodipeptide_roster, parse_roster, RosterEntry, AMINO_ACIDS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChemioError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("integrity error at line {line}: {message}")]
    Integrity { line: usize, message: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("element {element} not in catalog for basis {basis}")]
    Catalog { element: String, basis: String },
    #[error("unknown basis set `{0}`")]
    UnknownBasis(String),
    #[error("invalid formula: {0}")]
    Formula(String),
}

/// Frozen-core reduction; see [`MolecularIntegrals::freeze_core`].
pub fn active_space_reduce(
    ints: &MolecularIntegrals,
    n_core: usize,
) -> Result<MolecularIntegrals, ChemioError> {
    ints.freeze_core(n_core)
}
