//! Quantum resource estimation for peptide-scale ab-initio chemistry, with a
//! desk-scale VQE pipeline that checks the machinery against exact
//! diagonalization, and a force-field torsion fitter for the resulting scans.

pub mod chemio;
pub mod encoding;
pub mod fermion;
pub mod ansatz;
pub mod sim;
pub mod synth;
pub mod taper;
pub mod vqe;
pub mod ffield;
