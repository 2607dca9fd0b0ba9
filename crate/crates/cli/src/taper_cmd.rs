use std::io::Write;
use std::path::Path;

use qpep::chemio::parse_integral_file;
use qpep::encoding::{jordan_wigner, QubitOperator};
use qpep::fermion::build_hamiltonian;
use qpep::taper::{find_z2_symmetries, TaperingFrame};

use crate::{read_file, CliError};

fn parse_sector(text: &str) -> Result<Vec<i8>, CliError> {
    text.split(',')
        .map(|s| match s.trim() {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(CliError::Usage(format!("sector values must be +1 or -1, got '{other}'"))),
        })
        .collect()
}

/// Prints the generators and chosen sector as comments, then the tapered
/// operator in Pauli text form.
pub(crate) fn run(
    path: &Path,
    pauli: bool,
    n_core: usize,
    sector: Option<&str>,
    electrons: Option<usize>,
    max_qubits: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let text = read_file(path)?;
    let input = |e: &dyn std::fmt::Display| CliError::Input(format!("{}: {e}", path.display()));
    let domain = |e: &dyn std::fmt::Display| CliError::Domain(e.to_string());
    let (op, n_electrons) = if pauli {
        let op: QubitOperator = text.parse().map_err(|e| input(&e))?;
        (op, electrons)
    } else {
        let full = parse_integral_file(&text).map_err(|e| input(&e))?;
        let ints = if n_core > 0 { full.freeze_core(n_core).map_err(|e| domain(&e))? } else { full };
        let m = ints.n_spin_orbitals();
        let op = jordan_wigner(&build_hamiltonian(&ints), m).map_err(|e| domain(&e))?;
        (op, Some(ints.n_electrons))
    };
    let n = op.n_qubits();
    if !op.is_hermitian(1e-10) {
        return Err(CliError::Input(format!("{}: operator is not Hermitian", path.display())));
    }
    let gens = find_z2_symmetries(&op);
    let frame = TaperingFrame::new(&op, &gens).map_err(|e| domain(&e))?;
    let sector = match sector {
        Some(s) => parse_sector(s)?,
        None => {
            let eta = n_electrons.ok_or_else(|| {
                CliError::Usage("--electrons or --sector is required for Pauli input".into())
            })?;
            if eta > n {
                return Err(CliError::Domain(format!("{eta} electrons on {n} qubits")));
            }
            if n > max_qubits {
                return Err(CliError::Domain(format!(
                    "sector scoring needs {} qubits but the simulator cap is {max_qubits}; pass --sector",
                    n - gens.len()
                )));
            }
            let reference: Vec<bool> = (0..n).map(|q| q < eta).collect();
            frame.best_sector_by_reference(&op, &reference, max_qubits).map_err(|e| domain(&e))?
        }
    };
    let tapered = frame.taper_operator(&op, &sector).map_err(|e| domain(&e))?;
    writeln!(out, "# original qubits: {n}")?;
    for (g, s) in gens.iter().zip(&sector) {
        writeln!(out, "# generator: {g} sector: {s:+}")?;
    }
    write!(out, "{tapered}")?;
    Ok(())
}
