use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qpep::ansatz::{build_kupccgsd, build_uccsd};
use qpep::chemio::{count_active_qubits, count_qubits, homodipeptide_roster, parse_roster, BasisCatalog, RosterEntry};
use qpep::synth::{count_two_qubit_gates, estimate_kupccgsd_depth, GateCountMode};

use crate::{read_file, CliError, Format};

/// Bumped whenever a column is added, removed or renamed.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub formula: String,
    pub basis: String,
    /// `active` when only valence orbitals are counted, else `full`.
    pub space: String,
    pub qubits: u64,
    pub electrons: u64,
    pub ansatz: String,
    pub naive: u64,
    pub optimized: u64,
    pub kupccgsd: u64,
    pub depth: u64,
}

const CSV_HEADER: &str = "label,formula,basis,space,qubits,electrons,ansatz,naive,optimized,kupccgsd,depth";

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    rows: &'a [ReportRow],
}

fn report_row(entry: &RosterEntry, row_no: usize, catalog: &BasisCatalog, basis: &str, active: bool, k: usize) -> Result<ReportRow, CliError> {
    let name = format!("row {row_no} ({})", entry.label);
    let (qubits, electrons) = if active {
        count_active_qubits(&entry.formula).map_err(|e| CliError::Input(format!("{name}: {e}")))?
    } else {
        let b = catalog.get(basis).map_err(|e| CliError::Input(e.to_string()))?;
        let m = count_qubits(&entry.formula, b).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
        (m, entry.formula.electron_count())
    };
    let (m, eta) = (qubits as usize, electrons as usize);
    let domain = |e: &dyn std::fmt::Display| CliError::Domain(format!("{name}: {e}"));
    let uccsd = build_uccsd(m, eta).map_err(|e| domain(&e))?;
    let kup = build_kupccgsd(m, eta, k).map_err(|e| domain(&e))?;
    let depth = estimate_kupccgsd_depth(m, k).map_err(|e| domain(&e))?;
    Ok(ReportRow {
        label: entry.label.clone(),
        formula: entry.formula.to_string(),
        basis: basis.to_string(),
        space: if active { "active" } else { "full" }.to_string(),
        qubits: u64::from(qubits),
        electrons: u64::from(electrons),
        ansatz: "uccsd".to_string(),
        naive: count_two_qubit_gates(&uccsd, GateCountMode::Naive),
        optimized: count_two_qubit_gates(&uccsd, GateCountMode::Optimized),
        kupccgsd: count_two_qubit_gates(&kup, GateCountMode::Optimized),
        depth: depth.depth as u64,
    })
}

/// One row per roster entry, in roster order. Rows are computed on a small
/// worker pool.
pub fn build_report(
    roster: &[RosterEntry],
    catalog: &BasisCatalog,
    basis: &str,
    active: bool,
    k: usize,
) -> Result<Vec<ReportRow>, CliError> {
    catalog.get(basis).map_err(|e| CliError::Input(e.to_string()))?;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(roster.len().max(1));
    let chunk = roster.len().div_ceil(workers).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = roster
            .chunks(chunk)
            .enumerate()
            .map(|(c, entries)| {
                scope.spawn(move || {
                    entries
                        .iter()
                        .enumerate()
                        .map(|(i, e)| report_row(e, c * chunk + i + 1, catalog, basis, active, k))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("report worker panicked")).collect()
    })
}

fn write_csv(rows: &[ReportRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.label, r.formula, r.basis, r.space, r.qubits, r.electrons, r.ansatz, r.naive, r.optimized, r.kupccgsd, r.depth
        )?;
    }
    Ok(())
}

pub(crate) fn run(
    roster: Option<&Path>,
    basis: &str,
    overrides: Option<&Path>,
    active: bool,
    format: Format,
    k: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let entries = match roster {
        Some(path) => parse_roster(&read_file(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => homodipeptide_roster(),
    };
    let mut catalog = BasisCatalog::builtin();
    if let Some(path) = overrides {
        catalog
            .apply_overrides(&read_file(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let rows = build_report(&entries, &catalog, basis, active, k)?;
    match format {
        Format::Csv => write_csv(&rows, out)?,
        Format::Json => {
            let report = JsonReport { schema_version: REPORT_SCHEMA_VERSION, rows: &rows };
            serde_json::to_writer_pretty(&mut *out, &report).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
