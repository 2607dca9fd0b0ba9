use std::io::Write;
use std::path::Path;

use qpep::ffield::{fit_torsion, format_fit_csv, parse_scan_csv, FfError};

use crate::{read_file, CliError};

/// Writes the parameter CSV to `output` (or `out`) and the residual line to
/// `err`.
pub(crate) fn run(
    scan: &Path,
    n_max: usize,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let data = parse_scan_csv(&read_file(scan)?).map_err(|e| CliError::Input(format!("{}: {e}", scan.display())))?;
    let fit = fit_torsion(&data, n_max).map_err(|e| match e {
        FfError::RankDeficient { .. } => CliError::Domain(e.to_string()),
        other => CliError::Input(other.to_string()),
    })?;
    let csv = format_fit_csv(&fit);
    match output {
        Some(path) => std::fs::write(path, &csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    writeln!(err, "rms_residual,{:.6e},{}", fit.rms_residual, fit.unit.tag())?;
    Ok(())
}
