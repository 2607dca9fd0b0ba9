use super::{ChemioError, MolecularFormula};

/// Neutral amino-acid formulas by three-letter code.
pub const AMINO_ACIDS: [(&str, &str); 20] = [
    ("Gly", "C2H5NO2"),
    ("Ala", "C3H7NO2"),
    ("Ser", "C3H7NO3"),
    ("Pro", "C5H9NO2"),
    ("Val", "C5H11NO2"),
    ("Thr", "C4H9NO3"),
    ("Cys", "C3H7NO2S"),
    ("Leu", "C6H13NO2"),
    ("Ile", "C6H13NO2"),
    ("Asn", "C4H8N2O3"),
    ("Asp", "C4H7NO4"),
    ("Gln", "C5H10N2O3"),
    ("Lys", "C6H14N2O2"),
    ("Glu", "C5H9NO4"),
    ("Met", "C5H11NO2S"),
    ("His", "C6H9N3O2"),
    ("Phe", "C9H11NO2"),
    ("Arg", "C6H14N4O2"),
    ("Tyr", "C9H11NO3"),
    ("Trp", "C11H12N2O2"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RosterEntry {
    pub label: String,
    pub formula: MolecularFormula,
}

/// Condensation product of two residues: `a + b − H2O`.
pub fn dipeptide(a: &MolecularFormula, b: &MolecularFormula) -> MolecularFormula {
    let water = MolecularFormula::from_counts([("H", 2), ("O", 1)]).expect("water");
    a.combine(b).remove(&water).expect("amino acids carry at least one water")
}

/// The 20 homodipeptides Xaa-Xaa.
pub fn homodipeptide_roster() -> Vec<RosterEntry> {
    AMINO_ACIDS
        .iter()
        .map(|(code, formula)| {
            let aa: MolecularFormula = formula.parse().expect("built-in formula");
            RosterEntry { label: format!("{code}-{code}"), formula: dipeptide(&aa, &aa) }
        })
        .collect()
}

/// Text form of a roster, one `label formula` per line.
pub fn format_roster(entries: &[RosterEntry]) -> String {
    entries.iter().map(|e| format!("{} {}\n", e.label, e.formula)).collect()
}

/// Parses `label formula` lines; blank lines and `#` comments are skipped.
pub fn parse_roster(text: &str) -> Result<Vec<RosterEntry>, ChemioError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ChemioError::Parse {
                line: idx + 1,
                message: format!("expected `label formula`, got `{line}`"),
            });
        }
        let formula = fields[1].parse().map_err(|e: ChemioError| ChemioError::Parse {
            line: idx + 1,
            message: format!("row `{}`: {e}", fields[0]),
        })?;
        out.push(RosterEntry { label: fields[0].to_string(), formula });
    }
    Ok(out)
}
