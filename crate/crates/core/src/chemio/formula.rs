use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::ChemioError;

/// Element symbols accepted in formulas (H through Kr).
const KNOWN_ELEMENTS: [&str; 36] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr",
];

/// Nuclear charge of a known element symbol; `KNOWN_ELEMENTS` is in
/// periodic-table order.
pub fn atomic_number(element: &str) -> u32 {
    KNOWN_ELEMENTS.iter().position(|&e| e == element).map_or(0, |i| i as u32 + 1)
}

/// A molecular formula as an element → count map.
///
/// Counts are strictly positive. Iteration order is alphabetical by symbol,
/// display order is Hill order (C, H, then alphabetical).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MolecularFormula {
    counts: BTreeMap<String, u32>,
}

impl MolecularFormula {
    pub fn from_counts<I, S>(counts: I) -> Result<Self, ChemioError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (sym, n) in counts {
            let sym = sym.into();
            if !KNOWN_ELEMENTS.contains(&sym.as_str()) {
                return Err(ChemioError::Formula(format!("unknown element symbol `{sym}`")));
            }
            if n == 0 {
                return Err(ChemioError::Formula(format!("zero count for `{sym}`")));
            }
            *map.entry(sym).or_insert(0) += n;
        }
        if map.is_empty() {
            return Err(ChemioError::Formula("empty formula".into()));
        }
        Ok(Self { counts: map })
    }

    pub fn count(&self, element: &str) -> u32 {
        self.counts.get(element).copied().unwrap_or(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = (&str, u32)> {
        self.counts.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Electrons of the neutral molecule.
    pub fn electron_count(&self) -> u32 {
        self.elements().map(|(el, n)| n * atomic_number(el)).sum()
    }

    pub fn atom_count(&self) -> u32 {
        self.counts.values().sum()
    }

    /// `self + other`, used to assemble peptides from residues.
    pub fn combine(&self, other: &Self) -> Self {
        let mut counts = self.counts.clone();
        for (k, v) in &other.counts {
            *counts.entry(k.clone()).or_insert(0) += v;
        }
        Self { counts }
    }

    /// `self × n`.
    pub fn scale(&self, n: u32) -> Self {
        assert!(n > 0, "formula scale factor must be positive");
        Self {
            counts: self.counts.iter().map(|(k, v)| (k.clone(), v * n)).collect(),
        }
    }

    /// `self − other`; fails if any count would drop below one (except
    /// elements removed entirely).
    pub fn remove(&self, other: &Self) -> Result<Self, ChemioError> {
        let mut counts = self.counts.clone();
        for (k, v) in &other.counts {
            let have = counts.get(k).copied().unwrap_or(0);
            if have < *v {
                return Err(ChemioError::Formula(format!(
                    "cannot remove {v} {k} from {self}"
                )));
            }
            if have == *v {
                counts.remove(k);
            } else {
                counts.insert(k.clone(), have - v);
            }
        }
        if counts.is_empty() {
            return Err(ChemioError::Formula("empty formula".into()));
        }
        Ok(Self { counts })
    }
}

impl FromStr for MolecularFormula {
    type Err = ChemioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut parts = Vec::new();
        while pos < bytes.len() {
            if !bytes[pos].is_ascii_uppercase() {
                return Err(ChemioError::Formula(format!(
                    "unexpected `{}` at offset {pos} in `{s}`",
                    bytes[pos] as char
                )));
            }
            let start = pos;
            pos += 1;
            while pos < bytes.len() && bytes[pos].is_ascii_lowercase() {
                pos += 1;
            }
            let sym = &s[start..pos];
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let n = if digits_start == pos {
                1
            } else {
                s[digits_start..pos]
                    .parse::<u32>()
                    .map_err(|e| ChemioError::Formula(format!("bad count in `{s}`: {e}")))?
            };
            parts.push((sym.to_string(), n));
        }
        Self::from_counts(parts)
    }
}

impl fmt::Display for MolecularFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut write = |sym: &str, n: u32| -> fmt::Result {
            if n == 1 {
                write!(f, "{sym}")
            } else {
                write!(f, "{sym}{n}")
            }
        };
        let has_carbon = self.counts.contains_key("C");
        if has_carbon {
            write("C", self.counts["C"])?;
            if let Some(&h) = self.counts.get("H") {
                write("H", h)?;
            }
        }
        for (sym, &n) in &self.counts {
            if has_carbon && (sym == "C" || sym == "H") {
                continue;
            }
            write(sym, n)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_hill_order() {
        let f: MolecularFormula = "C4H8N2O3".parse().unwrap();
        assert_eq!(f.count("C"), 4);
        assert_eq!(f.count("H"), 8);
        assert_eq!(f.count("S"), 0);
        assert_eq!(f.to_string(), "C4H8N2O3");
        let g: MolecularFormula = "H2O".parse().unwrap();
        assert_eq!(g.to_string(), "H2O");
        let s: MolecularFormula = "NH3".parse().unwrap();
        assert_eq!(s.count("N"), 1);
        assert_eq!(s.atom_count(), 4);
    }

    #[test]
    fn rejects_bad_formulas() {
        for bad in ["", "c4", "Xx2", "C0", "C4-", "4C"] {
            assert!(bad.parse::<MolecularFormula>().is_err(), "{bad}");
        }
    }

    #[test]
    fn arithmetic() {
        let gly: MolecularFormula = "C2H5NO2".parse().unwrap();
        let water: MolecularFormula = "H2O".parse().unwrap();
        let dip = gly.scale(2).remove(&water).unwrap();
        assert_eq!(dip.electron_count(), 70);
        assert_eq!(atomic_number("Kr"), 36);
        assert_eq!(dip.to_string(), "C4H8N2O3");
        assert!(water.remove(&gly).is_err());
        assert_eq!(gly.combine(&water).count("O"), 3);
    }
}
