use std::collections::BTreeMap;

use super::{ChemioError, MolecularFormula};

/// Version tag of the built-in catalog table.
pub const CATALOG_VERSION: u32 = 1;

/// Shell bookkeeping for one element in the full-reaction-space picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValenceShell {
    pub valence_orbitals: u32,
    pub core_orbitals: u32,
    pub valence_electrons: u32,
}

const fn shell(valence_orbitals: u32, core_orbitals: u32, valence_electrons: u32) -> ValenceShell {
    ValenceShell { valence_orbitals, core_orbitals, valence_electrons }
}

/// Valence/core counts per element. S keeps 3s3p valence with 1s2s2p core.
const VALENCE_TABLE: [(&str, ValenceShell); 12] = [
    ("H", shell(1, 0, 1)),
    ("He", shell(1, 0, 2)),
    ("Li", shell(4, 1, 1)),
    ("Be", shell(4, 1, 2)),
    ("B", shell(4, 1, 3)),
    ("C", shell(4, 1, 4)),
    ("N", shell(4, 1, 5)),
    ("O", shell(4, 1, 6)),
    ("F", shell(4, 1, 7)),
    ("P", shell(4, 5, 5)),
    ("S", shell(4, 5, 6)),
    ("Cl", shell(4, 5, 7)),
];

pub fn valence_shell(element: &str) -> Option<ValenceShell> {
    VALENCE_TABLE.iter().find(|(e, _)| *e == element).map(|(_, s)| *s)
}

/// Spatial basis-function counts: H/He, Li–F, P–Cl.
const BUILTIN_BASES: [(&str, [u32; 3]); 7] = [
    ("STO-3G", [1, 5, 9]),
    ("STO-6G", [1, 5, 9]),
    ("3-21G", [2, 9, 13]),
    ("6-31G", [2, 9, 13]),
    ("6-31G*", [2, 15, 19]),
    ("cc-pVDZ", [5, 14, 18]),
    ("cc-pVTZ(-f)", [9, 23, 27]),
];

/// One basis set: spatial function count per element plus the valence table.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisCatalogEntry {
    pub name: String,
    functions: BTreeMap<String, u32>,
}

impl BasisCatalogEntry {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), functions: BTreeMap::new() }
    }

    pub fn with_functions(mut self, element: &str, count: u32) -> Self {
        self.functions.insert(element.to_string(), count);
        self
    }

    pub fn spatial_functions(&self, element: &str) -> Result<u32, ChemioError> {
        self.functions.get(element).copied().ok_or_else(|| ChemioError::Catalog {
            element: element.to_string(),
            basis: self.name.clone(),
        })
    }

    pub fn valence(&self, element: &str) -> Result<ValenceShell, ChemioError> {
        valence_shell(element).ok_or_else(|| ChemioError::Catalog {
            element: element.to_string(),
            basis: self.name.clone(),
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = (&str, u32)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Spatial functions summed over the formula.
    pub fn total_functions(&self, formula: &MolecularFormula) -> Result<u32, ChemioError> {
        formula
            .elements()
            .map(|(e, n)| self.spatial_functions(e).map(|f| f * n))
            .sum()
    }
}

/// Named collection of basis entries, built-in plus user overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisCatalog {
    pub version: u32,
    entries: BTreeMap<String, BasisCatalogEntry>,
}

impl Default for BasisCatalog {
    fn default() -> Self {
        Self::builtin()
    }
}

impl BasisCatalog {
    pub fn builtin() -> Self {
        let mut entries = BTreeMap::new();
        for (name, [light, first, second]) in BUILTIN_BASES {
            let mut entry = BasisCatalogEntry::new(name);
            for (el, _) in VALENCE_TABLE {
                let n = match el {
                    "H" | "He" => light,
                    "P" | "S" | "Cl" => second,
                    _ => first,
                };
                entry = entry.with_functions(el, n);
            }
            entries.insert(name.to_string(), entry);
        }
        Self { version: CATALOG_VERSION, entries }
    }

    /// Case-insensitive lookup.
    pub fn get(&self, name: &str) -> Result<&BasisCatalogEntry, ChemioError> {
        self.entries
            .values()
            .find(|e| e.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| ChemioError::UnknownBasis(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = &BasisCatalogEntry> {
        self.entries.values()
    }

    /// Apply `basis element count` lines; `#` starts a comment. Unknown
    /// bases are created.
    pub fn apply_overrides(&mut self, text: &str) -> Result<(), ChemioError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |msg: String| ChemioError::Parse { line: idx + 1, message: msg };
            if fields.len() != 3 {
                return Err(parse_err(format!("expected `basis element count`, got `{line}`")));
            }
            let count: u32 = fields[2]
                .parse()
                .map_err(|_| parse_err(format!("bad function count `{}`", fields[2])))?;
            let element = fields[1];
            let shell = valence_shell(element).ok_or_else(|| ChemioError::Catalog {
                element: element.to_string(),
                basis: fields[0].to_string(),
            })?;
            if count < shell.valence_orbitals + shell.core_orbitals {
                return Err(parse_err(format!(
                    "{element} needs at least {} functions",
                    shell.valence_orbitals + shell.core_orbitals
                )));
            }
            let key = self
                .entries
                .keys()
                .find(|k| k.eq_ignore_ascii_case(fields[0]))
                .cloned()
                .unwrap_or_else(|| fields[0].to_string());
            self.entries
                .entry(key.clone())
                .or_insert_with(|| BasisCatalogEntry::new(key))
                .functions
                .insert(element.to_string(), count);
        }
        Ok(())
    }
}

/// Qubits without active-space reduction: two spin orbitals per spatial function.
pub fn count_qubits(formula: &MolecularFormula, basis: &BasisCatalogEntry) -> Result<u32, ChemioError> {
    Ok(2 * basis.total_functions(formula)?)
}

/// Spin orbitals and electrons of the full reaction space (valence only).
pub fn count_active_qubits(formula: &MolecularFormula) -> Result<(u32, u32), ChemioError> {
    let mut orbitals = 0;
    let mut electrons = 0;
    for (el, n) in formula.elements() {
        let shell = valence_shell(el).ok_or_else(|| ChemioError::Catalog {
            element: el.to_string(),
            basis: "valence table".into(),
        })?;
        orbitals += n * shell.valence_orbitals;
        electrons += n * shell.valence_electrons;
    }
    Ok((2 * orbitals, electrons))
}
