use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{FfError, TorsionComponent};

/// CODATA 2018 Hartree energy in kcal/mol.
pub const HARTREE_TO_KCAL_PER_MOL: f64 = 627.509_474_063_1;

/// Angles closer than this (after wrapping) count as the same sample.
const ANGLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyUnit {
    #[serde(rename = "hartree")]
    Hartree,
    #[serde(rename = "kcal/mol")]
    KcalPerMol,
}

impl EnergyUnit {
    pub fn tag(self) -> &'static str {
        match self {
            EnergyUnit::Hartree => "hartree",
            EnergyUnit::KcalPerMol => "kcal/mol",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        match tag.trim().to_ascii_lowercase().as_str() {
            "hartree" | "ha" | "eh" => Some(EnergyUnit::Hartree),
            "kcal/mol" | "kcal_per_mol" => Some(EnergyUnit::KcalPerMol),
            _ => None,
        }
    }
}

/// A one-dimensional dihedral scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionScan {
    angles: Vec<f64>,
    energies: Vec<f64>,
    unit: EnergyUnit,
}

impl TorsionScan {
    /// Angles must lie in `[−π, π)`.
    pub fn new(angles: Vec<f64>, energies: Vec<f64>, unit: EnergyUnit) -> Result<Self, FfError> {
        if angles.len() != energies.len() {
            return Err(FfError::Scan(format!("{} angles but {} energies", angles.len(), energies.len())));
        }
        if let Some(a) = angles.iter().find(|a| !(-PI..PI).contains(*a)) {
            return Err(FfError::Scan(format!("angle {a} outside [-pi, pi)")));
        }
        if let Some(e) = energies.iter().find(|e| !e.is_finite()) {
            return Err(FfError::Scan(format!("non-finite energy {e}")));
        }
        Ok(Self { angles, energies, unit })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn unit(&self) -> EnergyUnit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Same scan with energies in kcal/mol.
    pub fn to_kcal_per_mol(&self) -> Self {
        let factor = match self.unit {
            EnergyUnit::Hartree => HARTREE_TO_KCAL_PER_MOL,
            EnergyUnit::KcalPerMol => 1.0,
        };
        Self {
            angles: self.angles.clone(),
            energies: self.energies.iter().map(|e| e * factor).collect(),
            unit: EnergyUnit::KcalPerMol,
        }
    }

    fn distinct_angles(&self) -> usize {
        let mut sorted = self.angles.clone();
        sorted.sort_by(f64::total_cmp);
        let mut count = 0;
        let mut last: Option<f64> = None;
        for &a in &sorted {
            if last.is_none_or(|l| a - l > ANGLE_TOLERANCE) {
                count += 1;
                last = Some(a);
            }
        }
        // −π + δ and π − δ are neighbours on the circle
        if count > 1 && sorted[0] + 2.0 * PI - sorted[sorted.len() - 1] <= ANGLE_TOLERANCE {
            count -= 1;
        }
        count
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionFit {
    /// One component per periodicity `1..=n_max`, with `V_n ≥ 0`.
    pub components: Vec<TorsionComponent>,
    /// Constant offset of the expansion `c + Σ a_n cos nω + b_n sin nω`.
    pub offset: f64,
    pub rms_residual: f64,
    pub unit: EnergyUnit,
}

/// `Σ ½ V_n (1 + cos(nω − ω̄_n))`.
pub fn torsion_series(components: &[TorsionComponent], omega: f64) -> f64 {
    components.iter().map(|c| 0.5 * c.v * (1.0 + (f64::from(c.n) * omega - c.phase).cos())).sum()
}

/// Linear least squares on `c + Σ_{n≤n_max} a_n cos nω + b_n sin nω`,
/// converted to `V_n = 2√(a_n² + b_n²)`, `ω̄_n = atan2(b_n, a_n)`.
pub fn fit_torsion(scan: &TorsionScan, n_max: usize) -> Result<TorsionFit, FfError> {
    if n_max == 0 {
        return Err(FfError::Scan("n_max must be at least 1".into()));
    }
    let needed = 2 * n_max + 1;
    let distinct = scan.distinct_angles();
    if distinct < needed {
        return Err(FfError::RankDeficient { distinct, needed });
    }
    let rows = scan.len();
    let design = DMatrix::from_fn(rows, needed, |i, j| {
        let w = scan.angles[i];
        match j {
            0 => 1.0,
            _ => {
                let n = ((j + 1) / 2) as f64;
                if j % 2 == 1 {
                    (n * w).cos()
                } else {
                    (n * w).sin()
                }
            }
        }
    });
    let target = DVector::from_column_slice(&scan.energies);
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= 1e-10 * smax {
        return Err(FfError::RankDeficient { distinct, needed });
    }
    let coef = svd.solve(&target, 1e-12 * smax).map_err(|e| FfError::Scan(e.to_string()))?;
    let residual = &design * &coef - &target;
    let rms_residual = (residual.norm_squared() / rows as f64).sqrt();
    let components = (1..=n_max)
        .map(|n| {
            let (a, b) = (coef[2 * n - 1], coef[2 * n]);
            let v = 2.0 * a.hypot(b);
            let phase = if v > 0.0 { b.atan2(a) } else { 0.0 };
            TorsionComponent { n: n as u32, v, phase }
        })
        .collect();
    Ok(TorsionFit { components, offset: coef[0], rms_residual, unit: scan.unit })
}

/// Reads `angle_rad,energy` rows. A `# unit: <hartree|kcal/mol>` comment
/// is required; other `#` lines and blank lines are ignored.
pub fn parse_scan_csv(text: &str) -> Result<TorsionScan, FfError> {
    let mut unit = None;
    let mut header = false;
    let (mut angles, mut energies) = (Vec::new(), Vec::new());
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(tag) = comment.trim().strip_prefix("unit:") {
                unit = Some(EnergyUnit::from_tag(tag).ok_or_else(|| FfError::Csv {
                    line: line_no,
                    message: format!("unknown unit '{}'", tag.trim()),
                })?);
            }
            continue;
        }
        if !header {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols != ["angle_rad", "energy"] {
                return Err(FfError::Csv { line: line_no, message: "expected header 'angle_rad,energy'".into() });
            }
            header = true;
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 2 {
            return Err(FfError::Csv { line: line_no, message: format!("expected 2 columns, found {}", cols.len()) });
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|_| FfError::Csv { line: line_no, message: format!("not a number: '{s}'") })
        };
        angles.push(parse(cols[0])?);
        energies.push(parse(cols[1])?);
    }
    if !header {
        return Err(FfError::Csv { line: 1, message: "missing header 'angle_rad,energy'".into() });
    }
    let unit = unit.ok_or_else(|| FfError::Csv { line: 1, message: "missing '# unit:' comment".into() })?;
    TorsionScan::new(angles, energies, unit)
}

fn clean(x: f64) -> f64 {
    if x.abs() < 5e-11 {
        0.0
    } else {
        x
    }
}

/// `n,V_n,omega_bar` rows, ten decimals.
pub fn format_fit_csv(fit: &TorsionFit) -> String {
    let mut out = String::from("n,V_n,omega_bar\n");
    for c in &fit.components {
        let _ = writeln!(out, "{},{:.10},{:.10}", c.n, clean(c.v), clean(c.phase));
    }
    out
}
