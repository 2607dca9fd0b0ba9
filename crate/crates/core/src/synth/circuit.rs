use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::SynthError;

/// Elementary gates. `YBasis` is `(1/√2)[[1, i], [i, 1]]`, which conjugates
/// `Z` into `Y`; `YBasisDag` is its inverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    YBasis(usize),
    YBasisDag(usize),
    /// `RZ(φ) = diag(e^{−iφ/2}, e^{iφ/2})`.
    Rz { qubit: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    X(usize),
    Z(usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::YBasis(q) | Gate::YBasisDag(q) | Gate::X(q) | Gate::Z(q) => vec![q],
            Gate::Rz { qubit, .. } => vec![qubit],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    /// 2×2 matrix (row-major) of a single-qubit gate; `None` for CNOT.
    pub fn single_qubit_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let r = |x: f64| Complex64::new(x, 0.0);
        let i = |x: f64| Complex64::new(0.0, x);
        let s = FRAC_1_SQRT_2;
        Some(match *self {
            Gate::H(_) => [[r(s), r(s)], [r(s), r(-s)]],
            Gate::YBasis(_) => [[r(s), i(s)], [i(s), r(s)]],
            Gate::YBasisDag(_) => [[r(s), i(-s)], [i(-s), r(s)]],
            Gate::Rz { angle, .. } => [
                [Complex64::from_polar(1.0, -angle / 2.0), r(0.0)],
                [r(0.0), Complex64::from_polar(1.0, angle / 2.0)],
            ],
            Gate::X(_) => [[r(0.0), r(1.0)], [r(1.0), r(0.0)]],
            Gate::Z(_) => [[r(1.0), r(0.0)], [r(0.0), r(-1.0)]],
            Gate::Cnot { .. } => return None,
        })
    }

    pub fn inverse(&self) -> Self {
        match *self {
            Gate::YBasis(q) => Gate::YBasisDag(q),
            Gate::YBasisDag(q) => Gate::YBasis(q),
            Gate::Rz { qubit, angle } => Gate::Rz { qubit, angle: -angle },
            g => g,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::YBasis(q) => write!(f, "YB {q}"),
            Gate::YBasisDag(q) => write!(f, "YBDG {q}"),
            Gate::Rz { qubit, angle } => write!(f, "RZ {qubit} {angle:e}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::X(q) => write!(f, "X {q}"),
            Gate::Z(q) => write!(f, "Z {q}"),
        }
    }
}

/// Ordered gate list over `width` qubits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self { width, gates: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), SynthError> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.width) {
            return Err(SynthError::QubitOutOfRange { qubit: q, width: self.width });
        }
        if let Gate::Cnot { control, target } = gate {
            if control == target {
                return Err(SynthError::CnotSelfLoop(control));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends `other`, which must not be wider than `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<(), SynthError> {
        for g in &other.gates {
            self.push(*g)?;
        }
        Ok(())
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    pub fn depth(&self) -> usize {
        schedule_depth(self)
    }

    /// Depth counting only layers of two-qubit gates.
    pub fn two_qubit_depth(&self) -> usize {
        layered_depth(self, |g| g.is_two_qubit())
    }

    /// One gate per line, preceded by a `qubits n` line.
    pub fn to_netlist(&self) -> String {
        let mut out = format!("qubits {}\n", self.width);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromStr for Circuit {
    type Err = SynthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| SynthError::Netlist("empty netlist".into()))?;
        let width = header
            .strip_prefix("qubits")
            .and_then(|w| w.trim().parse().ok())
            .ok_or_else(|| SynthError::Netlist(format!("bad header `{header}`")))?;
        let mut c = Circuit::new(width);
        for line in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let bad = || SynthError::Netlist(format!("bad gate line `{line}`"));
            let q = |i: usize| f.get(i).and_then(|t| t.parse::<usize>().ok()).ok_or_else(bad);
            let gate = match (f[0], f.len()) {
                ("H", 2) => Gate::H(q(1)?),
                ("YB", 2) => Gate::YBasis(q(1)?),
                ("YBDG", 2) => Gate::YBasisDag(q(1)?),
                ("X", 2) => Gate::X(q(1)?),
                ("Z", 2) => Gate::Z(q(1)?),
                ("RZ", 3) => Gate::Rz { qubit: q(1)?, angle: f[2].parse().map_err(|_| bad())? },
                ("CNOT", 3) => Gate::Cnot { control: q(1)?, target: q(2)? },
                _ => return Err(bad()),
            };
            c.push(gate)?;
        }
        Ok(c)
    }
}

fn layered_depth(circuit: &Circuit, counts: impl Fn(&Gate) -> bool) -> usize {
    let mut frontier = vec![0usize; circuit.width];
    let mut depth = 0;
    for g in circuit.gates.iter().filter(|g| counts(g)) {
        let qs = g.qubits();
        let layer = qs.iter().map(|&q| frontier[q]).max().unwrap_or(0) + 1;
        for q in qs {
            frontier[q] = layer;
        }
        depth = depth.max(layer);
    }
    depth
}

/// ASAP layering: each gate lands one layer after the latest gate sharing
/// any of its qubits. All gate kinds count.
pub fn schedule_depth(circuit: &Circuit) -> usize {
    layered_depth(circuit, |_| true)
}
