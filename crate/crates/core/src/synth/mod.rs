//! Circuits for exponentiated Pauli strings, two-qubit gate counting and
//! depth scheduling.
//!
//! Angle convention shared across the crate: the pair `(P, θ)` denotes
//! `exp(iθP)`, realized with a single `RZ(−2θ)` between CNOT ladders.

mod circuit;

use serde::Serialize;
use thiserror::Error;

use crate::ansatz::{AnsatzFamily, AnsatzSpec};
use crate::encoding::{Pauli, PauliString};

pub use circuit::{schedule_depth, Circuit, Gate};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("qubit {qubit} outside circuit of width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("CNOT control and target are both qubit {0}")]
    CnotSelfLoop(usize),
    #[error("identity string has no circuit; fold it into a global phase")]
    IdentityString,
    #[error("nesting partition needs an even M ≥ 8, got {0}")]
    NestingTooSmall(usize),
    #[error("k-UpCCGSD depth needs an even number of spin orbitals, got {0}")]
    OddModes(usize),
    #[error("netlist: {0}")]
    Netlist(String),
}

/// Circuit for `exp(iθP)`: basis change, CNOT ladder onto the last support
/// qubit, `RZ(−2θ)`, and the mirror image. Uses exactly `2(w − 1)` CNOTs.
pub fn synthesize_pauli_exp(string: &PauliString, angle: f64) -> Result<Circuit, SynthError> {
    let support: Vec<(usize, Pauli)> = string.letters().collect();
    if support.is_empty() {
        return Err(SynthError::IdentityString);
    }
    let mut c = Circuit::new(string.n_qubits());
    let into_z = |q: usize, p: Pauli| match p {
        Pauli::X => Some(Gate::H(q)),
        Pauli::Y => Some(Gate::YBasisDag(q)),
        _ => None,
    };
    for &(q, p) in &support {
        if let Some(g) = into_z(q, p) {
            c.push(g)?;
        }
    }
    for w in support.windows(2) {
        c.push(Gate::Cnot { control: w[0].0, target: w[1].0 })?;
    }
    let last = support.last().expect("nonempty").0;
    c.push(Gate::Rz { qubit: last, angle: -2.0 * angle })?;
    for w in support.windows(2).rev() {
        c.push(Gate::Cnot { control: w[0].0, target: w[1].0 })?;
    }
    for &(q, p) in &support {
        if let Some(g) = into_z(q, p) {
            c.push(g.inverse())?;
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GateCountMode {
    /// Every string pays for its full Jordan-Wigner weight.
    Naive,
    /// Z ladders cancel between adjacent strings; only the excitation
    /// indices are paid for.
    Optimized,
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn choose3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// `Σ_{0≤i<j<n} (j − i)`.
fn pair_gap_sum(n: u64) -> u64 {
    choose3(n + 1)
}

/// Two-qubit gates needed for the single-step Trotter circuit of `spec`.
///
/// Closed forms over the generator list: a string of weight `w` costs
/// `2(w − 1)` CNOTs. Paired doubles are charged twice, once per ordered
/// spatial pair.
pub fn count_two_qubit_gates(spec: &AnsatzSpec, mode: GateCountMode) -> u64 {
    let m = spec.n_modes as u64;
    match spec.family {
        AnsatzFamily::Uccsd => {
            let o = spec.n_electrons as u64;
            let v = m - o;
            match mode {
                GateCountMode::Naive => {
                    // doubles: 8 strings × 2((j−i+1)+(b−a+1)−1)
                    let doubles = 16
                        * (choose2(v) * pair_gap_sum(o)
                            + choose2(o) * pair_gap_sum(v)
                            + choose2(o) * choose2(v));
                    // singles: 2 strings × 2(a − i)
                    let sum_a: u64 = (o..m).sum();
                    let sum_i: u64 = (0..o).sum();
                    let singles = 4 * (o * sum_a - v * sum_i);
                    doubles + singles
                }
                GateCountMode::Optimized => 48 * choose2(o) * choose2(v) + 4 * o * v,
            }
        }
        AnsatzFamily::KUpCCGSD { k } => {
            let n = m / 2;
            let paired = 2 * 48 * choose2(n);
            let singles = match mode {
                // per spin: 2 strings × 2·(2(q − p)) over spatial p < q
                GateCountMode::Naive => 2 * 8 * pair_gap_sum(n),
                GateCountMode::Optimized => 4 * 2 * choose2(n),
            };
            k as u64 * (paired + singles)
        }
    }
}

/// Groups of 0-based spatial pairs `(p, q)`, `p > q`, sharing `p + q`.
///
/// Pairs in one group are nested (`p > p′ > q′ > q`) and touch disjoint
/// orbitals, so their circuits can run side by side. There are `M − 3`
/// groups for `M` spin orbitals.
pub fn nesting_partition(n_modes: usize) -> Result<Vec<Vec<(usize, usize)>>, SynthError> {
    if n_modes < 8 || n_modes % 2 != 0 {
        return Err(SynthError::NestingTooSmall(n_modes));
    }
    let n = n_modes / 2;
    let groups = (1..=2 * n - 3)
        .map(|sum| {
            (0..n)
                .filter_map(|q| {
                    let p = sum.checked_sub(q)?;
                    (p > q && p < n).then_some((p, q))
                })
                .collect()
        })
        .collect();
    Ok(groups)
}

/// Streaming ASAP layering, for circuits too large to keep in memory.
#[derive(Debug, Clone)]
pub struct LayerScheduler {
    frontier: Vec<usize>,
    depth: usize,
    gates: usize,
    two_qubit: usize,
}

impl LayerScheduler {
    pub fn new(width: usize) -> Self {
        Self { frontier: vec![0; width], depth: 0, gates: 0, two_qubit: 0 }
    }

    pub fn push(&mut self, gate: &Gate) {
        match *gate {
            Gate::Cnot { control, target } => self.push_two(control, target),
            _ => self.push_one(gate.qubits()[0]),
        }
    }

    pub fn push_one(&mut self, q: usize) {
        self.frontier[q] += 1;
        self.depth = self.depth.max(self.frontier[q]);
        self.gates += 1;
    }

    pub fn push_two(&mut self, a: usize, b: usize) {
        let layer = self.frontier[a].max(self.frontier[b]) + 1;
        self.frontier[a] = layer;
        self.frontier[b] = layer;
        self.depth = self.depth.max(layer);
        self.gates += 1;
        self.two_qubit += 1;
    }

    pub fn push_circuit(&mut self, c: &Circuit) {
        for g in c.gates() {
            self.push(g);
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn gate_count(&self) -> usize {
        self.gates
    }

    pub fn two_qubit_count(&self) -> usize {
        self.two_qubit
    }
}

/// Schedules the gates of [`synthesize_pauli_exp`] for a string whose
/// letters on `support` (ascending) are all X or Y, without building it.
fn schedule_xy_exp(all: &mut LayerScheduler, cnot_only: &mut LayerScheduler, support: &[usize]) {
    support.iter().for_each(|&q| all.push_one(q));
    for w in support.windows(2) {
        all.push_two(w[0], w[1]);
        cnot_only.push_two(w[0], w[1]);
    }
    all.push_one(*support.last().expect("nonempty support"));
    for w in support.windows(2).rev() {
        all.push_two(w[0], w[1]);
        cnot_only.push_two(w[0], w[1]);
    }
    support.iter().for_each(|&q| all.push_one(q));
}

/// Layer and gate totals of a k-UpCCGSD skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DepthEstimate {
    pub depth: usize,
    pub two_qubit_depth: usize,
    pub gate_count: usize,
    pub two_qubit_gates: usize,
}

/// Depth of `k` sequential k-UpCCGSD repetitions on `n_modes` qubits.
///
/// One repetition emits the paired doubles group by group in nesting order,
/// then the spin-conserving generalized singles grouped the same way per
/// spin; ladders are dropped (optimized strings) and the result is scheduled
/// ASAP.
pub fn estimate_kupccgsd_depth(n_modes: usize, k: usize) -> Result<DepthEstimate, SynthError> {
    if n_modes % 2 != 0 || n_modes < 4 {
        return Err(SynthError::OddModes(n_modes));
    }
    let n = n_modes / 2;
    let mut all = LayerScheduler::new(n_modes);
    let mut cnot_only = LayerScheduler::new(n_modes);
    // Eight X/Y patterns per paired double and two per single; every
    // pattern on the same support has the same gate layout.
    for sum in 1..=(2 * n).saturating_sub(3) {
        for q in 0..n {
            let Some(p) = sum.checked_sub(q) else { continue };
            if p <= q || p >= n {
                continue;
            }
            for _ in 0..8 {
                schedule_xy_exp(&mut all, &mut cnot_only, &[2 * q, 2 * q + 1, 2 * p, 2 * p + 1]);
            }
        }
    }
    for sum in 1..=(2 * n).saturating_sub(3) {
        for spin in 0..2 {
            for q in 0..n {
                let Some(p) = sum.checked_sub(q) else { continue };
                if p <= q || p >= n {
                    continue;
                }
                for _ in 0..2 {
                    schedule_xy_exp(&mut all, &mut cnot_only, &[2 * q + spin, 2 * p + spin]);
                }
            }
        }
    }
    Ok(DepthEstimate {
        depth: k * all.depth(),
        two_qubit_depth: k * cnot_only.depth(),
        gate_count: k * all.gate_count(),
        two_qubit_gates: k * all.two_qubit_count(),
    })
}
