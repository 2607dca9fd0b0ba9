use crate::encoding::{jordan_wigner, PauliString};

use super::{AnsatzError, AnsatzSpec, ExcitationGenerator};

/// One factor `exp(iθP)` of the Trotter product.
#[derive(Debug, Clone, PartialEq)]
pub struct TrotterStep {
    pub string: PauliString,
    pub angle: f64,
}

/// Pauli expansion of every generator, computed once and reused for any
/// parameter vector.
///
/// A generator `G` with image `Σ c_s P_s` (every `c_s` imaginary) and
/// amplitude `t` contributes `Π_s exp(i·t·Im(c_s)·P_s)`.
#[derive(Debug, Clone)]
pub struct TrotterPlan {
    n_qubits: usize,
    n_parameters: usize,
    /// `(parameter slot, [(string, Im c_s)])` in generator order.
    blocks: Vec<(usize, Vec<(PauliString, f64)>)>,
}

/// Largest register the plan will expand.
pub const MAX_EXPANSION_MODES: usize = 64;

impl TrotterPlan {
    pub fn new(spec: &AnsatzSpec) -> Result<Self, AnsatzError> {
        if spec.n_modes > MAX_EXPANSION_MODES {
            return Err(AnsatzError::TooLarge(spec.n_modes));
        }
        let blocks = spec
            .generators()
            .iter()
            .map(|g| Ok((g.parameter, expand_generator(g, spec.n_modes)?)))
            .collect::<Result<Vec<_>, AnsatzError>>()?;
        Ok(Self { n_qubits: spec.n_modes, n_parameters: spec.parameter_count(), blocks })
    }

    /// Builds a plan from explicit blocks; used after symmetry reduction.
    pub fn from_blocks(
        n_qubits: usize,
        n_parameters: usize,
        blocks: Vec<(usize, Vec<(PauliString, f64)>)>,
    ) -> Self {
        Self { n_qubits, n_parameters, blocks }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_parameters(&self) -> usize {
        self.n_parameters
    }

    pub fn blocks(&self) -> &[(usize, Vec<(PauliString, f64)>)] {
        &self.blocks
    }

    pub fn string_count(&self) -> usize {
        self.blocks.iter().map(|(_, s)| s.len()).sum()
    }

    /// Ordered `exp(iθP)` factors for `params`.
    pub fn steps(&self, params: &[f64]) -> Result<Vec<TrotterStep>, AnsatzError> {
        if params.len() != self.n_parameters {
            return Err(AnsatzError::ParameterCount { expected: self.n_parameters, got: params.len() });
        }
        Ok(self
            .blocks
            .iter()
            .flat_map(|(slot, strings)| {
                let t = params[*slot];
                strings.iter().map(move |(s, c)| TrotterStep { string: s.clone(), angle: t * c })
            })
            .collect())
    }
}

fn expand_generator(g: &ExcitationGenerator, n_modes: usize) -> Result<Vec<(PauliString, f64)>, AnsatzError> {
    let image = jordan_wigner(&g.operator(), n_modes)?;
    Ok(image
        .terms()
        .map(|(s, c)| {
            debug_assert!(c.re.abs() < 1e-12, "anti-Hermitian generator with real Pauli weight");
            (s.clone(), c.im)
        })
        .collect())
}

/// First-order, single-step Trotter product of the ansatz at `params`.
pub fn trotterize(spec: &AnsatzSpec, params: &[f64]) -> Result<Vec<TrotterStep>, AnsatzError> {
    TrotterPlan::new(spec)?.steps(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{build_kupccgsd, build_uccsd};
    use crate::encoding::Pauli;

    #[test]
    fn single_excitation_strings() {
        let spec = build_uccsd(4, 2).unwrap();
        let plan = TrotterPlan::new(&spec).unwrap();
        // generator order: double (0,1→2,3), then singles 0→2, 0→3, 1→2, 1→3
        let (_, single) = &plan.blocks()[1];
        assert_eq!(single.len(), 2);
        let xzy = PauliString::from_letters(4, &[(0, Pauli::X), (1, Pauli::Z), (2, Pauli::Y)]);
        let yzx = PauliString::from_letters(4, &[(0, Pauli::Y), (1, Pauli::Z), (2, Pauli::X)]);
        let find = |s: &PauliString| single.iter().find(|(p, _)| p == s).map(|(_, c)| *c).unwrap();
        // a†_2 a_0 − h.c. = (i/2)(Y0 Z1 X2 − X0 Z1 Y2)
        assert!((find(&xzy) + 0.5).abs() < 1e-15);
        assert!((find(&yzx) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn double_excitation_has_eight_weight_four_strings() {
        let spec = build_uccsd(4, 2).unwrap();
        let plan = TrotterPlan::new(&spec).unwrap();
        let (_, double) = &plan.blocks()[0];
        assert_eq!(double.len(), 8);
        assert!(double.iter().all(|(s, c)| s.weight() == 4 && (c.abs() - 0.125).abs() < 1e-15));
    }

    #[test]
    fn zero_parameters_give_zero_angles() {
        let spec = build_kupccgsd(6, 2, 2).unwrap();
        let steps = trotterize(&spec, &vec![0.0; spec.parameter_count()]).unwrap();
        assert!(steps.iter().all(|s| s.angle == 0.0));
    }

    #[test]
    fn parameter_length_checked() {
        let spec = build_uccsd(4, 2).unwrap();
        assert!(matches!(
            trotterize(&spec, &[0.1; 3]),
            Err(AnsatzError::ParameterCount { expected: 5, got: 3 })
        ));
    }

    #[test]
    fn string_weights_match_formula() {
        let spec = build_uccsd(8, 4).unwrap();
        let plan = TrotterPlan::new(&spec).unwrap();
        for (g, (_, strings)) in spec.generators().iter().zip(plan.blocks()) {
            assert_eq!(strings.len(), g.jw_string_count());
            assert!(strings.iter().all(|(s, _)| s.weight() == g.jw_string_weight()));
        }
    }
}
