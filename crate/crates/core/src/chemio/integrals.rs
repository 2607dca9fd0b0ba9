use super::ChemioError;

/// Spatial-orbital integrals in chemists' notation.
///
/// `h[p][q]` is the one-electron integral, `v[p][q][r][s]` is `(pq|rs)`.
/// Both are stored densely and kept symmetric by the setters.
#[derive(Debug, Clone, PartialEq)]
pub struct MolecularIntegrals {
    n_orbitals: usize,
    pub n_electrons: usize,
    /// Twice the spin projection, as declared by the source file.
    pub ms2: i32,
    /// Nuclear repulsion plus any frozen contributions (Hartree).
    pub core_energy: f64,
    h: Vec<f64>,
    v: Vec<f64>,
}

impl MolecularIntegrals {
    pub fn zeros(n_orbitals: usize, n_electrons: usize) -> Result<Self, ChemioError> {
        if n_orbitals == 0 {
            return Err(ChemioError::Domain("NORB must be positive".into()));
        }
        if n_electrons == 0 || n_electrons > 2 * n_orbitals {
            return Err(ChemioError::Domain(format!(
                "electron count {n_electrons} outside (0, {}]",
                2 * n_orbitals
            )));
        }
        Ok(Self::empty(n_orbitals, n_electrons))
    }

    fn empty(n_orbitals: usize, n_electrons: usize) -> Self {
        Self {
            n_orbitals,
            n_electrons,
            ms2: (n_electrons % 2) as i32,
            core_energy: 0.0,
            h: vec![0.0; n_orbitals.pow(2)],
            v: vec![0.0; n_orbitals.pow(4)],
        }
    }

    pub fn n_orbitals(&self) -> usize {
        self.n_orbitals
    }

    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_orbitals
    }

    #[inline]
    fn h_index(&self, p: usize, q: usize) -> usize {
        p * self.n_orbitals + q
    }

    #[inline]
    fn v_index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        let n = self.n_orbitals;
        ((p * n + q) * n + r) * n + s
    }

    #[inline]
    pub fn h(&self, p: usize, q: usize) -> f64 {
        self.h[self.h_index(p, q)]
    }

    /// `(pq|rs)`.
    #[inline]
    pub fn v(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.v[self.v_index(p, q, r, s)]
    }

    pub fn set_h(&mut self, p: usize, q: usize, value: f64) {
        let (a, b) = (self.h_index(p, q), self.h_index(q, p));
        self.h[a] = value;
        self.h[b] = value;
    }

    /// Sets `(pq|rs)` and its seven permutation images.
    pub fn set_v(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
        for (a, b, c, d) in permutation_images(p, q, r, s) {
            let idx = self.v_index(a, b, c, d);
            self.v[idx] = value;
        }
    }

    /// Largest deviation from h symmetry and 8-fold V symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.n_orbitals;
        let mut worst: f64 = 0.0;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((self.h(p, q) - self.h(q, p)).abs());
                for r in 0..n {
                    for s in 0..n {
                        let x = self.v(p, q, r, s);
                        for (a, b, c, d) in permutation_images(p, q, r, s) {
                            worst = worst.max((x - self.v(a, b, c, d)).abs());
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest absolute difference over all fields, `inf` if shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n_orbitals != other.n_orbitals || self.n_electrons != other.n_electrons {
            return f64::INFINITY;
        }
        let fields = self.h.iter().zip(&other.h).chain(self.v.iter().zip(&other.v));
        fields
            .map(|(a, b)| (a - b).abs())
            .fold((self.core_energy - other.core_energy).abs(), f64::max)
    }

    /// Frozen-core reduction onto orbitals `[n_core, M)`.
    ///
    /// Orbitals must already be ordered by ascending energy.
    pub fn freeze_core(&self, n_core: usize) -> Result<Self, ChemioError> {
        if 2 * n_core > self.n_electrons || n_core >= self.n_orbitals {
            return Err(ChemioError::Domain(format!(
                "cannot freeze {n_core} orbitals with {} electrons in {} orbitals",
                self.n_electrons, self.n_orbitals
            )));
        }
        if n_core == 0 {
            return Ok(self.clone());
        }
        let n_new = self.n_orbitals - n_core;
        // All electrons frozen is legal and leaves an empty active space.
        let mut out = Self::empty(n_new, self.n_electrons - 2 * n_core);
        out.ms2 = self.ms2;

        let core = 0..n_core;
        let mut e_core = self.core_energy;
        for c in core.clone() {
            e_core += 2.0 * self.h(c, c);
            for d in core.clone() {
                e_core += 2.0 * self.v(c, c, d, d) - self.v(c, d, d, c);
            }
        }
        out.core_energy = e_core;

        for p in 0..n_new {
            for q in 0..n_new {
                let (gp, gq) = (p + n_core, q + n_core);
                let mut value = self.h(gp, gq);
                for c in core.clone() {
                    value += 2.0 * self.v(gp, gq, c, c) - self.v(gp, c, c, gq);
                }
                let idx = out.h_index(p, q);
                out.h[idx] = value;
                for r in 0..n_new {
                    for s in 0..n_new {
                        let idx = out.v_index(p, q, r, s);
                        out.v[idx] = self.v(gp, gq, r + n_core, s + n_core);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The eight index orderings equal to `(pq|rs)` for real orbitals.
pub fn permutation_images(
    p: usize,
    q: usize,
    r: usize,
    s: usize,
) -> [(usize, usize, usize, usize); 8] {
    [
        (p, q, r, s),
        (q, p, r, s),
        (p, q, s, r),
        (q, p, s, r),
        (r, s, p, q),
        (s, r, p, q),
        (r, s, q, p),
        (s, r, q, p),
    ]
}
