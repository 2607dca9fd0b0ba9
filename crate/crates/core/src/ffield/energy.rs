use nalgebra::Vector3;

use super::{FFParameters, FfError, COINCIDENCE_TOLERANCE};

type V3 = Vector3<f64>;

/// Dihedral angle of `a-b-c-d` in `(−π, π]`, zero for the cis arrangement.
pub fn dihedral(a: &V3, b: &V3, c: &V3, d: &V3) -> f64 {
    let (b1, b2, b3) = (b - a, c - b, d - c);
    let (n1, n2) = (b1.cross(&b2), b2.cross(&b3));
    (b2.norm() * b1.dot(&n2)).atan2(n1.dot(&n2))
}

fn dihedral_gradient(p: [&V3; 4]) -> Result<(f64, [V3; 4]), FfError> {
    let (b1, b2, b3) = (p[1] - p[0], p[2] - p[1], p[3] - p[2]);
    let (n1, n2) = (b1.cross(&b2), b2.cross(&b3));
    let (n1sq, n2sq, lb2) = (n1.norm_squared(), n2.norm_squared(), b2.norm());
    if n1sq < 1e-20 || n2sq < 1e-20 {
        return Err(FfError::DegenerateGeometry("collinear atoms in a torsion".into()));
    }
    let phi = (lb2 * b1.dot(&n2)).atan2(n1.dot(&n2));
    let gi = -n1 * (lb2 / n1sq);
    let gl = n2 * (lb2 / n2sq);
    let (s1, s3) = (b1.dot(&b2) / (lb2 * lb2), b3.dot(&b2) / (lb2 * lb2));
    let gj = gl * s3 - gi * (1.0 + s1);
    let gk = gi * s1 - gl * (1.0 + s3);
    Ok((phi, [gi, gj, gk, gl]))
}

fn angle_gradient(p: [&V3; 3]) -> Result<(f64, [V3; 3]), FfError> {
    let (u, v) = (p[0] - p[1], p[2] - p[1]);
    let (lu, lv) = (u.norm(), v.norm());
    let cross = u.cross(&v).norm();
    if lu < COINCIDENCE_TOLERANCE || lv < COINCIDENCE_TOLERANCE || cross < 1e-12 * lu * lv {
        return Err(FfError::DegenerateGeometry("linear or collapsed angle".into()));
    }
    let theta = cross.atan2(u.dot(&v));
    let (uh, vh) = (u / lu, v / lv);
    let (cos, sin) = (theta.cos(), theta.sin());
    let gi = (uh * cos - vh) / (lu * sin);
    let gk = (vh * cos - uh) / (lv * sin);
    Ok((theta, [gi, -gi - gk, gk]))
}

/// Energy and its gradient with respect to every coordinate.
pub fn evaluate_gradient(params: &FFParameters, coords: &[V3]) -> Result<(f64, Vec<V3>), FfError> {
    params.validate(coords.len())?;
    let mut energy = 0.0;
    let mut grad = vec![V3::zeros(); coords.len()];

    for b in &params.bonds {
        let [i, j] = b.atoms;
        let d = coords[i] - coords[j];
        let r = d.norm();
        let dr = r - b.r0;
        energy += 0.5 * b.k * dr * dr;
        if r > COINCIDENCE_TOLERANCE {
            let g = d * (b.k * dr / r);
            grad[i] += g;
            grad[j] -= g;
        }
    }
    for a in &params.angles {
        let [i, j, k] = a.atoms;
        let (theta, g) = angle_gradient([&coords[i], &coords[j], &coords[k]])?;
        let d = theta - a.theta0;
        energy += 0.5 * a.tau * d * d;
        for (idx, gv) in [i, j, k].into_iter().zip(g) {
            grad[idx] += gv * (a.tau * d);
        }
    }
    for t in &params.torsions {
        let [i, j, k, l] = t.atoms;
        let (phi, g) = dihedral_gradient([&coords[i], &coords[j], &coords[k], &coords[l]])?;
        let mut de = 0.0;
        for c in &t.components {
            let n = f64::from(c.n);
            energy += 0.5 * c.v * (1.0 + (n * phi - c.phase).cos());
            de -= 0.5 * c.v * n * (n * phi - c.phase).sin();
        }
        for (idx, gv) in [i, j, k, l].into_iter().zip(g) {
            grad[idx] += gv * de;
        }
    }
    if !params.charges.is_empty() {
        let ke = params.config.coulomb_constant;
        let excluded = |i: usize, j: usize| params.exclusions.iter().any(|&[a, b]| (a, b) == (i, j) || (a, b) == (j, i));
        for i in 0..coords.len() {
            for j in 0..i {
                let qq = params.charges[i] * params.charges[j];
                if qq == 0.0 || excluded(i, j) {
                    continue;
                }
                let d = coords[i] - coords[j];
                let r = d.norm();
                if r < COINCIDENCE_TOLERANCE {
                    return Err(FfError::Singularity(j, i));
                }
                energy += ke * qq / r;
                let g = d * (-ke * qq / (r * r * r));
                grad[i] += g;
                grad[j] -= g;
            }
        }
    }
    for lj in &params.lennard_jones {
        let [i, j] = lj.atoms;
        let d = coords[i] - coords[j];
        let r = d.norm();
        if r < COINCIDENCE_TOLERANCE {
            return Err(FfError::Singularity(i.min(j), i.max(j)));
        }
        let s6 = (lj.sigma / r).powi(6);
        energy += 4.0 * lj.epsilon * (s6 * s6 - s6);
        let de_dr = 4.0 * lj.epsilon * (-12.0 * s6 * s6 + 6.0 * s6) / r;
        let g = d * (de_dr / r);
        grad[i] += g;
        grad[j] -= g;
    }
    Ok((energy, grad))
}

/// Potential energy in kcal/mol.
pub fn evaluate_energy(params: &FFParameters, coords: &[V3]) -> Result<f64, FfError> {
    evaluate_gradient(params, coords).map(|(e, _)| e)
}

/// `−∇V`, kcal/(mol·Å).
pub fn forces(params: &FFParameters, coords: &[V3]) -> Result<Vec<V3>, FfError> {
    evaluate_gradient(params, coords).map(|(_, g)| g.into_iter().map(|v| -v).collect())
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn opposite_charges_at_unit_distance() {
        let params = FFParameters { charges: vec![1.0, -1.0], ..Default::default() };
        let coords = [V3::zeros(), V3::new(1.0, 0.0, 0.0)];
        let e = evaluate_energy(&params, &coords).unwrap();
        assert!((e + COULOMB_KCAL_ANGSTROM).abs() < 1e-12);
    }

    #[test]
    fn lj_minimum() {
        let params = FFParameters {
            lennard_jones: vec![LennardJonesPair { atoms: [0, 1], epsilon: 0.2, sigma: 3.1 }],
            ..Default::default()
        };
        let r = 2f64.powf(1.0 / 6.0) * 3.1;
        let coords = [V3::zeros(), V3::new(r, 0.0, 0.0)];
        let (e, g) = evaluate_gradient(&params, &coords).unwrap();
        assert!((e + 0.2).abs() < 1e-12);
        assert!(g.iter().all(|v| v.norm() < 1e-10));
    }

    #[test]
    fn bond_at_rest() {
        let params = FFParameters { bonds: vec![BondTerm { atoms: [0, 1], k: 300.0, r0: 1.5 }], ..Default::default() };
        let coords = [V3::zeros(), V3::new(0.0, 1.5, 0.0)];
        assert!(evaluate_energy(&params, &coords).unwrap().abs() < 1e-12);
    }

    #[test]
    fn coincident_nonbonded_atoms() {
        let params = FFParameters { charges: vec![0.5, 0.5], ..Default::default() };
        let coords = [V3::zeros(), V3::zeros()];
        assert_eq!(evaluate_energy(&params, &coords), Err(FfError::Singularity(0, 1)));
    }

    #[test]
    fn invalid_parameters() {
        let params = FFParameters { bonds: vec![BondTerm { atoms: [0, 3], k: 1.0, r0: 1.0 }], ..Default::default() };
        assert!(matches!(
            evaluate_energy(&params, &[V3::zeros(), V3::x()]),
            Err(FfError::IndexOutOfRange { index: 3, n_atoms: 2 })
        ));
        let params = FFParameters { bonds: vec![BondTerm { atoms: [0, 1], k: -1.0, r0: 1.0 }], ..Default::default() };
        assert!(matches!(evaluate_energy(&params, &[V3::zeros(), V3::x()]), Err(FfError::InvalidParameter(_))));
    }

    #[test]
    fn dihedral_conventions() {
        let a = V3::new(1.0, 0.0, 0.0);
        let b = V3::zeros();
        let c = V3::new(0.0, 0.0, 1.0);
        assert!(dihedral(&a, &b, &c, &V3::new(1.0, 0.0, 1.0)).abs() < 1e-12);
        assert!((dihedral(&a, &b, &c, &V3::new(-1.0, 0.0, 1.0)).abs() - std::f64::consts::PI).abs() < 1e-12);
        assert!((dihedral(&a, &b, &c, &V3::new(0.0, 1.0, 1.0)) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
