//! Derivative-free minimizers used by the variational loop.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Bernoulli, Distribution};

/// Number of consecutive small changes required to declare convergence.
pub const STALL_WINDOW: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// Best value after each iteration.
    pub trace: Vec<f64>,
    pub converged: bool,
}

/// Nelder-Mead with dimension-adaptive coefficients.
///
/// An iteration counts toward convergence when it moves the best value by
/// less than `tol` while the simplex spread is also below `tol`; ten such
/// iterations in a row end the run.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], step: f64, max_iter: usize, tol: f64) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        f(x)
    };
    if n == 0 {
        let value = eval(x0);
        return Minimum { point: Vec::new(), value, iterations: 0, evaluations: 1, trace: vec![value], converged: true };
    }
    let nf = n as f64;
    let (alpha, gamma, rho, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf);

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x);
        simplex.push((x, v));
    }
    let order = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    order(&mut simplex);

    let mut trace = vec![simplex[0].1];
    let mut quiet = 0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        let before = simplex[0].1;
        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / nf).collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect() };

        let xr = along(alpha);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(alpha * gamma);
            let fe = eval(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let x = along(alpha * rho);
                let v = eval(&x);
                (x, v)
            } else {
                let x = along(-rho);
                let v = eval(&x);
                (x, v)
            };
            if fc < fr.min(worst.1) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = best.iter().zip(&vertex.0).map(|(b, v)| b + sigma * (v - b)).collect();
                    let v = eval(&x);
                    *vertex = (x, v);
                }
            }
        }
        order(&mut simplex);
        trace.push(simplex[0].1);
        let spread = simplex[n].1 - simplex[0].1;
        if (before - simplex[0].1).abs() < tol && spread < tol {
            quiet += 1;
            if quiet >= STALL_WINDOW {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let (point, value) = simplex.swap_remove(0);
    Minimum { point, value, iterations, evaluations, trace, converged }
}

/// Simultaneous perturbation stochastic approximation with the standard
/// gain decay exponents (0.602, 0.101).
///
/// Each iteration moves the iterate; the returned point is the best one
/// evaluated. Convergence: ten consecutive iterations whose iterate value
/// changes by less than `tol`.
pub fn spsa<F>(mut f: F, x0: &[f64], a: f64, c: f64, max_iter: usize, tol: f64, seed: u64) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coin = Bernoulli::new(0.5).expect("valid probability");
    let stability = (max_iter as f64 * 0.1).max(1.0);
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut evaluations = 1;
    let (mut best_x, mut best) = (x.clone(), fx);
    let mut trace = vec![best];
    let mut quiet = 0;
    let mut iterations = 0;
    let mut converged = n == 0;
    while iterations < max_iter && !converged {
        iterations += 1;
        let k = iterations as f64;
        let ak = a / (k + stability).powf(0.602);
        let ck = c / k.powf(0.101);
        let delta: Vec<f64> = (0..n).map(|_| if coin.sample(&mut rng) { 1.0 } else { -1.0 }).collect();
        let plus: Vec<f64> = x.iter().zip(&delta).map(|(v, d)| v + ck * d).collect();
        let minus: Vec<f64> = x.iter().zip(&delta).map(|(v, d)| v - ck * d).collect();
        let diff = (f(&plus) - f(&minus)) / (2.0 * ck);
        for (v, d) in x.iter_mut().zip(&delta) {
            *v -= ak * diff / d;
        }
        let previous = fx;
        fx = f(&x);
        evaluations += 3;
        if fx < best {
            best = fx;
            best_x.clone_from(&x);
        }
        trace.push(best);
        if (fx - previous).abs() < tol {
            quiet += 1;
            converged = quiet >= STALL_WINDOW;
        } else {
            quiet = 0;
        }
    }
    Minimum { point: best_x, value: best, iterations, evaluations, trace, converged }
}
