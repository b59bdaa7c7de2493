//! Restarted Lanczos with full reorthogonalization.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{inner, norm, CompiledSum, SolverError, Statevector};
use crate::dense;
use crate::pauli::PauliSum;

/// Systems at or below this size are diagonalized densely.
pub const DENSE_CUTOFF: usize = 8;

#[derive(Debug, Clone)]
pub struct LanczosConfig {
    /// Converged when `‖Hψ − Eψ‖ ≤ tol · max(1, |E|)`.
    pub tol: f64,
    pub krylov_dim: usize,
    pub max_restarts: usize,
    /// Seed of the random start vector.
    pub seed: u64,
    /// Second Ritz value within this distance flags a degenerate ground space.
    pub degeneracy_tol: f64,
    /// Force the iterative path even for small systems.
    pub force_iterative: bool,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            krylov_dim: 80,
            max_restarts: 200,
            seed: 0x5eed,
            degeneracy_tol: 1e-8,
            force_iterative: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub state: Statevector,
    pub residual: f64,
    /// Estimate of the next eigenvalue (second Ritz value of the last cycle).
    pub second: Option<f64>,
    pub degenerate: bool,
    pub matvecs: usize,
    pub seed: u64,
}

/// Lowest eigenpair of a Hermitian Pauli sum.
pub fn ground_state_with(h: &PauliSum, cfg: &LanczosConfig) -> Result<GroundState, SolverError> {
    if h.n() <= DENSE_CUTOFF && !cfg.force_iterative {
        return dense_ground_state(h, cfg);
    }
    let op = CompiledSum::new(h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let start = Statevector::random(h.n(), &mut rng);
    lanczos(&op, start.into_amplitudes(), cfg)
}

/// Lowest eigenvalue only.
pub fn lowest_eigenvalue(h: &PauliSum, tol: f64) -> Result<f64, SolverError> {
    let cfg = LanczosConfig {
        tol,
        ..LanczosConfig::default()
    };
    Ok(ground_state_with(h, &cfg)?.energy)
}

fn dense_ground_state(h: &PauliSum, cfg: &LanczosConfig) -> Result<GroundState, SolverError> {
    let m = dense::sum_matrix(h);
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let k = order[0];
    let energy = eig.eigenvalues[k];
    let v: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
    let state = Statevector::from_amplitudes(v);
    let hv = CompiledSum::new(h)?.apply(state.amplitudes());
    let residual = residual(&hv, state.amplitudes(), energy);
    let second = order.get(1).map(|&j| eig.eigenvalues[j]);
    Ok(GroundState {
        energy,
        residual,
        degenerate: second.is_some_and(|s| s - energy < cfg.degeneracy_tol),
        second,
        state,
        matvecs: 0,
        seed: cfg.seed,
    })
}

fn residual(hv: &[Complex64], v: &[Complex64], e: f64) -> f64 {
    hv.iter()
        .zip(v)
        .map(|(a, b)| (a - b * e).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn lanczos(op: &CompiledSum, start: Vec<Complex64>, cfg: &LanczosConfig) -> Result<GroundState, SolverError> {
    let dim = start.len();
    let kmax = cfg.krylov_dim.clamp(2, dim.max(2));
    let mut v0 = start;
    let mut matvecs = 0;
    let mut last = (f64::NAN, f64::INFINITY);
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    for restart in 0..=cfg.max_restarts {
        let nv = norm(&v0);
        v0.iter_mut().for_each(|a| *a /= nv);
        let mut basis: Vec<Vec<Complex64>> = vec![v0];
        let mut alpha: Vec<f64> = Vec::with_capacity(kmax);
        let mut beta: Vec<f64> = Vec::with_capacity(kmax);
        loop {
            let j = basis.len() - 1;
            op.apply_into(&basis[j], &mut w);
            matvecs += 1;
            let a = inner(&basis[j], &w).re;
            alpha.push(a);
            // classical Gram-Schmidt against the whole basis, repeated when the
            // norm drops enough to signal cancellation
            let mut bnorm = norm(&w);
            for _ in 0..3 {
                for b in &basis {
                    let ov = inner(b, &w);
                    for (x, y) in w.iter_mut().zip(b) {
                        *x -= y * ov;
                    }
                }
                let after = norm(&w);
                let done = after > 0.7 * bnorm;
                bnorm = after;
                if done {
                    break;
                }
            }
            if basis.len() == kmax || bnorm < 1e-12 * a.abs().max(1.0) {
                break;
            }
            beta.push(bnorm);
            basis.push(w.iter().map(|x| x / bnorm).collect());
        }
        let k = alpha.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let theta = eig.eigenvalues[order[0]];
        let second = order.get(1).map(|&i| eig.eigenvalues[i]);
        let s = eig.eigenvectors.column(order[0]);
        let mut y = vec![Complex64::new(0.0, 0.0); dim];
        for (coef, b) in s.iter().zip(&basis) {
            for (yy, bb) in y.iter_mut().zip(b) {
                *yy += bb * *coef;
            }
        }
        let ny = norm(&y);
        y.iter_mut().for_each(|a| *a /= ny);
        op.apply_into(&y, &mut w);
        matvecs += 1;
        let energy = inner(&y, &w).re;
        let res = residual(&w, &y, energy);
        last = (energy, res);
        if res <= cfg.tol * energy.abs().max(1.0) {
            return Ok(GroundState {
                energy,
                state: Statevector::from_amplitudes(y),
                residual: res,
                degenerate: second.is_some_and(|s| s - theta < cfg.degeneracy_tol),
                second,
                matvecs,
                seed: cfg.seed,
            });
        }
        if restart == cfg.max_restarts {
            break;
        }
        v0 = y;
    }
    Err(SolverError::NotConverged {
        restarts: cfg.max_restarts,
        energy: last.0,
        residual: last.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_sum(n: usize, terms: usize, seed: u64) -> PauliSum {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = PauliSum::new(n);
        for _ in 0..terms {
            let label: String = (0..n).map(|_| ['I', 'X', 'Y', 'Z'][rng.gen_range(0..4)]).collect();
            h.add(rng.gen_range(-1.0..1.0), &label.parse().unwrap()).unwrap();
        }
        h
    }

    #[test]
    fn single_qubit_examples() {
        let h = PauliSum::from_terms(1, [(-1.0, "Z")]).unwrap();
        let (e, psi) = super::super::ground_state(&h, 1e-10).unwrap();
        assert!((e + 1.0).abs() < 1e-12);
        assert!(psi.distance_up_to_phase(&Statevector::zero(1)) < 1e-10);
        let h = PauliSum::from_terms(1, [(-1.0, "X")]).unwrap();
        let (e, psi) = super::super::ground_state(&h, 1e-10).unwrap();
        assert!((e + 1.0).abs() < 1e-12);
        let plus = Statevector::from_amplitudes(vec![Complex64::new(1.0, 0.0); 2]);
        assert!(psi.distance_up_to_phase(&plus) < 1e-10);
    }

    #[test]
    fn iterative_matches_dense() {
        for seed in 0..4 {
            let h = random_sum(7, 30, seed);
            let cfg = LanczosConfig {
                tol: 1e-10,
                force_iterative: true,
                krylov_dim: 30,
                ..LanczosConfig::default()
            };
            let g = ground_state_with(&h, &cfg).unwrap();
            let exact = dense::eigenvalues(&h)[0];
            assert!((g.energy - exact).abs() < 1e-9, "{} vs {exact}", g.energy);
            assert!(g.residual <= 1e-10 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn degeneracy_is_flagged() {
        // the idle third qubit doubles every level
        let h = PauliSum::from_terms(3, [(1.0, "ZZI"), (0.5, "XII")]).unwrap();
        let g = ground_state_with(&h, &LanczosConfig::default()).unwrap();
        assert!(g.degenerate);
        let h = PauliSum::from_terms(2, [(1.0, "ZI"), (0.5, "IZ")]).unwrap();
        let g = ground_state_with(&h, &LanczosConfig::default()).unwrap();
        assert!(!g.degenerate);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let h = random_sum(9, 40, 1);
        let cfg = LanczosConfig {
            tol: 1e-14,
            krylov_dim: 3,
            max_restarts: 2,
            ..LanczosConfig::default()
        };
        assert!(matches!(ground_state_with(&h, &cfg), Err(SolverError::NotConverged { .. })));
    }
}
