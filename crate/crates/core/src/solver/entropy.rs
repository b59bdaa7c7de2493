//! Reduced density matrices, von Neumann entropies and mutual information.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{SolverError, Statevector};

/// Largest subsystem for which a reduced density matrix is built.
pub const MAX_REDUCED_QUBITS: usize = 12;

/// Eigenvalues at or below this are treated as zero.
const EIG_CLAMP: f64 = 1e-14;

fn validate_subset(n: usize, subset: &[usize]) -> Result<(), SolverError> {
    let mut seen = vec![false; n];
    for &q in subset {
        if q >= n {
            return Err(SolverError::Subset(format!("qubit {q} out of range for {n} qubits")));
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(SolverError::Subset(format!("qubit {q} listed twice")));
        }
    }
    Ok(())
}

/// Amplitudes arranged as a `2^|A| x 2^|B|` matrix, with `A` in the given order
/// (first entry most significant) and `B` the complement in ascending order.
fn bipartition(psi: &Statevector, subset: &[usize]) -> DMatrix<Complex64> {
    let n = psi.n();
    let mut in_a = vec![false; n];
    for &q in subset {
        in_a[q] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&q| !in_a[q]).collect();
    let (ka, kb) = (subset.len(), rest.len());
    let mut m = DMatrix::zeros(1 << ka, 1 << kb);
    for (s, &amp) in psi.amplitudes().iter().enumerate() {
        let bit = |q: usize| (s >> (n - 1 - q)) & 1;
        let a = subset.iter().fold(0usize, |acc, &q| (acc << 1) | bit(q));
        let b = rest.iter().fold(0usize, |acc, &q| (acc << 1) | bit(q));
        m[(a, b)] = amp;
    }
    m
}

/// `ρ_A = Tr_B |ψ><ψ|`, indexed with the first listed qubit most significant.
pub fn reduced_density(psi: &Statevector, subset: &[usize]) -> Result<DMatrix<Complex64>, SolverError> {
    validate_subset(psi.n(), subset)?;
    if subset.len() > MAX_REDUCED_QUBITS {
        return Err(SolverError::TooLarge {
            what: "reduced density matrix",
            got: subset.len(),
            limit: MAX_REDUCED_QUBITS,
        });
    }
    let m = bipartition(psi, subset);
    Ok(&m * m.adjoint())
}

/// `-Tr ρ ln ρ` of a Hermitian density matrix, in nats.
pub fn von_neumann(rho: &DMatrix<Complex64>) -> f64 {
    rho.clone()
        .symmetric_eigenvalues()
        .iter()
        .filter(|&&l| l > EIG_CLAMP)
        .map(|&l| -l * l.ln())
        .sum::<f64>()
        .max(0.0)
}

/// Entanglement entropy `S(A)`, computed on whichever side of the cut is smaller.
pub fn entanglement_entropy(psi: &Statevector, subset: &[usize]) -> Result<f64, SolverError> {
    let n = psi.n();
    validate_subset(n, subset)?;
    let complement: Vec<usize> = (0..n).filter(|q| !subset.contains(q)).collect();
    let side = if subset.len() <= complement.len() { subset } else { &complement[..] };
    if side.is_empty() {
        return Ok(0.0);
    }
    Ok(von_neumann(&reduced_density(psi, side)?))
}

/// `S({0..k-1})` for `k = 1..n-1`.
pub fn entropy_profile(psi: &Statevector) -> Result<Vec<f64>, SolverError> {
    (1..psi.n())
        .map(|k| entanglement_entropy(psi, &(0..k).collect::<Vec<_>>()))
        .collect()
}

/// Single-qubit entropies `S_i`.
pub fn single_qubit_entropies(psi: &Statevector) -> Vec<f64> {
    (0..psi.n())
        .map(|q| von_neumann(&one_qubit_density(psi, q)))
        .collect()
}

fn one_qubit_density(psi: &Statevector, q: usize) -> DMatrix<Complex64> {
    let n = psi.n();
    let bit = 1usize << (n - 1 - q);
    let amps = psi.amplitudes();
    let mut rho = DMatrix::<Complex64>::zeros(2, 2);
    for s in (0..amps.len()).filter(|s| s & bit == 0) {
        let (a0, a1) = (amps[s], amps[s | bit]);
        rho[(0, 0)] += a0 * a0.conj();
        rho[(0, 1)] += a0 * a1.conj();
        rho[(1, 1)] += a1 * a1.conj();
    }
    rho[(1, 0)] = rho[(0, 1)].conj();
    rho
}

fn two_qubit_density(psi: &Statevector, i: usize, j: usize) -> DMatrix<Complex64> {
    let n = psi.n();
    let (bi, bj) = (1usize << (n - 1 - i), 1usize << (n - 1 - j));
    let amps = psi.amplitudes();
    let offs = [0, bj, bi, bi | bj];
    let mut rho = DMatrix::<Complex64>::zeros(4, 4);
    for s in (0..amps.len()).filter(|s| s & (bi | bj) == 0) {
        let v = offs.map(|o| amps[s | o]);
        for a in 0..4 {
            for b in a..4 {
                rho[(a, b)] += v[a] * v[b].conj();
            }
        }
    }
    for a in 0..4 {
        for b in 0..a {
            rho[(a, b)] = rho[(b, a)].conj();
        }
    }
    rho
}

/// `I(i,j) = S_i + S_j − S_ij` for `i != j`; the diagonal is zero.
pub fn mutual_information(psi: &Statevector) -> Vec<Vec<f64>> {
    let n = psi.n();
    let s1 = single_qubit_entropies(psi);
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = (s1[i] + s1[j] - von_neumann(&two_qubit_density(psi, i, j))).max(0.0);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}
