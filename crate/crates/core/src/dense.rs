//! Dense matrix forms of Pauli operators, for small systems and test oracles.
//!
//! Basis index convention matches the statevector: qubit 0 is the most
//! significant bit.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::pauli::{PauliString, PauliSum};

/// Largest qubit count accepted by the dense builders.
pub const MAX_DENSE_QUBITS: usize = 12;

pub(crate) const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

fn check_size(n: usize) {
    assert!(n <= MAX_DENSE_QUBITS, "dense matrix requested for {n} > {MAX_DENSE_QUBITS} qubits");
}

/// Full `2^n x 2^n` matrix of a Pauli string, including its phase.
pub fn pauli_matrix(p: &PauliString) -> DMatrix<Complex64> {
    let n = p.n();
    check_size(n);
    let dim = 1usize << n;
    let (x, z) = p.masks();
    let ph = I_POW[p.phase_exp() as usize];
    let mut m = DMatrix::zeros(dim, dim);
    for s in 0..dim {
        let sign = if (z & s as u64).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        m[((s as u64 ^ x) as usize, s)] = ph * sign;
    }
    m
}

/// Full matrix of a Pauli sum.
pub fn sum_matrix(h: &PauliSum) -> DMatrix<Complex64> {
    let n = h.n();
    check_size(n);
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for (p, c) in h.iter() {
        let (x, z) = p.masks();
        let ph = I_POW[p.phase_exp() as usize] * c;
        for s in 0..dim {
            let sign = if (z & s as u64).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            m[((s as u64 ^ x) as usize, s)] += ph * sign;
        }
    }
    m
}

/// Sorted eigenvalues of a Hermitian Pauli sum.
pub fn eigenvalues(h: &PauliSum) -> Vec<f64> {
    let m = sum_matrix(h);
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Lowest eigenpair of a Hermitian Pauli sum by full diagonalization.
pub fn ground_state(h: &PauliSum) -> (f64, DVector<Complex64>) {
    let eig = sum_matrix(h).symmetric_eigen();
    let k = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty spectrum");
    (eig.eigenvalues[k], eig.eigenvectors.column(k).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_matrices() {
        let y = pauli_matrix(&"Y".parse().unwrap());
        assert_eq!(y[(0, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], Complex64::new(0.0, 1.0));
        let zi = pauli_matrix(&"ZI".parse().unwrap());
        // qubit 0 is the high bit: Z on it flips the sign of indices 2 and 3
        assert_eq!(zi[(2, 2)].re, -1.0);
        assert_eq!(zi[(1, 1)].re, 1.0);
    }

    #[test]
    fn eigenvalues_of_simple_sum() {
        let h = PauliSum::from_terms(2, [(1.0, "ZZ"), (0.5, "XX")]).unwrap();
        let ev = eigenvalues(&h);
        let want = [-1.5, -0.5, 0.5, 1.5];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
