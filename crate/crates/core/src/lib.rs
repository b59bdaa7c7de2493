//! Z2 Pauli symmetries and hierarchical Clifford transformations for qubit
//! Hamiltonians, with matrix-free exact diagonalization, entanglement
//! diagnostics and a warm-started statevector VQE.

pub mod gf2;
pub mod pauli;
pub mod dense;
pub mod symmetry;
pub mod hct;
pub mod solver;
pub mod registry;
pub mod vqe;
pub mod cli;
