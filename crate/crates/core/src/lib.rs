//! Ground-state energy of minimal-basis H2 computed through an exact mapping
//! onto a classical two-spin Ising problem.
//!
//! The pipeline runs
//! [`integrals`] -> [`hamiltonian`] (fermionic terms, Bravyi-Kitaev image,
//! two-qubit reduction) -> [`ising_map`] -> [`ising_solver`] and back through
//! [`ising_map::recover_ground_energy`]. [`exact_diag`] and the Fock-space
//! builder in [`hamiltonian`] serve as independent checks; [`table`] holds the
//! published coefficient grid.

pub mod error;
pub mod exact_diag;
pub mod hamiltonian;
pub mod integrals;
pub mod ising_map;
pub mod ising_solver;
pub mod pauli;
pub mod table;

pub use error::{Error, Result};
pub use hamiltonian::{FourQubitCoefficients, ReducedCoefficients};
pub use ising_map::{IsingCoefficients, RecoveryReport};
pub use ising_solver::{IsingProblem, IsingSolution, Schedule, SolverConfig};
pub use pauli::{Pauli, PauliOperator, PauliString};

/// Smallest eigenvalue of a Hermitian Pauli operator via the Jacobi solver.
pub fn operator_ground_energy(op: &PauliOperator) -> Result<f64> {
    let m = exact_diag::HermitianMatrix::new(op.to_matrix()?)?;
    exact_diag::ground_energy(&m)
}

/// Sorted eigenvalues of a Hermitian Pauli operator.
pub fn operator_spectrum(op: &PauliOperator) -> Result<Vec<f64>> {
    let m = exact_diag::HermitianMatrix::new(op.to_matrix()?)?;
    exact_diag::eigenvalues(&m)
}

/// `g0` plus the lowest eigenvalue of the dense two-qubit Hamiltonian.
pub fn exact_ground_energy(g: &ReducedCoefficients) -> Result<f64> {
    Ok(g.g0 + operator_ground_energy(&g.h0_operator())?)
}
