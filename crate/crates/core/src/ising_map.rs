//! Exact mapping of the two-qubit Hamiltonian onto a two-spin Ising problem.
//!
//! With `H0 = g1 Z0 + g2 Z1 + g3 Z0 Z1 + g4 (X0 X1 + Y0 Y1)` the operator
//! `H1 = H0^2 + 2 g3 H0` is diagonal:
//!
//! ```text
//! H1 = a1 + a2 (Z0 + Z1) + a3 Z0 Z1
//! a1 = g1^2 + g2^2 + g3^2 + 2 g4^2
//! a2 = 2 (g1 + g2) g3
//! a3 = 2 (g1 g2 - g4^2 + g3^2)
//! ```
//!
//! Every eigenvalue `x` of `H0` appears in `H1` as `x^2 + 2 g3 x`. Once `g3`
//! exceeds `|g1| + |g2| + |g4|` the minimum of `H1` comes from the odd-parity
//! eigenvalue `-g3 - C`, `C = sqrt((g1 - g2)^2 + 4 g4^2)`, so the Ising
//! minimum `Y` determines it through the smaller root of `x^2 + 2 g3 x = Y`.
//! Smaller `g3` are shifted up by `delta` first and the shift is undone after
//! solving; `C` does not depend on `g3`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::ReducedCoefficients;
use crate::ising_solver::{IsingProblem, IsingSolution, SolverConfig};
use crate::pauli::PauliOperator;

/// Extra margin added when `g3 <= 0` so the shifted value is strictly large enough.
pub const NONPOSITIVE_G3_MARGIN: f64 = 1e-6;
/// Negative discriminants down to this are rounding noise and clipped to zero.
pub const DISCRIMINANT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub g3_shifted: f64,
    pub delta: f64,
}

impl IsingCoefficients {
    /// `a1 + a2 (Z0 + Z1) + a3 Z0 Z1`.
    pub fn to_operator(&self) -> PauliOperator {
        let r = |x: f64| Complex64::new(x, 0.0);
        PauliOperator::from_labels(2, [("II", r(self.a1)), ("ZI", r(self.a2)), ("IZ", r(self.a2)), ("ZZ", r(self.a3))])
            .expect("labels are valid")
    }
}

/// Odd-sector gap constant `sqrt((g1 - g2)^2 + 4 g4^2)`.
pub fn gap_constant(g: &ReducedCoefficients) -> f64 {
    (g.g1 - g.g2).hypot(2.0 * g.g4)
}

/// Shift applied to `g3` before squaring.
pub fn shift_for(g: &ReducedCoefficients) -> f64 {
    let s = g.g1.abs() + g.g2.abs() + g.g4.abs();
    if g.g3 > 0.0 {
        if s < g.g3 {
            0.0
        } else {
            s
        }
    } else {
        s - g.g3 + NONPOSITIVE_G3_MARGIN
    }
}

/// Ising coefficients of the shifted Hamiltonian.
pub fn apply_shift(g: &ReducedCoefficients) -> IsingCoefficients {
    let delta = shift_for(g);
    let g3 = g.g3 + delta;
    IsingCoefficients {
        a1: g.g1 * g.g1 + g.g2 * g.g2 + g3 * g3 + 2.0 * g.g4 * g.g4,
        a2: 2.0 * (g.g1 + g.g2) * g3,
        a3: 2.0 * (g.g1 * g.g2 - g.g4 * g.g4 + g3 * g3),
        g3_shifted: g3,
        delta,
    }
}

/// Two-spin problem: offset `a1`, fields `(a2, a2)`, coupling `J01 = a3`.
pub fn to_ising_problem(a: &IsingCoefficients) -> IsingProblem {
    IsingProblem::new(2, a.a1, vec![a.a2, a.a2], [(0, 1, a.a3)]).expect("two-spin problem is well formed")
}

/// Eigenvalues of `H0`: `g3 + g1 + g2`, `g3 - g1 - g2`, `-g3 - C`, `-g3 + C`.
pub fn closed_form_spectrum(g: &ReducedCoefficients) -> [f64; 4] {
    let c = gap_constant(g);
    [g.g3 + g.g1 + g.g2, g.g3 - g.g1 - g.g2, -g.g3 - c, -g.g3 + c]
}

/// `g0` plus the smallest eigenvalue of `H0`.
pub fn closed_form_ground_energy(g: &ReducedCoefficients) -> f64 {
    g.g0 + closed_form_spectrum(g).into_iter().fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryReport {
    pub g: ReducedCoefficients,
    pub delta: f64,
    pub g3_shifted: f64,
    pub y_min: f64,
    /// Roots of `x^2 + 2 g3' x = Y`, smaller first.
    pub roots: (f64, f64),
    pub x0: f64,
    pub c: f64,
    /// `x0 + delta`, the odd-parity eigenvalue `-g3 - C`.
    pub odd_sector_energy: f64,
    /// `(g3 - g1 - g2, g3 + g1 + g2)`.
    pub diagonal_energies: (f64, f64),
    /// Total energy including `g0`.
    pub ground_energy: f64,
}

/// Recovers the ground energy from the minimum `y_min` of the shifted problem.
pub fn recover_ground_energy(g: &ReducedCoefficients, y_min: f64, delta: f64) -> Result<RecoveryReport> {
    let g3s = g.g3 + delta;
    let disc = g3s * g3s + y_min;
    if disc < -DISCRIMINANT_TOLERANCE || !disc.is_finite() {
        return Err(Error::Inconsistent(format!(
            "Y = {y_min} is below the minimum {} of x^2 + 2 g3' x",
            -g3s * g3s
        )));
    }
    let root = disc.max(0.0).sqrt();
    let roots = (-g3s - root, -g3s + root);
    let x0 = roots.0;
    let odd = x0 + delta;
    let diagonal = (g.g3 - g.g1 - g.g2, g.g3 + g.g1 + g.g2);
    Ok(RecoveryReport {
        g: *g,
        delta,
        g3_shifted: g3s,
        y_min,
        roots,
        x0,
        c: gap_constant(g),
        odd_sector_energy: odd,
        diagonal_energies: diagonal,
        ground_energy: g.g0 + odd.min(diagonal.0).min(diagonal.1),
    })
}

/// Result of solving one coefficient set through the Ising route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappedSolve {
    pub coefficients: IsingCoefficients,
    pub problem: IsingProblem,
    pub solution: IsingSolution,
    pub recovery: RecoveryReport,
}

/// Shift, map, solve, recover.
pub fn solve_via_ising(g: &ReducedCoefficients, solver: &SolverConfig) -> Result<MappedSolve> {
    let coefficients = apply_shift(g);
    let problem = to_ising_problem(&coefficients);
    let solution = solver.solve(&problem)?;
    let recovery = recover_ground_energy(g, solution.energy, coefficients.delta)?;
    Ok(MappedSolve { coefficients, problem, solution, recovery })
}
