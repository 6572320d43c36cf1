//! Second-quantized H2 Hamiltonian, its four-mode Bravyi-Kitaev image, and the
//! reduction to two qubits.
//!
//! Modes are the spin orbitals (g alpha, g beta, u alpha, u beta) = (0, 1, 2, 3).
//! In the Bravyi-Kitaev encoding qubit 1 holds the parity of modes 0 and 1 and
//! qubit 3 the parity of all four, so both are constants of motion. Every
//! Pauli string of the resulting operator lies in a fixed 15-element support
//! with eight distinct coefficients `f0..f7`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrals::{self, SpinOrbitalIntegrals};
use crate::pauli::{Pauli, PauliOperator};

pub const MODES: usize = 4;

/// Tolerance for stray Pauli strings and for the coefficient degeneracy pattern.
pub const STRUCTURE_TOLERANCE: f64 = 1e-10;
/// Largest imaginary part accepted on a collected coefficient.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderOp {
    pub mode: usize,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }
}

/// `coefficient * op_0 op_1 ... op_k` with the leftmost operator applied last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionTerm {
    pub coefficient: f64,
    pub ops: Vec<LadderOp>,
}

impl FermionTerm {
    pub fn new(coefficient: f64, ops: Vec<LadderOp>) -> Self {
        Self { coefficient, ops }
    }

    /// `c a+_i a_j`
    pub fn one_body(coefficient: f64, i: usize, j: usize) -> Self {
        Self::new(coefficient, vec![LadderOp::create(i), LadderOp::annihilate(j)])
    }

    /// `c a+_i a+_j a_k a_l`
    pub fn two_body(coefficient: f64, i: usize, j: usize, k: usize, l: usize) -> Self {
        Self::new(
            coefficient,
            vec![LadderOp::create(i), LadderOp::create(j), LadderOp::annihilate(k), LadderOp::annihilate(l)],
        )
    }
}

impl fmt::Display for FermionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient)?;
        for op in &self.ops {
            write!(f, " a{}{}", op.mode, if op.dagger { "^" } else { "" })?;
        }
        Ok(())
    }
}

/// A fermionic term list plus a scalar offset (the nuclear repulsion).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FermionHamiltonian {
    pub terms: Vec<FermionTerm>,
    pub constant: f64,
}

/// The H2 term list: number operators, the Coulomb and Coulomb-minus-exchange
/// pairs, and the two double-excitation pairs. Zero coefficients are skipped.
pub fn build_second_quantized(ints: &SpinOrbitalIntegrals) -> FermionHamiltonian {
    let h = |i: usize, j: usize, k: usize, l: usize| ints.h4(i, j, k, l);
    let candidates = [
        FermionTerm::one_body(ints.one_body[0][0], 0, 0),
        FermionTerm::one_body(ints.one_body[1][1], 1, 1),
        FermionTerm::one_body(ints.one_body[2][2], 2, 2),
        FermionTerm::one_body(ints.one_body[3][3], 3, 3),
        FermionTerm::two_body(h(0, 1, 1, 0), 0, 1, 1, 0),
        FermionTerm::two_body(h(2, 3, 3, 2), 2, 3, 3, 2),
        FermionTerm::two_body(h(0, 3, 3, 0), 0, 3, 3, 0),
        FermionTerm::two_body(h(1, 2, 2, 1), 1, 2, 2, 1),
        FermionTerm::two_body(h(0, 2, 2, 0) - h(0, 2, 0, 2), 0, 2, 2, 0),
        FermionTerm::two_body(h(1, 3, 3, 1) - h(1, 3, 1, 3), 1, 3, 3, 1),
        FermionTerm::two_body(h(0, 1, 3, 2), 0, 1, 3, 2),
        FermionTerm::two_body(h(0, 1, 3, 2), 2, 3, 1, 0),
        FermionTerm::two_body(h(0, 3, 1, 2), 0, 3, 1, 2),
        FermionTerm::two_body(h(0, 3, 1, 2), 2, 1, 3, 0),
    ];
    FermionHamiltonian {
        terms: candidates.into_iter().filter(|t| t.coefficient != 0.0).collect(),
        constant: ints.e_nuc,
    }
}

/// Pauli image of a single ladder operator, `(P -/+ iQ) / 2`.
pub fn ladder_operator(op: LadderOp) -> Result<PauliOperator> {
    use Pauli::*;
    let (p, q): (&[(usize, Pauli)], &[(usize, Pauli)]) = match op.mode {
        0 => (&[(0, X), (1, X), (3, X)], &[(0, Y), (1, X), (3, X)]),
        1 => (&[(0, Z), (1, X), (3, X)], &[(1, Y), (3, X)]),
        2 => (&[(1, Z), (2, X), (3, X)], &[(1, Z), (2, Y), (3, X)]),
        3 => (&[(1, Z), (2, Z), (3, X)], &[(3, Y)]),
        m => return Err(Error::Unsupported(format!("mode {m}: the substitution table covers modes 0..3"))),
    };
    let sign = if op.dagger { -1.0 } else { 1.0 };
    let p = PauliOperator::real_term(MODES, p, 0.5)?;
    let q = PauliOperator::real_term(MODES, q, 0.5)?.scale(Complex64::new(0.0, sign));
    p.add(&q)
}

/// Substitutes every ladder operator and collects the result.
pub fn bravyi_kitaev(h: &FermionHamiltonian) -> Result<PauliOperator> {
    let images: Vec<[PauliOperator; 2]> = (0..MODES)
        .map(|m| Ok([ladder_operator(LadderOp::annihilate(m))?, ladder_operator(LadderOp::create(m))?]))
        .collect::<Result<_>>()?;
    let mut total = PauliOperator::identity(MODES).scale_real(h.constant);
    for term in &h.terms {
        let mut product = PauliOperator::identity(MODES).scale_real(term.coefficient);
        for op in &term.ops {
            if op.mode >= MODES {
                return Err(Error::Unsupported(format!("mode {}: the substitution table covers modes 0..3", op.mode)));
            }
            product = product.multiply(&images[op.mode][usize::from(op.dagger)])?;
        }
        total = total.add(&product)?;
    }
    Ok(total)
}

/// Occupation-number annihilation operator on `modes` modes. Basis index bit
/// `j` is the occupation of mode `j`; the sign is the parity of lower modes.
pub fn annihilation_matrix(modes: usize, mode: usize) -> DMatrix<f64> {
    let dim = 1usize << modes;
    let mut m = DMatrix::zeros(dim, dim);
    for s in 0..dim {
        if (s >> mode) & 1 == 1 {
            let below = (s & ((1 << mode) - 1)).count_ones();
            m[(s ^ (1 << mode), s)] = if below % 2 == 0 { 1.0 } else { -1.0 };
        }
    }
    m
}

/// Dense 16x16 matrix of the term list built directly in the occupation basis.
pub fn fock_space_oracle(h: &FermionHamiltonian) -> Result<DMatrix<f64>> {
    let dim = 1usize << MODES;
    let ann: Vec<DMatrix<f64>> = (0..MODES).map(|m| annihilation_matrix(MODES, m)).collect();
    let cre: Vec<DMatrix<f64>> = ann.iter().map(|a| a.transpose()).collect();
    let mut out = DMatrix::<f64>::identity(dim, dim) * h.constant;
    for term in &h.terms {
        let mut product = DMatrix::<f64>::identity(dim, dim) * term.coefficient;
        for op in &term.ops {
            if op.mode >= MODES {
                return Err(Error::Unsupported(format!("mode {} outside 0..3", op.mode)));
            }
            product *= if op.dagger { &cre[op.mode] } else { &ann[op.mode] };
        }
        out += product;
    }
    Ok(out)
}

/// The eight distinct coefficients of the four-qubit operator.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourQubitCoefficients {
    pub f0: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
    pub f5: f64,
    pub f6: f64,
    pub f7: f64,
}

/// Support of the four-qubit operator (qubit 0 first) and which `f` each string carries.
pub const FOUR_QUBIT_SUPPORT: [(&str, usize); 15] = [
    ("IIII", 0),
    ("ZIII", 1),
    ("IZII", 2),
    ("IIZI", 3),
    ("ZZII", 1),
    ("ZIZI", 4),
    ("IZIZ", 5),
    ("XZXI", 6),
    ("YZYI", 6),
    ("ZZZI", 7),
    ("ZIZZ", 4),
    ("IZZZ", 3),
    ("XZXZ", 6),
    ("YZYZ", 6),
    ("ZZZZ", 7),
];

impl FourQubitCoefficients {
    pub fn as_array(&self) -> [f64; 8] {
        [self.f0, self.f1, self.f2, self.f3, self.f4, self.f5, self.f6, self.f7]
    }

    pub fn from_array(f: [f64; 8]) -> Self {
        Self { f0: f[0], f1: f[1], f2: f[2], f3: f[3], f4: f[4], f5: f[5], f6: f[6], f7: f[7] }
    }

    /// The 15-term operator these coefficients describe.
    pub fn to_operator(&self) -> PauliOperator {
        let f = self.as_array();
        PauliOperator::from_labels(MODES, FOUR_QUBIT_SUPPORT.iter().map(|&(s, k)| (s, Complex64::new(f[k], 0.0))))
            .expect("support labels are valid")
    }
}

/// Reads `f0..f7` from a collected operator and checks its structure.
pub fn collect_f(op: &PauliOperator) -> Result<FourQubitCoefficients> {
    if op.qubit_count() != MODES {
        return Err(Error::Dimension { left: op.qubit_count(), right: MODES });
    }
    let support: Vec<(Vec<Pauli>, usize)> = FOUR_QUBIT_SUPPORT
        .iter()
        .map(|&(s, k)| (s.chars().map(|c| Pauli::from_char(c).unwrap()).collect(), k))
        .collect();

    for (letters, c) in op.terms() {
        let label: String = letters.iter().map(|p| p.as_char()).collect();
        if !support.iter().any(|(s, _)| s.as_slice() == letters) && c.norm() > STRUCTURE_TOLERANCE {
            return Err(Error::Structure(format!("unexpected term {label} with coefficient {c}")));
        }
        if c.im.abs() > HERMITIAN_TOLERANCE {
            return Err(Error::Structure(format!("coefficient of {label} is not real: {c}")));
        }
    }

    let mut f: [Option<f64>; 8] = [None; 8];
    for (letters, k) in &support {
        let value = op.coefficient(letters).re;
        match f[*k] {
            None => f[*k] = Some(value),
            Some(first) if (first - value).abs() > STRUCTURE_TOLERANCE => {
                let label: String = letters.iter().map(|p| p.as_char()).collect();
                return Err(Error::Structure(format!(
                    "degeneracy broken: {label} has {value}, expected f{k} = {first}"
                )));
            }
            Some(_) => {}
        }
    }
    Ok(FourQubitCoefficients::from_array(f.map(|x| x.unwrap_or(0.0))))
}

/// Coefficients of `g0 + g1 Z0 + g2 Z1 + g3 Z0 Z1 + g4 (X0 X1 + Y0 Y1)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ReducedCoefficients {
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
    /// Bond length (bohr) these coefficients belong to, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

impl ReducedCoefficients {
    pub fn new(g0: f64, g1: f64, g2: f64, g3: f64, g4: f64) -> Self {
        Self { g0, g1, g2, g3, g4, r: None }
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.g0, self.g1, self.g2, self.g3, self.g4]
    }

    /// The traceless part `H0` (no `g0`).
    pub fn h0_operator(&self) -> PauliOperator {
        two_qubit_operator(0.0, self.g1, self.g2, self.g3, self.g4)
    }

    /// `g0 + H0`.
    pub fn operator(&self) -> PauliOperator {
        two_qubit_operator(self.g0, self.g1, self.g2, self.g3, self.g4)
    }
}

fn two_qubit_operator(g0: f64, g1: f64, g2: f64, g3: f64, g4: f64) -> PauliOperator {
    let r = |x: f64| Complex64::new(x, 0.0);
    PauliOperator::from_labels(2, [("II", r(g0)), ("ZI", r(g1)), ("IZ", r(g2)), ("ZZ", r(g3)), ("XX", r(g4)), ("YY", r(g4))])
        .expect("labels are valid")
}

/// Restriction of the four-qubit operator to the block where qubits 1 and 3
/// have Z eigenvalues `z1` and `z3`, written on qubits (0, 2) -> (0, 1).
pub fn sector_operator(f: &FourQubitCoefficients, z1: f64, z3: f64) -> PauliOperator {
    let identity = f.f0 + f.f2 * z1 + f.f5 * z1 * z3;
    let z0 = f.f1 * (1.0 + z1);
    let z2 = f.f3 * (1.0 + z1 * z3);
    let zz = (f.f4 + f.f7 * z1) * (1.0 + z3);
    let hop = f.f6 * z1 * (1.0 + z3);
    two_qubit_operator(identity, z0, z2, zz, hop)
}

/// Two-qubit coefficients in the sector where qubits 1 and 3 stay in |0>,
/// which holds the two-electron singlet ground state:
///
/// ```text
/// g0 = f0 + f2 + f5, g1 = 2 f1, g2 = 2 f3, g3 = 2 (f4 + f7), g4 = 2 f6
/// ```
pub fn reduce_to_two_qubits(f: &FourQubitCoefficients) -> ReducedCoefficients {
    ReducedCoefficients::new(f.f0 + f.f2 + f.f5, 2.0 * f.f1, 2.0 * f.f3, 2.0 * (f.f4 + f.f7), 2.0 * f.f6)
}

/// Full chain from bond length to `g` through the integrals.
pub fn computed_coefficients(r: f64, zeta: f64) -> Result<ReducedCoefficients> {
    let ints = integrals::build_mo_integrals(r, zeta)?;
    let op = bravyi_kitaev(&build_second_quantized(&ints))?;
    Ok(reduce_to_two_qubits(&collect_f(&op)?).with_r(r))
}
