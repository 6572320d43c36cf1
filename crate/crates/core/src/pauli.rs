//! Pauli strings and weighted sums of them.
//!
//! A [`PauliString`] is a tensor product of single-qubit Pauli letters with an
//! exact phase in {+1, +i, -1, -i}. A [`PauliOperator`] is a complex-weighted
//! sum of phase-free strings; any phase produced by multiplication is folded
//! into the coefficient. Qubit 0 is written first in string form and is the
//! least-significant bit of matrix indices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients with magnitude at or below this are dropped.
pub const PRUNE_TOLERANCE: f64 = 1e-14;

/// Largest register [`PauliOperator::to_matrix`] will expand.
pub const MAX_MATRIX_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Single-qubit product `self * rhs` as (phase, letter).
    pub fn mul(self, rhs: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, rhs) {
            (I, p) | (p, I) => (Phase::ONE, p),
            (X, X) | (Y, Y) | (Z, Z) => (Phase::ONE, I),
            (X, Y) => (Phase::I, Z),
            (Y, X) => (Phase::MINUS_I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, Y) => (Phase::MINUS_I, X),
            (Z, X) => (Phase::I, Y),
            (X, Z) => (Phase::MINUS_I, Y),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A phase `i^k` for k in 0..4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn power_of_i(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
    phase: Phase,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self { letters, phase: Phase::ONE }
    }

    pub fn with_phase(letters: Vec<Pauli>, phase: Phase) -> Self {
        Self { letters, phase }
    }

    pub fn identity(qubit_count: usize) -> Self {
        Self::new(vec![Pauli::I; qubit_count])
    }

    /// String with `letter` on each listed qubit and identity elsewhere.
    pub fn sparse(qubit_count: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut letters = vec![Pauli::I; qubit_count];
        for &(q, p) in ops {
            if q >= qubit_count {
                return Err(Error::Dimension { left: q + 1, right: qubit_count });
            }
            letters[q] = p;
        }
        Ok(Self::new(letters))
    }

    pub fn qubit_count(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// Operator product `self * rhs`, tracking the phase exactly.
    pub fn multiply(&self, rhs: &PauliString) -> Result<PauliString> {
        if self.qubit_count() != rhs.qubit_count() {
            return Err(Error::Dimension { left: self.qubit_count(), right: rhs.qubit_count() });
        }
        let mut phase = self.phase * rhs.phase;
        let letters = self
            .letters
            .iter()
            .zip(&rhs.letters)
            .map(|(&a, &b)| {
                let (p, l) = a.mul(b);
                phase = phase * p;
                l
            })
            .collect();
        Ok(PauliString { letters, phase })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase.0 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses a phase-free string such as `"XZI"` (qubit 0 first).
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| Error::Parse(format!("invalid Pauli letter {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(letters))
    }
}

/// Complex-weighted sum of Pauli strings on a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "OperatorJson", try_from = "OperatorJson")]
pub struct PauliOperator {
    qubit_count: usize,
    terms: BTreeMap<Vec<Pauli>, Complex64>,
}

impl PauliOperator {
    pub fn zero(qubit_count: usize) -> Self {
        Self { qubit_count, terms: BTreeMap::new() }
    }

    pub fn identity(qubit_count: usize) -> Self {
        Self::from_string(&PauliString::identity(qubit_count), Complex64::new(1.0, 0.0))
    }

    pub fn from_string(s: &PauliString, coefficient: Complex64) -> Self {
        let mut op = Self::zero(s.qubit_count());
        op.add_term(s, coefficient);
        op
    }

    /// Real-weighted single term, e.g. `PauliOperator::real_term(2, &[(0, Z), (1, Z)], -1.0)`.
    pub fn real_term(qubit_count: usize, ops: &[(usize, Pauli)], coefficient: f64) -> Result<Self> {
        let s = PauliString::sparse(qubit_count, ops)?;
        Ok(Self::from_string(&s, Complex64::new(coefficient, 0.0)))
    }

    /// Builds an operator from `(string, coefficient)` pairs given in text form.
    pub fn from_labels<'a>(qubit_count: usize, terms: impl IntoIterator<Item = (&'a str, Complex64)>) -> Result<Self> {
        let mut op = Self::zero(qubit_count);
        for (label, c) in terms {
            let s: PauliString = label.parse()?;
            if s.qubit_count() != qubit_count {
                return Err(Error::Dimension { left: s.qubit_count(), right: qubit_count });
            }
            op.add_term(&s, c);
        }
        Ok(op)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Pauli], Complex64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Coefficient of a phase-free string; zero when absent.
    pub fn coefficient(&self, letters: &[Pauli]) -> Complex64 {
        self.terms.get(letters).copied().unwrap_or_default()
    }

    /// Coefficient looked up by label such as `"ZIZI"`.
    pub fn coefficient_of(&self, label: &str) -> Result<Complex64> {
        let s: PauliString = label.parse()?;
        Ok(self.coefficient(s.letters()))
    }

    fn add_term(&mut self, s: &PauliString, coefficient: Complex64) {
        let c = coefficient * s.phase().to_complex();
        let entry = self.terms.entry(s.letters().to_vec()).or_default();
        *entry += c;
        if entry.norm() <= PRUNE_TOLERANCE {
            self.terms.remove(s.letters());
        }
    }

    fn check_dims(&self, rhs: &PauliOperator) -> Result<()> {
        if self.qubit_count != rhs.qubit_count {
            return Err(Error::Dimension { left: self.qubit_count, right: rhs.qubit_count });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &PauliOperator) -> Result<PauliOperator> {
        self.check_dims(rhs)?;
        let mut out = self.clone();
        for (k, &v) in &rhs.terms {
            *out.terms.entry(k.clone()).or_default() += v;
        }
        out.prune(PRUNE_TOLERANCE);
        Ok(out)
    }

    pub fn sub(&self, rhs: &PauliOperator) -> Result<PauliOperator> {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> PauliOperator {
        let mut out = Self::zero(self.qubit_count);
        out.terms = self.terms.iter().map(|(k, &v)| (k.clone(), v * factor)).collect();
        out.prune(PRUNE_TOLERANCE);
        out
    }

    pub fn scale_real(&self, factor: f64) -> PauliOperator {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Operator product `self * rhs`.
    pub fn multiply(&self, rhs: &PauliOperator) -> Result<PauliOperator> {
        self.check_dims(rhs)?;
        let mut acc: BTreeMap<Vec<Pauli>, Complex64> = BTreeMap::new();
        for (ka, &va) in &self.terms {
            let a = PauliString::new(ka.clone());
            for (kb, &vb) in &rhs.terms {
                let prod = a.multiply(&PauliString::new(kb.clone()))?;
                let c = va * vb * prod.phase().to_complex();
                *acc.entry(prod.letters).or_default() += c;
            }
        }
        let mut out = Self { qubit_count: self.qubit_count, terms: acc };
        out.prune(PRUNE_TOLERANCE);
        Ok(out)
    }

    pub fn prune(&mut self, tolerance: f64) {
        self.terms.retain(|_, c| c.norm() > tolerance);
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> PauliOperator {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    /// Every coefficient has imaginary part within `tolerance`, which for a
    /// sum of Hermitian Pauli strings is equivalent to Hermiticity.
    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tolerance)
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Dense `2^n x 2^n` matrix with qubit 0 as the least-significant index bit.
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.qubit_count > MAX_MATRIX_QUBITS {
            return Err(Error::Resource(format!(
                "{} qubits exceeds the dense limit of {MAX_MATRIX_QUBITS}",
                self.qubit_count
            )));
        }
        let dim = 1usize << self.qubit_count;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (letters, &coeff) in &self.terms {
            let mut flip = 0usize;
            for (q, p) in letters.iter().enumerate() {
                if matches!(p, Pauli::X | Pauli::Y) {
                    flip |= 1 << q;
                }
            }
            for col in 0..dim {
                let mut amp = coeff;
                for (q, p) in letters.iter().enumerate() {
                    let bit = (col >> q) & 1;
                    match (p, bit) {
                        (Pauli::Z, 1) => amp = -amp,
                        // Y|0> = i|1>, Y|1> = -i|0>
                        (Pauli::Y, 0) => amp *= Complex64::new(0.0, 1.0),
                        (Pauli::Y, _) => amp *= Complex64::new(0.0, -1.0),
                        _ => {}
                    }
                }
                m[(col ^ flip, col)] += amp;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            f.write_str("*")?;
            for p in k {
                write!(f, "{}", p.as_char())?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    string: String,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl From<PauliOperator> for OperatorJson {
    fn from(op: PauliOperator) -> Self {
        let terms = op
            .terms
            .iter()
            .map(|(k, c)| TermJson { string: k.iter().map(|p| p.as_char()).collect(), re: c.re, im: c.im })
            .collect();
        OperatorJson { n: op.qubit_count, terms }
    }
}

impl TryFrom<OperatorJson> for PauliOperator {
    type Error = Error;

    fn try_from(j: OperatorJson) -> Result<Self> {
        PauliOperator::from_labels(j.n, j.terms.iter().map(|t| (t.string.as_str(), Complex64::new(t.re, t.im))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Pauli::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_qubit_products() {
        let x: PauliString = "X".parse().unwrap();
        let y: PauliString = "Y".parse().unwrap();
        let p = x.multiply(&y).unwrap();
        assert_eq!(p.letters(), &[Z]);
        assert_eq!(p.phase(), Phase::I);
        assert_eq!(p.to_string(), "iZ");
    }

    #[test]
    fn identity_product_has_unit_phase() {
        let id = PauliString::identity(2);
        let p = id.multiply(&id).unwrap();
        assert_eq!(p.letters(), &[I, I]);
        assert_eq!(p.phase(), Phase::ONE);
    }

    #[test]
    fn two_qubit_product_matches_dense() {
        let a: PauliString = "XZ".parse().unwrap();
        let b: PauliString = "YZ".parse().unwrap();
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.letters(), &[Z, I]);
        assert_eq!(p.phase(), Phase::I);

        let ma = PauliOperator::from_string(&a, c(1.0, 0.0)).to_matrix().unwrap();
        let mb = PauliOperator::from_string(&b, c(1.0, 0.0)).to_matrix().unwrap();
        let mp = PauliOperator::from_string(&p, c(1.0, 0.0)).to_matrix().unwrap();
        assert!((ma * mb - mp).norm() < 1e-15);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let a: PauliString = "XZ".parse().unwrap();
        let b: PauliString = "Y".parse().unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::Dimension { .. })));
        let oa = PauliOperator::identity(2);
        let ob = PauliOperator::identity(3);
        assert!(oa.add(&ob).is_err());
        assert!(oa.multiply(&ob).is_err());
    }

    #[test]
    fn cancellation_and_involution() {
        let z = PauliOperator::real_term(1, &[(0, Z)], 1.0).unwrap();
        let mz = PauliOperator::real_term(1, &[(0, Z)], -1.0).unwrap();
        assert!(z.add(&mz).unwrap().is_empty());
        assert_eq!(z.multiply(&z).unwrap(), PauliOperator::identity(1));
    }

    #[test]
    fn xx_plus_yy_squared() {
        let xx = PauliOperator::real_term(2, &[(0, X), (1, X)], 1.0).unwrap();
        let yy = PauliOperator::real_term(2, &[(0, Y), (1, Y)], 1.0).unwrap();
        let s = xx.add(&yy).unwrap();
        let sq = s.multiply(&s).unwrap();
        let expected = PauliOperator::from_labels(2, [("II", c(2.0, 0.0)), ("ZZ", c(-2.0, 0.0))]).unwrap();
        assert_eq!(sq, expected);

        // dense oracle: (XX+YY)^2 computed on 4x4 matrices
        let m = s.to_matrix().unwrap();
        assert!(((&m * &m) - expected.to_matrix().unwrap()).norm() < 1e-14);
    }

    #[test]
    fn matrices_of_basic_operators() {
        let id = PauliOperator::identity(2).to_matrix().unwrap();
        assert_eq!(id, DMatrix::identity(4, 4));
        let z = PauliOperator::real_term(1, &[(0, Z)], 1.0).unwrap().to_matrix().unwrap();
        assert_eq!(z, DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)])));
        // Z on qubit 0 of two qubits: sign alternates with the low index bit
        let z0 = PauliOperator::real_term(2, &[(0, Z)], 1.0).unwrap().to_matrix().unwrap();
        let d: Vec<f64> = (0..4).map(|k| z0[(k, k)].re).collect();
        assert_eq!(d, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn too_many_qubits_for_dense() {
        let op = PauliOperator::identity(11);
        assert!(matches!(op.to_matrix(), Err(Error::Resource(_))));
    }

    #[test]
    fn json_round_trip_and_layout() {
        let op = PauliOperator::from_labels(3, [("ZIX", c(0.5, 0.0)), ("IYI", c(0.0, -0.25))]).unwrap();
        let text = serde_json::to_string(&op).unwrap();
        assert!(text.contains("\"n\":3"));
        assert!(text.contains("\"string\":\"ZIX\""));
        let back: PauliOperator = serde_json::from_str(&text).unwrap();
        assert_eq!(back, op);
        assert!(serde_json::from_str::<PauliOperator>(r#"{"n":2,"terms":[{"string":"ZQ","re":1,"im":0}]}"#).is_err());
        assert!(serde_json::from_str::<PauliOperator>(r#"{"n":2,"terms":[{"string":"Z","re":1,"im":0}]}"#).is_err());
    }

    #[test]
    fn hermiticity_detection() {
        let h = PauliOperator::from_labels(2, [("XY", c(0.3, 0.0)), ("ZZ", c(-1.0, 0.0))]).unwrap();
        assert!(h.is_hermitian(1e-12));
        let m = h.to_matrix().unwrap();
        assert!((m.adjoint() - &m).norm() < 1e-12);
        let nh = PauliOperator::from_labels(1, [("X", c(0.0, 1.0))]).unwrap();
        assert!(!nh.is_hermitian(1e-12));
    }
}
