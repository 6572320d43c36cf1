//! STO-6G integrals for H2 and their transformation to the four spin orbitals.
//!
//! Atomic orbitals are contracted s-type Gaussians on two protons at
//! (0, 0, 0) and (0, 0, R). Integrals over primitives use the Gaussian
//! product theorem and the zeroth Boys function. The molecular orbitals are
//! fixed by symmetry:
//!
//! ```text
//! phi_g = (chi_1 + chi_2) / sqrt(2 (1 + S))
//! phi_u = (chi_1 - chi_2) / sqrt(2 (1 - S))
//! ```
//!
//! and the spin orbitals are ordered (g alpha, g beta, u alpha, u beta).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Embedded STO-6G hydrogen 1s parameters at Slater exponent 1.0.
pub const STO6G_H_DATA: &str = include_str!("../data/sto-6g-h.txt");

/// Slater exponent whose STO-6G integrals reproduce the reference coefficient
/// table (see README); the bare value 1.0 is available through [`BasisData`].
pub const DEFAULT_ZETA: f64 = 1.24;

/// Spin-orbital count of minimal-basis H2.
pub const SPIN_ORBITALS: usize = 4;

pub type Vec3 = [f64; 3];

fn dist2(a: &Vec3, b: &Vec3) -> f64 {
    (0..3).map(|k| (a[k] - b[k]).powi(2)).sum()
}

/// F0(t) = (1/2) sqrt(pi/t) erf(sqrt(t)).
pub fn boys_f0(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("Boys function argument must be non-negative, got {t}")));
    }
    Ok(boys_f0_unchecked(t))
}

fn boys_f0_unchecked(t: f64) -> f64 {
    if t < 1e-6 {
        1.0 - t / 3.0 + t * t / 10.0
    } else {
        0.5 * (PI / t).sqrt() * libm::erf(t.sqrt())
    }
}

/// Closed forms over unnormalized s-type primitives `exp(-a |r - A|^2)`.
pub mod primitive {
    use super::*;

    /// Normalization constant `(2a/pi)^(3/4)`.
    pub fn normalization(a: f64) -> f64 {
        (2.0 * a / PI).powf(0.75)
    }

    pub fn overlap(a: f64, ca: &Vec3, b: f64, cb: &Vec3) -> f64 {
        let p = a + b;
        (PI / p).powf(1.5) * (-a * b / p * dist2(ca, cb)).exp()
    }

    pub fn kinetic(a: f64, ca: &Vec3, b: f64, cb: &Vec3) -> f64 {
        let p = a + b;
        let mu = a * b / p;
        let r2 = dist2(ca, cb);
        mu * (3.0 - 2.0 * mu * r2) * (PI / p).powf(1.5) * (-mu * r2).exp()
    }

    /// Attraction to a point charge `charge` at `cc` (negative for a proton).
    pub fn nuclear_attraction(a: f64, ca: &Vec3, b: f64, cb: &Vec3, cc: &Vec3, charge: f64) -> f64 {
        let p = a + b;
        let centre = product_center(a, ca, b, cb);
        -2.0 * PI / p * charge * (-a * b / p * dist2(ca, cb)).exp() * boys_f0_unchecked(p * dist2(&centre, cc))
    }

    /// Chemist-notation repulsion `(ab|cd)`.
    #[allow(clippy::too_many_arguments)]
    pub fn electron_repulsion(a: f64, ca: &Vec3, b: f64, cb: &Vec3, c: f64, cc: &Vec3, d: f64, cd: &Vec3) -> f64 {
        let p = a + b;
        let q = c + d;
        let pc = product_center(a, ca, b, cb);
        let qc = product_center(c, cc, d, cd);
        let pre = 2.0 * PI.powf(2.5) / (p * q * (p + q).sqrt());
        let k = (-a * b / p * dist2(ca, cb) - c * d / q * dist2(cc, cd)).exp();
        pre * k * boys_f0_unchecked(p * q / (p + q) * dist2(&pc, &qc))
    }

    pub fn product_center(a: f64, ca: &Vec3, b: f64, cb: &Vec3) -> Vec3 {
        let p = a + b;
        [(a * ca[0] + b * cb[0]) / p, (a * ca[1] + b * cb[1]) / p, (a * ca[2] + b * cb[2]) / p]
    }
}

/// Exponent/coefficient pairs of a contraction at Slater exponent 1.0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisData {
    pub primitives: Vec<(f64, f64)>,
}

impl BasisData {
    /// Parses lines of `exponent coefficient`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut primitives = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse(format!("basis line {}: expected 2 fields, found {}", lineno + 1, fields.len())));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("basis line {}: {s:?}: {e}", lineno + 1)))
            };
            let (alpha, coeff) = (parse(fields[0])?, parse(fields[1])?);
            if !(alpha > 0.0) {
                return Err(Error::Parse(format!("basis line {}: exponent must be positive", lineno + 1)));
            }
            primitives.push((alpha, coeff));
        }
        if primitives.is_empty() {
            return Err(Error::Parse("basis data has no primitives".into()));
        }
        Ok(Self { primitives })
    }

    pub fn sto6g() -> Self {
        Self::parse(STO6G_H_DATA).expect("embedded basis data is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Primitive {
    pub exponent: f64,
    /// Includes the primitive normalization and the contraction renormalization.
    pub coefficient: f64,
}

/// A normalized contracted s-type Gaussian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractedGaussian {
    pub center: Vec3,
    pub primitives: Vec<Primitive>,
}

impl ContractedGaussian {
    /// Scales exponents by `zeta^2` and normalizes the contraction.
    pub fn new(center: Vec3, basis: &BasisData, zeta: f64) -> Result<Self> {
        if !(zeta > 0.0) {
            return Err(Error::Domain(format!("zeta must be positive, got {zeta}")));
        }
        let primitives = basis
            .primitives
            .iter()
            .map(|&(alpha, d)| {
                let exponent = alpha * zeta * zeta;
                Primitive { exponent, coefficient: d * primitive::normalization(exponent) }
            })
            .collect();
        let mut g = Self { center, primitives };
        let norm = g.overlap(&g).sqrt();
        for p in &mut g.primitives {
            p.coefficient /= norm;
        }
        Ok(g)
    }

    fn pairs<'a>(&'a self, other: &'a Self) -> impl Iterator<Item = (&'a Primitive, &'a Primitive)> + 'a {
        self.primitives.iter().flat_map(move |a| other.primitives.iter().map(move |b| (a, b)))
    }

    pub fn overlap(&self, other: &Self) -> f64 {
        self.pairs(other)
            .map(|(a, b)| a.coefficient * b.coefficient * primitive::overlap(a.exponent, &self.center, b.exponent, &other.center))
            .sum()
    }

    pub fn kinetic(&self, other: &Self) -> f64 {
        self.pairs(other)
            .map(|(a, b)| a.coefficient * b.coefficient * primitive::kinetic(a.exponent, &self.center, b.exponent, &other.center))
            .sum()
    }

    pub fn nuclear_attraction(&self, other: &Self, nuclei: &[(Vec3, f64)]) -> f64 {
        self.pairs(other)
            .map(|(a, b)| {
                let v: f64 = nuclei
                    .iter()
                    .map(|(c, z)| primitive::nuclear_attraction(a.exponent, &self.center, b.exponent, &other.center, c, *z))
                    .sum();
                a.coefficient * b.coefficient * v
            })
            .sum()
    }

    /// Chemist-notation `(self other | g3 g4)`.
    pub fn electron_repulsion(&self, other: &Self, g3: &Self, g4: &Self) -> f64 {
        let mut total = 0.0;
        for (a, b) in self.pairs(other) {
            for (c, d) in g3.pairs(g4) {
                total += a.coefficient
                    * b.coefficient
                    * c.coefficient
                    * d.coefficient
                    * primitive::electron_repulsion(
                        a.exponent, &self.center, b.exponent, &other.center, c.exponent, &g3.center, d.exponent, &g4.center,
                    );
            }
        }
        total
    }
}

/// Two-centre atomic-orbital integrals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AoIntegrals {
    /// Bond length in bohr.
    pub r: f64,
    pub overlap: [[f64; 2]; 2],
    pub kinetic: [[f64; 2]; 2],
    pub nuclear: [[f64; 2]; 2],
    /// Chemist notation `(pq|rs)`.
    pub eri: [[[[f64; 2]; 2]; 2]; 2],
}

impl AoIntegrals {
    /// Overlap between the two 1s functions.
    pub fn s(&self) -> f64 {
        self.overlap[0][1]
    }

    pub fn core_hamiltonian(&self) -> [[f64; 2]; 2] {
        let mut h = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                h[i][j] = self.kinetic[i][j] + self.nuclear[i][j];
            }
        }
        h
    }
}

pub fn h2_atomic_orbitals(r: f64, basis: &BasisData, zeta: f64) -> Result<[ContractedGaussian; 2]> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("bond length must be positive, got {r}")));
    }
    Ok([
        ContractedGaussian::new([0.0, 0.0, 0.0], basis, zeta)?,
        ContractedGaussian::new([0.0, 0.0, r], basis, zeta)?,
    ])
}

pub fn ao_integrals(r: f64, basis: &BasisData, zeta: f64) -> Result<AoIntegrals> {
    let aos = h2_atomic_orbitals(r, basis, zeta)?;
    let nuclei = [(aos[0].center, 1.0), (aos[1].center, 1.0)];
    let mut out = AoIntegrals {
        r,
        overlap: [[0.0; 2]; 2],
        kinetic: [[0.0; 2]; 2],
        nuclear: [[0.0; 2]; 2],
        eri: [[[[0.0; 2]; 2]; 2]; 2],
    };
    for i in 0..2 {
        for j in 0..2 {
            out.overlap[i][j] = aos[i].overlap(&aos[j]);
            out.kinetic[i][j] = aos[i].kinetic(&aos[j]);
            out.nuclear[i][j] = aos[i].nuclear_attraction(&aos[j], &nuclei);
            for k in 0..2 {
                for l in 0..2 {
                    out.eri[i][j][k][l] = aos[i].electron_repulsion(&aos[j], &aos[k], &aos[l]);
                }
            }
        }
    }
    Ok(out)
}

/// Spatial integrals over (phi_g, phi_u).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoIntegrals {
    /// AO to MO coefficients, `coefficients[ao][mo]`.
    pub coefficients: [[f64; 2]; 2],
    pub overlap: [[f64; 2]; 2],
    pub core: [[f64; 2]; 2],
    /// Chemist notation `(pq|rs)`.
    pub eri: [[[[f64; 2]; 2]; 2]; 2],
}

pub fn mo_integrals(ao: &AoIntegrals) -> Result<MoIntegrals> {
    let s = ao.s();
    if s >= 1.0 - 1e-12 {
        return Err(Error::DegenerateBasis { overlap: s });
    }
    let ng = 1.0 / (2.0 * (1.0 + s)).sqrt();
    let nu = 1.0 / (2.0 * (1.0 - s)).sqrt();
    let c = [[ng, nu], [ng, -nu]];

    let transform2 = |m: &[[f64; 2]; 2]| {
        let mut out = [[0.0; 2]; 2];
        for p in 0..2 {
            for q in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        out[p][q] += c[i][p] * c[j][q] * m[i][j];
                    }
                }
            }
        }
        out
    };

    let mut eri = [[[[0.0; 2]; 2]; 2]; 2];
    for p in 0..2 {
        for q in 0..2 {
            for r in 0..2 {
                for t in 0..2 {
                    let mut v = 0.0;
                    for i in 0..2 {
                        for j in 0..2 {
                            for k in 0..2 {
                                for l in 0..2 {
                                    v += c[i][p] * c[j][q] * c[k][r] * c[l][t] * ao.eri[i][j][k][l];
                                }
                            }
                        }
                    }
                    eri[p][q][r][t] = v;
                }
            }
        }
    }

    Ok(MoIntegrals { coefficients: c, overlap: transform2(&ao.overlap), core: transform2(&ao.core_hamiltonian()), eri })
}

/// One- and two-electron integrals over the spin orbitals (g alpha, g beta, u alpha, u beta).
///
/// `two_body[i][j][k][l]` is `<ij|kl> = integral chi_i(1) chi_j(2) (1/r12) chi_k(2) chi_l(1)`,
/// matching `H = sum h_ij a+_i a_j + 1/2 sum h_ijkl a+_i a+_j a_k a_l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinOrbitalIntegrals {
    pub one_body: [[f64; SPIN_ORBITALS]; SPIN_ORBITALS],
    pub two_body: [[[[f64; SPIN_ORBITALS]; SPIN_ORBITALS]; SPIN_ORBITALS]; SPIN_ORBITALS],
    /// Nuclear repulsion 1/R in Hartree.
    pub e_nuc: f64,
}

impl SpinOrbitalIntegrals {
    pub fn zero() -> Self {
        Self {
            one_body: [[0.0; SPIN_ORBITALS]; SPIN_ORBITALS],
            two_body: [[[[0.0; SPIN_ORBITALS]; SPIN_ORBITALS]; SPIN_ORBITALS]; SPIN_ORBITALS],
            e_nuc: 0.0,
        }
    }

    /// Shorthand for `two_body[i][j][k][l]`.
    pub fn h4(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.two_body[i][j][k][l]
    }
}

/// Spatial orbital and spin of spin orbital `i`.
pub fn spin_orbital(i: usize) -> (usize, usize) {
    (i / 2, i % 2)
}

pub fn spin_orbital_integrals(mo: &MoIntegrals, e_nuc: f64) -> SpinOrbitalIntegrals {
    let mut out = SpinOrbitalIntegrals::zero();
    out.e_nuc = e_nuc;
    for i in 0..SPIN_ORBITALS {
        let (pi, si) = spin_orbital(i);
        for j in 0..SPIN_ORBITALS {
            let (pj, sj) = spin_orbital(j);
            if si == sj {
                out.one_body[i][j] = mo.core[pi][pj];
            }
            for k in 0..SPIN_ORBITALS {
                let (pk, sk) = spin_orbital(k);
                for l in 0..SPIN_ORBITALS {
                    let (pl, sl) = spin_orbital(l);
                    if si == sl && sj == sk {
                        out.two_body[i][j][k][l] = mo.eri[pi][pl][pj][pk];
                    }
                }
            }
        }
    }
    out
}

/// Spin-orbital integrals of H2 at bond length `r` (bohr) with the embedded STO-6G basis.
pub fn build_mo_integrals(r: f64, zeta: f64) -> Result<SpinOrbitalIntegrals> {
    build_mo_integrals_with(r, &BasisData::sto6g(), zeta)
}

pub fn build_mo_integrals_with(r: f64, basis: &BasisData, zeta: f64) -> Result<SpinOrbitalIntegrals> {
    let ao = ao_integrals(r, basis, zeta)?;
    let mo = mo_integrals(&ao)?;
    Ok(spin_orbital_integrals(&mo, 1.0 / r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boys_values() {
        assert_eq!(boys_f0(0.0).unwrap(), 1.0);
        assert!(matches!(boys_f0(-1.0), Err(Error::Domain(_))));
        assert!(boys_f0(f64::NAN).is_err());
        let asym = 0.5 * (PI / 30.0).sqrt();
        assert!((boys_f0(30.0).unwrap() - asym).abs() < 1e-9);
        // continuity across the series switch
        let below = boys_f0(0.99e-6).unwrap();
        let above = boys_f0(1.01e-6).unwrap();
        assert!((below - above).abs() < 1e-8);
    }

    #[test]
    fn normalized_primitives() {
        let c = [0.0, 0.0, 0.0];
        let n = primitive::normalization(1.3);
        assert!((n * n * primitive::overlap(1.3, &c, 1.3, &c) - 1.0).abs() < 1e-14);
        // unit exponents one bohr apart: exp(-ab/(a+b) R^2) = exp(-1/2)
        let d = [0.0, 0.0, 1.0];
        let s = primitive::normalization(1.0).powi(2) * primitive::overlap(1.0, &c, 1.0, &d);
        assert!((s - (-0.5f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn coincident_nuclear_attraction_uses_f0_limit() {
        let c = [0.0, 0.0, 0.0];
        let a = 0.8;
        let v = primitive::nuclear_attraction(a, &c, a, &c, &c, 1.0);
        assert!((v - (-2.0 * PI / (2.0 * a))).abs() < 1e-14);
    }

    #[test]
    fn basis_parsing() {
        let b = BasisData::sto6g();
        assert_eq!(b.primitives.len(), 6);
        assert!(BasisData::parse("1.0").is_err());
        assert!(BasisData::parse("# nothing\n").is_err());
        assert!(BasisData::parse("-1.0 0.5").is_err());
        assert!(BasisData::parse("x 0.5").is_err());
    }

    #[test]
    fn contraction_is_normalized() {
        for zeta in [1.0, 1.24, 2.0] {
            let g = ContractedGaussian::new([0.1, -0.2, 0.3], &BasisData::sto6g(), zeta).unwrap();
            assert!((g.overlap(&g) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(build_mo_integrals(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(build_mo_integrals(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(build_mo_integrals(1.4, 0.0), Err(Error::Domain(_))));
        assert!(matches!(build_mo_integrals(1e-9, 1.0), Err(Error::DegenerateBasis { .. })));
    }

    #[test]
    fn mo_overlap_is_identity() {
        for r in [0.5, 1.4, 3.0] {
            let ao = ao_integrals(r, &BasisData::sto6g(), 1.24).unwrap();
            let mo = mo_integrals(&ao).unwrap();
            assert!((mo.overlap[0][0] - 1.0).abs() < 1e-12);
            assert!((mo.overlap[1][1] - 1.0).abs() < 1e-12);
            assert!(mo.overlap[0][1].abs() < 1e-12);
            assert!(mo.core[0][1].abs() < 1e-12);
        }
    }

    #[test]
    fn spin_orbital_one_body_is_diagonal() {
        let ints = build_mo_integrals(1.4, DEFAULT_ZETA).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(ints.one_body[i][j].abs() < 1e-12);
                }
            }
        }
        assert_eq!(ints.one_body[0][0], ints.one_body[1][1]);
        assert_eq!(ints.one_body[2][2], ints.one_body[3][3]);
        assert!((ints.e_nuc - 1.0 / 1.4).abs() < 1e-15);
    }
}
