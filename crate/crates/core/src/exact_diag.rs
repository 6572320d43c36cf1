//! Dense Hermitian eigensolver for small matrices (cyclic complex Jacobi).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_DIMENSION: usize = 64;
const HERMITIAN_TOLERANCE: f64 = 1e-12;
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// A square complex matrix checked to equal its adjoint on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(DMatrix<Complex64>);

impl HermitianMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Domain(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
        }
        let n = m.nrows();
        for i in 0..n {
            for j in i..n {
                let d = (m[(i, j)] - m[(j, i)].conj()).norm();
                if d > HERMITIAN_TOLERANCE {
                    return Err(Error::Domain(format!("matrix is not Hermitian: |M[{i},{j}] - conj(M[{j},{i}])| = {d:e}")));
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn dimension(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        (0..self.dimension()).map(|i| self.0[(i, i)].re).sum()
    }
}

/// Eigenvalues in ascending order.
pub fn eigenvalues(m: &HermitianMatrix) -> Result<Vec<f64>> {
    Ok(eigh(m)?.0)
}

/// Smallest eigenvalue.
pub fn ground_energy(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?[0])
}

/// Eigenvalues (ascending) and the unitary whose columns are the matching eigenvectors.
pub fn eigh(m: &HermitianMatrix) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let n = m.dimension();
    if n > MAX_DIMENSION {
        return Err(Error::Resource(format!("dimension {n} exceeds {MAX_DIMENSION}")));
    }
    let mut a = m.0.clone();
    let mut v = DMatrix::<Complex64>::identity(n, n);
    let scale = a.norm().max(1.0);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TOLERANCE * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= OFF_DIAGONAL_TOLERANCE * scale {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

fn off_diagonal_norm(a: &DMatrix<Complex64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Zeroes `a[p,q]` with a phase fix on column `q` followed by a real Givens rotation.
fn rotate(a: &mut DMatrix<Complex64>, v: &mut DMatrix<Complex64>, p: usize, q: usize) {
    let n = a.nrows();
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }

    // make a[p,q] real and positive
    let w = apq.conj() / mag;
    for r in 0..n {
        a[(r, q)] *= w;
    }
    for r in 0..n {
        a[(q, r)] *= w.conj();
    }
    for r in 0..n {
        v[(r, q)] *= w;
    }

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = arp * c - arq * s;
        let new_rq = arp * s + arq * c;
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp.conj();
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * c - vrq * s;
        v[(r, q)] = vrp * s + vrq * c;
    }
}
