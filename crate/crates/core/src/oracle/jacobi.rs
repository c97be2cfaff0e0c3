//! Complex one-sided Jacobi SVD and two-sided Hermitian Jacobi eigensolver.

use num_complex::Complex64;

use super::DenseMatrix;
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 30;

/// Relative threshold below which a Gram entry counts as zero.
const REL_TOL: f64 = 1e-15;

#[derive(Debug, Clone)]
pub struct Svd {
    /// Descending.
    pub values: Vec<f64>,
    /// Left singular vectors (columns), zero where the singular value is zero.
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    pub sweeps: usize,
}

impl Svd {
    /// `U Σ V*`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let (rows, cols) = (self.u.rows(), self.v.rows());
        let mut out = DenseMatrix::zeros(rows, cols);
        for (k, &s) in self.values.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for j in 0..cols {
                let vj = self.v.get(j, k).conj() * s;
                if vj == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..rows {
                    let e = out.get(i, j) + self.u.get(i, k) * vj;
                    out.set(i, j, e);
                }
            }
        }
        out
    }
}

fn col_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn col_norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// Rotation `(c, s, phase)` zeroing the Gram entry `γ` between columns with
/// squared norms `α`, `β`: `x ← c x − s·phase·y`, `y ← s x + c·phase·y`.
fn rotation(alpha: f64, beta: f64, gamma: Complex64) -> (f64, f64, Complex64) {
    let g = gamma.norm();
    let phase = (gamma / g).conj();
    let zeta = (beta - alpha) / (2.0 * g);
    let t = if zeta >= 0.0 { 1.0 / (zeta + (1.0 + zeta * zeta).sqrt()) } else { -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t, phase)
}

fn rotate_columns(m: &mut DenseMatrix, i: usize, j: usize, c: f64, s: f64, phase: Complex64) {
    let rows = m.rows();
    for r in 0..rows {
        let x = m.get(r, i);
        let y = m.get(r, j) * phase;
        m.set(r, i, x * c - y * s);
        m.set(r, j, x * s + y * c);
    }
}

/// Singular value decomposition by cyclic one-sided Jacobi sweeps.
pub fn svd(m: &DenseMatrix) -> Result<Svd> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut v = DenseMatrix::identity(cols);
    let fro = m.frobenius();
    let floor = (1e-14 * fro).powi(2);
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        let mut residual: f64 = 0.0;
        for i in 0..cols {
            for j in i + 1..cols {
                let alpha = col_norm_sqr(a.col(i));
                let beta = col_norm_sqr(a.col(j));
                let gamma = col_dot(a.col(i), a.col(j));
                let g = gamma.norm();
                if g <= floor || g <= REL_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                residual = residual.max(g / (alpha * beta).sqrt());
                let (c, s, phase) = rotation(alpha, beta, gamma);
                rotate_columns(&mut a, i, j, c, s, phase);
                rotate_columns(&mut v, i, j, c, s, phase);
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps >= MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
    }
    let norms: Vec<f64> = (0..cols).map(|k| col_norm_sqr(a.col(k)).sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]).then(x.cmp(&y)));
    let mut u = DenseMatrix::zeros(rows, cols);
    let mut vs = DenseMatrix::zeros(cols, cols);
    let mut values = Vec::with_capacity(cols);
    for (k, &src) in order.iter().enumerate() {
        let s = norms[src];
        values.push(s);
        if s > 0.0 {
            for r in 0..rows {
                u.set(r, k, a.get(r, src) / s);
            }
        }
        for r in 0..cols {
            vs.set(r, k, v.get(r, src));
        }
    }
    Ok(Svd { values, u, v: vs, sweeps })
}

/// Descending singular values.
pub fn singular_values(m: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(svd(m)?.values)
}

/// Eigenvalues (descending) of a Hermitian matrix by cyclic two-sided Jacobi.
pub fn hermitian_eigenvalues(h: &DenseMatrix) -> Result<Vec<f64>> {
    let n = h.rows();
    assert_eq!(n, h.cols(), "Hermitian eigensolver needs a square matrix");
    let mut a = h.clone();
    let floor = (1e-14 * h.frobenius()).powi(2);
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        let mut residual: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let gamma = a.get(i, j);
                let g = gamma.norm();
                let (alpha, beta) = (a.get(i, i).re, a.get(j, j).re);
                if g <= floor || g <= REL_TOL * (alpha.abs() * beta.abs()).sqrt() {
                    continue;
                }
                residual = residual.max(g);
                let (c, s, phase) = rotation(alpha, beta, gamma);
                rotate_columns(&mut a, i, j, c, s, phase);
                // rows: conjugate transpose of the column operation
                let pc = phase.conj();
                for k in 0..n {
                    let x = a.get(i, k);
                    let y = a.get(j, k) * pc;
                    a.set(i, k, x * c - y * s);
                    a.set(j, k, x * s + y * c);
                }
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps >= MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|k| a.get(k, k).re).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    Ok(ev)
}
