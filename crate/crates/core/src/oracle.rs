//! Dense finite sections of composition operators in the basis `(q_n)`,
//! checked against the closed forms in [`crate::operator`].

pub mod jacobi;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{exp_neg, pair};
use crate::operator::{AffineSymbol, ZERO_TOL};

pub use jacobi::{hermitian_eigenvalues, singular_values, svd, Svd};

/// Column-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[j * self.rows + i] = v;
    }

    pub fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            for k in 0..self.cols {
                let b = other.get(k, j);
                if b == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..self.rows {
                    out.data[j * self.rows + i] += self.get(i, k) * b;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.col(j)) {
                *o += a * xj;
            }
        }
        out
    }

    /// Rows whose entries are all at most `tol` in modulus.
    pub fn zero_rows(&self, tol: f64) -> Vec<usize> {
        (0..self.rows).filter(|&i| (0..self.cols).all(|j| self.get(i, j).norm() <= tol)).collect()
    }

    /// Columns whose entries are all at most `tol` in modulus.
    pub fn zero_cols(&self, tol: f64) -> Vec<usize> {
        (0..self.cols).filter(|&j| self.col(j).iter().all(|x| x.norm() <= tol)).collect()
    }

    /// `(row, col, re, im)` with 1-based indices, row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            (0..self.cols).map(move |j| {
                let v = self.get(i, j);
                (i + 1, j + 1, v.re, v.im)
            })
        })
    }
}

/// Which symbol(s) and window a matrix was built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub symbols: Vec<SymbolParams>,
    pub dimension: usize,
    pub rows: usize,
    pub kind: SectionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymbolParams {
    pub a: f64,
    #[serde(with = "pair")]
    pub b: Complex64,
}

impl From<&AffineSymbol> for SymbolParams {
    fn from(sym: &AffineSymbol) -> Self {
        SymbolParams { a: sym.a(), b: sym.b() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    /// `P_N C P_N`.
    Square,
    /// `C P_N` with enough rows to hold every image.
    Columns,
}

/// Matrix of `⟨C q_j, q_i⟩` with the columns whose image left the window.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationMatrix {
    pub matrix: DenseMatrix,
    /// 1-based columns `j` with `m_j` outside the row window.
    pub lost_columns: Vec<usize>,
    pub provenance: Provenance,
}

/// `(row, value)` of the single nonzero in column `j` (1-based).
fn column_entry(sym: &AffineSymbol, j: usize) -> Result<(usize, Complex64)> {
    let space = sym.space();
    let lambda = space.lambda(j)?;
    if sym.a() == 0.0 {
        let scale = (space.log_weight(1)? - space.log_weight(j)?).exp();
        return Ok((1, exp_neg(lambda, sym.b()) * scale));
    }
    let m = sym.m(j)?;
    Ok((m, exp_neg(lambda, sym.b()) * space.log_weight_ratio(m, j)?.exp()))
}

fn build(sym: &AffineSymbol, n: usize, kind: SectionKind) -> Result<TruncationMatrix> {
    if n == 0 {
        return Err(Error::InvalidSymbol("truncation dimension must be at least 1".into()));
    }
    if !sym.is_bounded() {
        return Err(Error::UnboundedSymbol(
            sym.boundedness().reason.clone().unwrap_or_else(|| "boundedness undecided".into()),
        ));
    }
    let entries = (1..=n).map(|j| column_entry(sym, j)).collect::<Result<Vec<_>>>()?;
    let rows = match kind {
        SectionKind::Square => n,
        SectionKind::Columns => entries.iter().map(|e| e.0).max().unwrap_or(n).max(n),
    };
    let mut matrix = DenseMatrix::zeros(rows, n);
    let mut lost_columns = Vec::new();
    for (j, (m, v)) in entries.into_iter().enumerate() {
        if m <= rows {
            matrix.set(m - 1, j, v);
        } else {
            lost_columns.push(j + 1);
        }
    }
    Ok(TruncationMatrix {
        matrix,
        lost_columns,
        provenance: Provenance { symbols: vec![sym.into()], dimension: n, rows, kind },
    })
}

/// The `N×N` finite section `P_N C P_N`.
pub fn truncate(sym: &AffineSymbol, n: usize) -> Result<TruncationMatrix> {
    build(sym, n, SectionKind::Square)
}

/// `C P_N`: the first `N` columns with their full images.
pub fn column_section(sym: &AffineSymbol, n: usize) -> Result<TruncationMatrix> {
    build(sym, n, SectionKind::Columns)
}

/// `N×N` section of `C_φ − C_ψ`.
pub fn truncate_difference(s1: &AffineSymbol, s2: &AffineSymbol, n: usize) -> Result<TruncationMatrix> {
    if s1.space() != s2.space() {
        return Err(Error::MismatchedSpace);
    }
    let t1 = truncate(s1, n)?;
    let t2 = truncate(s2, n)?;
    let mut lost = t1.lost_columns.clone();
    lost.extend(&t2.lost_columns);
    lost.sort_unstable();
    lost.dedup();
    Ok(TruncationMatrix {
        matrix: t1.matrix.sub(&t2.matrix),
        lost_columns: lost,
        provenance: Provenance {
            symbols: vec![s1.into(), s2.into()],
            dimension: n,
            rows: n,
            kind: SectionKind::Square,
        },
    })
}

/// One closed form vs oracle line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantityComparison {
    pub closed_form: f64,
    pub oracle: f64,
    pub deviation: f64,
    /// Bound on the gap attributable to dropped columns and the finite window.
    pub tail_bound: f64,
    pub within_bound: bool,
}

impl QuantityComparison {
    fn new(closed_form: f64, oracle: f64, tail_bound: f64, slack: f64) -> Self {
        let deviation = if closed_form == oracle { 0.0 } else { (closed_form - oracle).abs() };
        QuantityComparison { closed_form, oracle, deviation, tail_bound, within_bound: deviation <= tail_bound + slack }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchattenComparison {
    pub p: f64,
    #[serde(flatten)]
    pub comparison: QuantityComparison,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelDimensions {
    pub zero_rows: usize,
    pub zero_cols: usize,
    pub expected_zero_rows: usize,
    pub expected_zero_cols: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub provenance: Provenance,
    pub lost_columns: Vec<usize>,
    pub singular_values: Vec<f64>,
    /// `r_j` of the retained columns plus zeros, descending.
    pub expected_singular_values: Vec<f64>,
    pub max_singular_value_deviation: f64,
    pub sweeps: usize,
    pub operator_norm: QuantityComparison,
    pub hilbert_schmidt: Option<QuantityComparison>,
    pub schatten: Vec<SchattenComparison>,
    /// Smallest singular value vs `inf r_n`.
    pub smallest_singular_value: Option<QuantityComparison>,
    pub closed_range: Option<bool>,
    pub kernel_dimensions: KernelDimensions,
}

/// Closed forms of a bounded symbol vs the SVD of its section.
pub fn compare(sym: &AffineSymbol, n: usize, kind: SectionKind, schatten_ps: &[f64]) -> Result<ComparisonReport> {
    let t = build(sym, n, kind)?;
    let svd = jacobi::svd(&t.matrix)?;
    let sigma = svd.values.clone();
    let slack = 1e-12;

    // exact singular values of the section, from the closed forms
    let retained: Vec<usize> = (1..=n).filter(|j| !t.lost_columns.contains(j)).collect();
    let mut expected: Vec<f64> = if sym.a() == 0.0 {
        let s = (1..=n)
            .map(|j| column_entry(sym, j).map(|e| e.1.norm_sqr()))
            .sum::<Result<f64>>()?
            .sqrt();
        let mut v = vec![0.0; n];
        v[0] = s;
        v
    } else {
        retained.iter().map(|&j| sym.r_value(j)).collect::<Result<Vec<_>>>()?
    };
    expected.resize(n, 0.0);
    expected.sort_by(|x, y| y.total_cmp(x));
    let max_singular_value_deviation =
        sigma.iter().zip(&expected).map(|(s, e)| (s - e).abs()).fold(0.0, f64::max);

    // squared column mass missing from the section, within the window
    let window = if sym.a() == 0.0 { n } else { sym.window().max(n) };
    let missing = |p: f64| -> Result<f64> {
        if sym.a() == 0.0 {
            return Ok(0.0);
        }
        let lost: f64 = t.lost_columns.iter().map(|&j| sym.r_value(j).map(|r| r.powf(p))).sum::<Result<f64>>()?;
        let beyond: f64 = (n + 1..=window).map(|j| sym.r_value(j).map(|r| r.powf(p))).sum::<Result<f64>>()?;
        Ok(lost + beyond)
    };

    let norm = sym.operator_norm()?;
    let sup_missing = if sym.a() == 0.0 {
        // rank one: the section sees the first n kernel terms
        (norm * norm - sigma[0] * sigma[0]).max(0.0).sqrt()
    } else {
        let mut m: f64 = 0.0;
        for &j in &t.lost_columns {
            m = m.max(sym.r_value(j)?);
        }
        for j in n + 1..=window {
            m = m.max(sym.r_value(j)?);
        }
        m
    };
    let operator_norm = QuantityComparison::new(norm, sigma[0], if sup_missing > sigma[0] { sup_missing } else { 0.0 }, 1e-10);

    let hilbert_schmidt = match sym.hilbert_schmidt() {
        Ok(hs) if hs.finite => {
            let frob = t.matrix.frobenius();
            let tail = if sym.a() == 0.0 { sup_missing } else { (missing(2.0)? + hs.tail_bound).sqrt() };
            Some(QuantityComparison::new(hs.value, frob, tail, slack))
        }
        _ => None,
    };

    let mut schatten = Vec::new();
    for &p in schatten_ps {
        if let Ok(rep) = sym.schatten_membership(p) {
            if !rep.member {
                continue;
            }
            let oracle: f64 = sigma.iter().map(|s| s.powf(p)).sum();
            let (closed, tail) = if sym.a() == 0.0 {
                (rep.partial_sum, (rep.partial_sum - oracle).abs())
            } else {
                let ps = sym.power_sum(p)?;
                (ps.partial_sum, missing(p)? + ps.tail_bound)
            };
            schatten.push(SchattenComparison { p, comparison: QuantityComparison::new(closed, oracle, tail, 1e-10) });
        }
    }

    let (smallest_singular_value, closed_range) = if sym.a() == 0.0 {
        (None, Some(true))
    } else {
        match sym.infimum_estimate() {
            Ok(inf) => {
                let smin = *sigma.last().unwrap_or(&0.0);
                // a section can only see a larger infimum; dropped columns give zeros
                let tail = if t.lost_columns.is_empty() { (smin - inf.value).max(0.0) } else { inf.value };
                (Some(QuantityComparison::new(inf.value, smin, tail, slack)), Some(inf.value > 0.0))
            }
            Err(_) => (None, None),
        }
    };

    let image: Vec<usize> = if sym.a() == 0.0 {
        vec![1]
    } else {
        let mut v: Vec<usize> = retained.iter().map(|&j| sym.m(j)).collect::<Result<_>>()?;
        v.dedup();
        v
    };
    let kernel_dimensions = KernelDimensions {
        zero_rows: t.matrix.zero_rows(ZERO_TOL).len(),
        zero_cols: t.matrix.zero_cols(ZERO_TOL).len(),
        expected_zero_rows: t.matrix.rows() - image.len(),
        expected_zero_cols: t.lost_columns.len(),
    };

    Ok(ComparisonReport {
        provenance: t.provenance,
        lost_columns: t.lost_columns,
        singular_values: sigma,
        expected_singular_values: expected,
        max_singular_value_deviation,
        sweeps: svd.sweeps,
        operator_norm,
        hilbert_schmidt,
        schatten,
        smallest_singular_value,
        closed_range,
        kernel_dimensions,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::E;
    use std::sync::Arc;

    use super::*;
    use crate::sequences::{FrequencySequence, WeightSequence};
    use crate::space::Space;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn arith() -> Arc<Space> {
        Arc::new(Space::new(FrequencySequence::arithmetic(), WeightSequence::constant(), 64).unwrap())
    }

    #[test]
    fn truncate_examples() {
        let sp = arith();
        let id = AffineSymbol::new(sp.clone(), 1.0, c(0.0, 0.0)).unwrap();
        assert_eq!(truncate(&id, 6).unwrap().matrix, DenseMatrix::identity(6));

        let dil = AffineSymbol::new(sp.clone(), 2.0, c(0.0, 0.0)).unwrap();
        let t = truncate(&dil, 4).unwrap();
        assert_eq!(t.lost_columns, vec![3, 4]);
        let nz: Vec<(usize, usize)> = t.matrix.entries().filter(|e| e.2 != 0.0 || e.3 != 0.0).map(|e| (e.0, e.1)).collect();
        assert_eq!(nz, vec![(2, 1), (4, 2)]);

        let diag = AffineSymbol::new(sp.clone(), 1.0, c(0.5, 0.0)).unwrap();
        let t = truncate(&diag, 3).unwrap();
        for k in 0..3 {
            assert!((t.matrix.get(k, k).re - (-0.5 * (k + 1) as f64).exp()).abs() < 1e-16);
        }

        let bad = AffineSymbol::new(sp, 0.0, c(1.0, 0.0)).unwrap();
        assert!(matches!(truncate(&bad, 4), Err(Error::UnboundedSymbol(_))));
    }

    #[test]
    fn column_section_keeps_every_image() {
        let dil = AffineSymbol::new(arith(), 2.0, c(1.0, 0.0)).unwrap();
        let t = column_section(&dil, 40).unwrap();
        assert!(t.lost_columns.is_empty());
        assert_eq!(t.matrix.rows(), 80);
    }

    #[test]
    fn sub_permutation_singular_values() {
        let dil = AffineSymbol::new(arith(), 2.0, c(0.0, 0.7)).unwrap();
        let s = singular_values(&truncate(&dil, 8).unwrap().matrix).unwrap();
        let closed = dil.singular_values_closed_form(4).unwrap();
        for (k, v) in s.iter().enumerate() {
            let want = closed.get(k).copied().unwrap_or(0.0);
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn compare_examples() {
        let sp = arith();
        let dil = AffineSymbol::new(sp.clone(), 2.0, c(1.0, 0.0)).unwrap();
        let rep = compare(&dil, 40, SectionKind::Square, &[1.0]).unwrap();
        assert!(rep.operator_norm.deviation <= 1e-10);
        let frob = rep.hilbert_schmidt.unwrap().oracle;
        let want = (1..=20).map(|n| (-2.0 * n as f64).exp()).sum::<f64>().sqrt();
        assert!((frob - want).abs() <= (-21.0f64).exp());
        assert!(rep.hilbert_schmidt.unwrap().within_bound);
        assert!(rep.schatten[0].comparison.within_bound);
        assert_eq!(rep.kernel_dimensions.zero_cols, 20);
        assert_eq!(rep.kernel_dimensions.zero_rows, 20);
        assert_eq!(rep.kernel_dimensions.expected_zero_rows, 20);

        let rot = AffineSymbol::new(sp.clone(), 1.0, c(0.0, 1.0)).unwrap();
        let rep = compare(&rot, 16, SectionKind::Square, &[]).unwrap();
        assert!((rep.smallest_singular_value.unwrap().oracle - 1.0).abs() < 1e-12);
        assert_eq!(rep.closed_range, Some(true));

        let full = compare(&dil, 40, SectionKind::Columns, &[1.0]).unwrap();
        assert!((full.schatten[0].comparison.oracle - 1.0 / (E - 1.0)).abs() <= (-41.0f64).exp() + 1e-10);
    }

    #[test]
    fn rank_one_section() {
        let sp = Arc::new(
            Space::new(FrequencySequence::geometric_with_zero(1.0, 2.0).unwrap(), WeightSequence::constant(), 64).unwrap(),
        );
        let sym = AffineSymbol::new(sp, 0.0, c(0.5, 0.2)).unwrap();
        let rep = compare(&sym, 24, SectionKind::Square, &[1.0, 2.0]).unwrap();
        assert!(rep.operator_norm.within_bound, "{:?}", rep.operator_norm);
        assert!(rep.singular_values[1..].iter().all(|&s| s < 1e-14));
        assert_eq!(rep.kernel_dimensions.zero_rows, 23);
    }

    #[test]
    fn difference_of_full_turn_is_zero() {
        let sp = arith();
        let s0 = AffineSymbol::new(sp.clone(), 1.0, c(0.0, 0.0)).unwrap();
        let s1 = AffineSymbol::new(sp, 1.0, c(0.0, 2.0 * std::f64::consts::PI)).unwrap();
        let d = truncate_difference(&s0, &s1, 32).unwrap();
        assert_eq!(d.matrix.max_abs(), 0.0);
    }
}
