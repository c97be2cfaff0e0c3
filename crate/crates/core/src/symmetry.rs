//! Conjugations `J_c f = Σ conj(a_n) e^{-icλ_n} e^{-λ_n z}` and complex
//! symmetry of `C_{az+b}`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::unimodular;
use crate::operator::{AffineSymbol, ZERO_TOL};
use crate::oracle::column_section;
use crate::space::{DirichletElement, Space};

/// Defect ceiling for exact coefficient identities.
pub const DEFECT_TOL: f64 = 1e-12;

/// Largest basis index drawn for random test elements.
const SAMPLE_SUPPORT: usize = 64;

#[derive(Debug, Clone)]
pub struct Conjugation {
    space: Arc<Space>,
    c: f64,
}

impl Conjugation {
    pub fn new(space: Arc<Space>, c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::InvalidSymbol(format!("conjugation shift must be finite, got {c}")));
        }
        Ok(Conjugation { space, c })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn apply(&self, f: &DirichletElement) -> Result<DirichletElement> {
        if f.space() != &self.space && **f.space() != *self.space {
            return Err(Error::MismatchedSpace);
        }
        let coeffs = f
            .coefficients()
            .iter()
            .map(|(&n, a)| Ok((n, a.conj() * unimodular(self.space.lambda(n)?, self.c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(DirichletElement::from_coefficients(self.space.clone(), coeffs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjugationReport {
    pub c: f64,
    pub samples: usize,
    pub isometry_defect: f64,
    pub involution_defect: f64,
    pub antilinearity_defect: f64,
}

impl ConjugationReport {
    pub fn passes(&self) -> bool {
        self.isometry_defect <= DEFECT_TOL && self.involution_defect <= DEFECT_TOL && self.antilinearity_defect <= DEFECT_TOL
    }
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random finitely supported element with at most 16 terms.
pub fn random_element(space: &Arc<Space>, rng: &mut ChaCha8Rng) -> DirichletElement {
    let max = SAMPLE_SUPPORT.min(space.frequencies().window_len(SAMPLE_SUPPORT));
    let terms = rng.gen_range(1..=16);
    let coeffs: Vec<_> = (0..terms).map(|_| (rng.gen_range(1..=max), random_complex(rng))).collect();
    let f = DirichletElement::from_coefficients(space.clone(), coeffs);
    if f.is_zero() {
        DirichletElement::monomial(space.clone(), 1)
    } else {
        f
    }
}

/// Relative isometry, involution and antilinearity defects over seeded samples.
pub fn verify_conjugation(conj: &Conjugation, samples: usize, seed: u64) -> Result<ConjugationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ConjugationReport {
        c: conj.c,
        samples,
        isometry_defect: 0.0,
        involution_defect: 0.0,
        antilinearity_defect: 0.0,
    };
    let i = Complex64::new(0.0, 1.0);
    for _ in 0..samples.max(1) {
        let f = random_element(&conj.space, &mut rng);
        let g = random_element(&conj.space, &mut rng);
        let alpha = random_complex(&mut rng);
        let nf = f.norm()?;
        let jf = conj.apply(&f)?;
        let jg = conj.apply(&g)?;
        rep.isometry_defect = rep.isometry_defect.max((jf.norm()? - nf).abs() / nf);
        rep.involution_defect = rep.involution_defect.max(conj.apply(&jf)?.sub(&f)?.norm()? / nf);
        let scale = nf + g.norm()?;
        let lhs = conj.apply(&f.scale(alpha).add(&g)?)?;
        let rhs = jf.scale(alpha.conj()).add(&jg)?;
        let mut d = lhs.sub(&rhs)?.norm()? / scale;
        d = d.max(conj.apply(&f.scale(Complex64::new(2.0, 0.0)))?.sub(&jf.scale(Complex64::new(2.0, 0.0)))?.norm()? / nf);
        d = d.max(conj.apply(&f.scale(i))?.sub(&jf.scale(-i))?.norm()? / nf);
        rep.antilinearity_defect = rep.antilinearity_defect.max(d);
    }
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryVerdict {
    ComplexSymmetric,
    NeverComplexSymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryDefect {
    pub c: f64,
    /// `max_{n ≤ N} ‖(C J − J C*) q_n‖`.
    pub defect: f64,
}

/// `dim ker` of `C P_N` and of its adjoint, read off structural zero columns and rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelWitness {
    pub dimension: usize,
    pub rows: usize,
    pub kernel_dim: usize,
    pub adjoint_kernel_dim: usize,
    /// First few basis indices `i` with `C* q_i = 0`.
    pub adjoint_kernel: Vec<usize>,
    /// Every listed zero row was confirmed by applying `C*` to `q_i`.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub verdict: SymmetryVerdict,
    pub reason: String,
    pub defects: Vec<SymmetryDefect>,
    pub witness: Option<KernelWitness>,
}

/// `max_{n ≤ N} ‖(C J_c − J_c C*) q_n‖`.
pub fn symmetry_defect(sym: &AffineSymbol, conj: &Conjugation, n: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 1..=n {
        let q = DirichletElement::basis(sym.space().clone(), k)?;
        let lhs = sym.apply(&conj.apply(&q)?)?;
        let rhs = conj.apply(&sym.apply_adjoint(&q)?)?;
        worst = worst.max(lhs.sub(&rhs)?.norm()?);
    }
    Ok(worst)
}

pub fn complex_symmetry_verdict(sym: &AffineSymbol, n: usize, conjugations: &[f64]) -> Result<SymmetryReport> {
    if !sym.is_bounded() {
        return Err(Error::UnboundedSymbol(
            sym.boundedness().reason.clone().unwrap_or_else(|| "boundedness undecided".into()),
        ));
    }
    if sym.a() == 0.0 {
        return Ok(SymmetryReport {
            verdict: SymmetryVerdict::ComplexSymmetric,
            reason: "rank one operators are complex symmetric".into(),
            defects: Vec::new(),
            witness: None,
        });
    }
    if sym.a() == 1.0 {
        let defects = conjugations
            .iter()
            .map(|&c| {
                let conj = Conjugation::new(sym.space().clone(), c)?;
                Ok(SymmetryDefect { c, defect: symmetry_defect(sym, &conj, n)? })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(SymmetryReport {
            verdict: SymmetryVerdict::ComplexSymmetric,
            reason: "C_{z+b} is J_c-symmetric for every real c".into(),
            defects,
            witness: None,
        });
    }
    let t = column_section(sym, n)?;
    let zero_rows = t.matrix.zero_rows(ZERO_TOL);
    let zero_cols = t.matrix.zero_cols(ZERO_TOL);
    let mut verified = true;
    for &i in &zero_rows {
        let q = DirichletElement::basis(sym.space().clone(), i + 1)?;
        verified &= sym.apply_adjoint(&q)?.is_zero();
    }
    let witness = KernelWitness {
        dimension: n,
        rows: t.matrix.rows(),
        kernel_dim: zero_cols.len(),
        adjoint_kernel_dim: zero_rows.len(),
        adjoint_kernel: zero_rows.iter().take(8).map(|i| i + 1).collect(),
        verified,
    };
    Ok(SymmetryReport {
        verdict: SymmetryVerdict::NeverComplexSymmetric,
        reason: "C is injective while C* has a non-trivial kernel".into(),
        defects: Vec::new(),
        witness: Some(witness),
    })
}
