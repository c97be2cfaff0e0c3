//! The Hilbert space `H(β, Λ)` of Dirichlet series `f(z) = Σ a_n e^{-λ_n z}`
//! with `‖f‖² = Σ |a_n|² β_n²`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{exp_neg, pair};
use num_traits::ToPrimitive;

use crate::sequences::{FrequencyGenerator, FrequencySequence, WeightGenerator, WeightSequence};
use crate::window::Estimate;

/// Kernel truncation is abandoned past this many terms.
pub const KERNEL_TERM_CAP: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq)]
pub struct Space {
    freq: FrequencySequence,
    weights: WeightSequence,
    horizon: usize,
    l: Estimate,
    beta_star: Estimate,
}

impl Space {
    /// Builds the space, estimating `L` and `β_*` over `horizon` indices.
    /// Rejects the regimes `L = ∞` and `β_* = ±∞`.
    pub fn new(freq: FrequencySequence, weights: WeightSequence, horizon: usize) -> Result<Self> {
        if horizon < 8 {
            return Err(Error::InvalidSequence(format!("horizon must be ≥ 8, got {horizon}")));
        }
        let l = freq.compute_l(horizon);
        let beta_star = weights.compute_beta_star(&freq, horizon)?;
        if !l.value.is_finite() {
            return Err(Error::InvalidSequence("L must be finite".into()));
        }
        if !beta_star.value.is_finite() {
            return Err(Error::InvalidSequence(format!("β_* must be finite, got {}", beta_star.value)));
        }
        Ok(Space { freq, weights, horizon, l, beta_star })
    }

    pub fn frequencies(&self) -> &FrequencySequence {
        &self.freq
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn l(&self) -> Estimate {
        self.l
    }

    pub fn beta_star(&self) -> Estimate {
        self.beta_star
    }

    /// `θ = L/2 − β_*`, the abscissa of the canonical half-plane.
    pub fn theta(&self) -> f64 {
        self.l.value / 2.0 - self.beta_star.value
    }

    /// For prefix-sum weights over `Λ = (q^k)` the literature states
    /// `β_* = 1/(q² − q)`; this reports it next to the computed value.
    pub fn beta_star_check(&self) -> Option<BetaStarCheck> {
        if !matches!(self.weights.generator(), WeightGenerator::ExpPrefixSum) {
            return None;
        }
        let q = match self.freq.generator() {
            FrequencyGenerator::Geometric { ratio, .. } => ratio.to_f64()?,
            FrequencyGenerator::PowerOfBase { base, .. } => base.to_f64()?,
            _ => return None,
        };
        let alternative = 1.0 / (q * q - q);
        Some(BetaStarCheck {
            computed: self.beta_star,
            alternative,
            agrees: (self.beta_star.value - alternative).abs() <= 1e-9,
        })
    }

    pub fn domain(&self) -> HalfPlaneDomain {
        HalfPlaneDomain { theta: self.theta() }
    }

    pub fn lambda(&self, n: usize) -> Result<f64> {
        self.freq.lambda_at(n)
    }

    pub fn log_weight(&self, n: usize) -> Result<f64> {
        self.weights.log_weight(&self.freq, n)
    }

    pub fn weight(&self, n: usize) -> Result<f64> {
        self.weights.weight(&self.freq, n)
    }

    /// `log(β_m / β_n)`.
    pub fn log_weight_ratio(&self, m: usize, n: usize) -> Result<f64> {
        self.weights.log_ratio(&self.freq, m, n)
    }

    /// Reproducing kernel `k_w(z) = Σ β_n^{-2} e^{-λ_n (z + w̄)}` with a certified remainder.
    pub fn kernel_eval(&self, w: Complex64, z: Complex64, tol: f64) -> Result<KernelValue> {
        let domain = self.domain();
        domain.check(w)?;
        domain.check(z)?;
        let s = z + w.conj();
        let terms = self.kernel_terms(s.re, tol)?;
        let mut value = Complex64::new(0.0, 0.0);
        for n in 1..=terms.count {
            value += (-2.0 * self.log_weight(n)?).exp() * exp_neg(self.lambda(n)?, s);
        }
        Ok(KernelValue { value, tail_bound: terms.tail_bound, terms: terms.count })
    }

    /// `‖k_w‖ = (Σ β_n^{-2} e^{-2λ_n Re w})^{1/2}`.
    pub fn kernel_norm(&self, w: Complex64, tol: f64) -> Result<KernelNorm> {
        let k = self.kernel_eval(w, w, tol)?;
        Ok(KernelNorm { value: k.value.re.max(0.0).sqrt(), squared_tail_bound: k.tail_bound, terms: k.terms })
    }

    /// Smallest doubling truncation `N` whose tail `Σ_{n>N} β_n^{-2} e^{-λ_n s}` is below `tol`.
    pub fn kernel_terms(&self, s: f64, tol: f64) -> Result<KernelTerms> {
        let slope = self.weights.certified_slope().ok_or_else(|| {
            Error::TailNotCertifiable("weights carry no certified lower growth slope".into())
        })?;
        // β_n^{-2} ≤ e^{-2κλ_n}
        let t = s + 2.0 * slope;
        let mut count = 8;
        loop {
            let bound = self.freq.tail_exp_sum(count, t).ok_or_else(|| {
                Error::TailNotCertifiable(format!("no tail majorant for exponent {t}"))
            })?;
            if bound <= tol {
                return Ok(KernelTerms { count, tail_bound: bound });
            }
            if count >= KERNEL_TERM_CAP {
                return Err(Error::TailNotCertifiable(format!(
                    "tail {bound:e} still above {tol:e} after {count} terms"
                )));
            }
            count *= 2;
        }
    }

    /// Truncated kernel `k_w^{(N)}` as an element.
    pub fn kernel_element(self: &Arc<Self>, w: Complex64, terms: usize) -> Result<DirichletElement> {
        let coeffs = (1..=terms)
            .map(|n| Ok((n, (-2.0 * self.log_weight(n)?).exp() * exp_neg(self.lambda(n)?, w.conj()))))
            .collect::<Result<Vec<_>>>()?;
        Ok(DirichletElement::from_coefficients(self.clone(), coeffs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlaneDomain {
    pub theta: f64,
}

impl HalfPlaneDomain {
    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.theta
    }

    pub fn check(&self, z: Complex64) -> Result<()> {
        if self.contains(z) {
            Ok(())
        } else {
            Err(Error::OutsideDomain { re: z.re, theta: self.theta })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelTerms {
    pub count: usize,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    #[serde(with = "pair")]
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelNorm {
    pub value: f64,
    /// Bound on the neglected part of `‖k_w‖²`.
    pub squared_tail_bound: f64,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaStarCheck {
    pub computed: Estimate,
    pub alternative: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    #[serde(with = "pair")]
    pub value: Complex64,
    /// Floating-point summation error bound.
    pub error_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbscissaReport {
    /// `D_f = limsup log|a_n| / λ_n`; `-∞` for finitely supported elements.
    pub d_f: f64,
    /// `max log|a_n| / λ_n` over the support (diagnostic only).
    pub window_max: f64,
    /// Bounds `[D_f, D_f + L]` enclosing the convergence abscissae.
    pub interval: (f64, f64),
}

/// A finitely supported element `Σ a_n e^{-λ_n z}`.
#[derive(Debug, Clone)]
pub struct DirichletElement {
    space: Arc<Space>,
    coeffs: BTreeMap<usize, Complex64>,
}

impl PartialEq for DirichletElement {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.coeffs == other.coeffs
    }
}

fn same_space(a: &Arc<Space>, b: &Arc<Space>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl DirichletElement {
    pub fn zero(space: Arc<Space>) -> Self {
        DirichletElement { space, coeffs: BTreeMap::new() }
    }

    /// Zero coefficients are dropped; repeated indices accumulate.
    pub fn from_coefficients<I>(space: Arc<Space>, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (usize, Complex64)>,
    {
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            assert!(n >= 1, "coefficient indices start at 1");
            *map.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        DirichletElement { space, coeffs: map }
    }

    /// `e^{-λ_n z}`.
    pub fn monomial(space: Arc<Space>, n: usize) -> Self {
        Self::from_coefficients(space, [(n, Complex64::new(1.0, 0.0))])
    }

    /// Orthonormal basis vector `q_n = β_n^{-1} e^{-λ_n z}`.
    pub fn basis(space: Arc<Space>, n: usize) -> Result<Self> {
        let w = space.weight(n)?;
        Ok(Self::from_coefficients(space, [(n, Complex64::new(1.0 / w, 0.0))]))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, Complex64> {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_coefficients(self.space.clone(), self.coeffs.iter().map(|(&n, &c)| (n, s * c)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::MismatchedSpace);
        }
        let iter = self.coeffs.iter().chain(&other.coeffs).map(|(&n, &c)| (n, c));
        Ok(Self::from_coefficients(self.space.clone(), iter))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `⟨f, g⟩ = Σ a_n conj(b_n) β_n²`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::MismatchedSpace);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &a) in &self.coeffs {
            if let Some(&b) = other.coeffs.get(&n) {
                acc += a * b.conj() * (2.0 * self.space.log_weight(n)?).exp();
            }
        }
        Ok(acc)
    }

    pub fn norm(&self) -> Result<f64> {
        let mut acc = 0.0;
        for (&n, &a) in &self.coeffs {
            acc += a.norm_sqr() * (2.0 * self.space.log_weight(n)?).exp();
        }
        Ok(acc.sqrt())
    }

    /// `f(z)` for `z` in the canonical half-plane.
    pub fn evaluate(&self, z: Complex64) -> Result<Evaluation> {
        self.space.domain().check(z)?;
        let mut value = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0;
        for (&n, &a) in &self.coeffs {
            let term = a * exp_neg(self.space.lambda(n)?, z);
            magnitude += term.norm();
            value += term;
        }
        let error_bound = self.coeffs.len() as f64 * f64::EPSILON * magnitude;
        Ok(Evaluation { value, error_bound })
    }

    pub fn coefficient_abscissa(&self) -> Result<AbscissaReport> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut window_max = f64::NEG_INFINITY;
        for (&n, &a) in &self.coeffs {
            let lambda = self.space.lambda(n)?;
            if lambda > 0.0 {
                window_max = window_max.max(a.norm().ln() / lambda);
            }
        }
        let d_f = f64::NEG_INFINITY;
        Ok(AbscissaReport { d_f, window_max, interval: (d_f, d_f + self.space.l().value) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn arithmetic_constant() -> Arc<Space> {
        Arc::new(Space::new(FrequencySequence::arithmetic(), WeightSequence::constant(), 64).unwrap())
    }

    #[test]
    fn orthonormal_basis() {
        let space = Arc::new(
            Space::new(FrequencySequence::arithmetic(), WeightSequence::exp_linear(0.7).unwrap(), 64).unwrap(),
        );
        for n in 1..6 {
            let q = DirichletElement::basis(space.clone(), n).unwrap();
            assert!((q.inner_product(&q).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
            let q2 = DirichletElement::basis(space.clone(), n + 1).unwrap();
            assert_eq!(q.inner_product(&q2).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn inner_product_direct_sum() {
        let space = arithmetic_constant();
        let f = DirichletElement::from_coefficients(space.clone(), [(1, c(1.0, 0.0)), (2, c(1.0, 0.0))]);
        let g = DirichletElement::monomial(space, 2);
        assert_eq!(f.inner_product(&g).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn mismatched_space() {
        let a = DirichletElement::monomial(arithmetic_constant(), 1);
        let other = Arc::new(Space::new(FrequencySequence::factorial(), WeightSequence::constant(), 64).unwrap());
        let b = DirichletElement::monomial(other, 1);
        assert_eq!(a.inner_product(&b), Err(Error::MismatchedSpace));
    }

    #[test]
    fn evaluate_examples() {
        let space = arithmetic_constant();
        let e1 = DirichletElement::monomial(space.clone(), 1);
        let v = e1.evaluate(c(0.5, 0.0)).unwrap();
        assert!((v.value.re - 0.606_530_659_712_633_4).abs() < 1e-15);
        let f = e1.add(&DirichletElement::monomial(space.clone(), 2)).unwrap();
        let v = f.evaluate(c(0.1, 0.0)).unwrap();
        assert!((v.value.re - 1.723_568_171_113_941_4).abs() < 1e-15);
        assert!(v.error_bound < 1e-14);
        let zero = DirichletElement::zero(space.clone());
        assert_eq!(zero.evaluate(c(0.2, 3.0)).unwrap().value, c(0.0, 0.0));
        assert!(matches!(f.evaluate(c(0.0, 1.0)), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn kernel_closed_forms() {
        let space = arithmetic_constant();
        let k = space.kernel_eval(c(1.0, 0.0), c(1.0, 0.0), 1e-14).unwrap();
        assert!((k.value.re - 0.156_517_642_749_665_65).abs() < 1e-14, "{}", k.value.re);
        let k = space.kernel_eval(c(1.0, std::f64::consts::PI), c(1.0, 0.0), 1e-14).unwrap();
        assert!((k.value.re + 0.119_202_922_022_117_56).abs() < 1e-14);
        assert!(k.value.im.abs() < 1e-14);
        let n1 = space.kernel_norm(c(1.0, 0.0), 1e-14).unwrap();
        assert!((n1.value - 0.395_623_106_946_075_2).abs() < 1e-14);
        let n05 = space.kernel_norm(c(0.5, 0.0), 1e-14).unwrap();
        assert!((n05.value - 0.762_873_978_366_890_2).abs() < 1e-14);
        let n2 = space.kernel_norm(c(2.0, 0.0), 1e-14).unwrap();
        assert!(n2.value < n1.value && n1.value < n05.value);
    }

    #[test]
    fn kernel_requires_domain_and_certificate() {
        let space = arithmetic_constant();
        assert!(matches!(space.kernel_eval(c(0.0, 0.0), c(1.0, 0.0), 1e-10), Err(Error::OutsideDomain { .. })));
        let listed = Space::new(
            FrequencySequence::explicit((1..=20).map(f64::from).collect()).unwrap(),
            WeightSequence::constant(),
            20,
        )
        .unwrap();
        assert!(matches!(
            listed.kernel_eval(c(1.0, 0.0), c(1.0, 0.0), 1e-10),
            Err(Error::TailNotCertifiable(_))
        ));
    }

    #[test]
    fn kernel_hermitian_symmetry() {
        let space = arithmetic_constant();
        let w = c(0.7, 1.3);
        let z = c(1.1, -0.4);
        let kwz = space.kernel_eval(w, z, 1e-15).unwrap().value;
        let kzw = space.kernel_eval(z, w, 1e-15).unwrap().value;
        assert!((kwz - kzw.conj()).norm() < 1e-12);
    }

    #[test]
    fn abscissa_reporting() {
        let space = arithmetic_constant();
        let e1 = DirichletElement::monomial(space.clone(), 1);
        let r = e1.coefficient_abscissa().unwrap();
        assert_eq!(r.d_f, f64::NEG_INFINITY);
        assert_eq!(r.window_max, 0.0);
        let f = DirichletElement::from_coefficients(space.clone(), [(1, c(std::f64::consts::E.powi(2), 0.0))]);
        assert!((f.coefficient_abscissa().unwrap().window_max - 2.0).abs() < 1e-15);
        assert_eq!(DirichletElement::zero(space).coefficient_abscissa(), Err(Error::ZeroElement));
    }

    #[test]
    fn rejects_infinite_beta_star_and_short_horizon() {
        assert!(Space::new(FrequencySequence::arithmetic(), WeightSequence::constant(), 4).is_err());
    }

    #[test]
    fn beta_star_check_flags_disagreement() {
        let sp = Space::new(FrequencySequence::geometric(2.0, 2.0).unwrap(), WeightSequence::exp_prefix_sum(), 64).unwrap();
        let check = sp.beta_star_check().unwrap();
        assert!((check.computed.value - 1.0).abs() < 1e-12);
        assert_eq!(check.alternative, 0.5);
        assert!(!check.agrees);
        let plain = Space::new(FrequencySequence::arithmetic(), WeightSequence::constant(), 64).unwrap();
        assert!(plain.beta_star_check().is_none());
    }
}
