//! Cyclicity of `C_{az+b}` and the weighted-shift model `T = I ⊕ S_α`.
//!
//! When `λ_1 = 0` and `λ_n = λ_2 a^{n-2}`, the operator is unitarily
//! equivalent to `I ⊕ S_α` on `C ⊕ H²₀`, where `S_α e_j = α_j e_{j+1}` and
//! `α_j = r_{j+1}(a, Re b)`. Products `ω_j = α_1⋯α_j` underflow quickly
//! (for `b = 1` they are `e^{-(2^j - 1)}`), so the model keeps `log ω_j` and
//! every sum over `ω_j^{-2}` is accumulated in log space.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{pair, unimodular};
use crate::operator::AffineSymbol;
use crate::oracle::DenseMatrix;
use crate::window::{is_stable, LogSumExp};

/// Default Abel–Dini exponent in `h_j = ω_j s_j^γ`.
pub const DEFAULT_GAMMA: f64 = 0.55;

/// Partial sum of `ω_j^{-2}` that counts as evidence of divergence.
pub const DIVERGENCE_THRESHOLD: f64 = 1e3;

/// Relative pivot threshold of the Krylov rank oracle.
pub const KRYLOV_TOL: f64 = 1e-8;

/// Phase separation below which two unimodular eigenvalues coincide.
pub const EIGEN_TOL: f64 = 1e-12;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `S_α` through its log-weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftModel {
    /// `log α_j`, `j = 1..=len`.
    log_alpha: Vec<f64>,
    /// `log ω_j`, `j = 1..=len`.
    log_omega: Vec<f64>,
    /// `Σ ω_j^{-2}` is known to diverge (every `α_j ≤ 1`).
    analytic_divergence: bool,
}

impl ShiftModel {
    pub fn from_log_alpha(log_alpha: Vec<f64>) -> Result<Self> {
        if let Some(j) = log_alpha.iter().position(|x| !x.is_finite() && *x != f64::INFINITY) {
            return Err(Error::InvalidSequence(format!("α_{} is zero or undefined", j + 1)));
        }
        if log_alpha.iter().any(|x| x.is_infinite()) {
            return Err(Error::InvalidSequence("α must be bounded".into()));
        }
        let mut acc = 0.0;
        let log_omega = log_alpha
            .iter()
            .map(|&l| {
                acc += l;
                acc
            })
            .collect();
        let analytic_divergence = log_alpha.iter().all(|&l| l <= 0.0);
        Ok(ShiftModel { log_alpha, log_omega, analytic_divergence: false }.with_certificate(analytic_divergence))
    }

    /// `α_j ≡ alpha`.
    pub fn constant(alpha: f64, len: usize) -> Result<Self> {
        Self::from_log_alpha(vec![alpha.ln(); len])
    }

    fn with_certificate(mut self, holds: bool) -> Self {
        self.analytic_divergence = holds;
        self
    }

    pub fn len(&self) -> usize {
        self.log_alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_alpha.is_empty()
    }

    pub fn alpha(&self, j: usize) -> f64 {
        self.log_alpha[j - 1].exp()
    }

    pub fn log_alpha(&self, j: usize) -> f64 {
        self.log_alpha[j - 1]
    }

    /// `log ω_j`, with `ω_0 = 1`.
    pub fn log_omega(&self, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            self.log_omega[j - 1]
        }
    }

    pub fn omega(&self, j: usize) -> f64 {
        self.log_omega(j).exp()
    }

    /// Whether divergence of `Σ ω_j^{-2}` is certified from `α_j ≤ 1`.
    pub fn analytic_divergence(&self) -> bool {
        self.analytic_divergence
    }

    /// `N×N` section of `T = I ⊕ S_α` in the basis `(e_0, e_1, …)`.
    pub fn section(&self, n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(n, n);
        if n > 0 {
            m.set(0, 0, Complex64::new(1.0, 0.0));
        }
        for j in 1..n.saturating_sub(1) {
            if j <= self.len() {
                m.set(j + 1, j, Complex64::new(self.alpha(j), 0.0));
            }
        }
        m
    }

    /// `Σ_{j ≤ J} ω_j^{-2}` over the window, with its stabilization flag.
    pub fn divergence_evidence(&self) -> DivergenceEvidence {
        let mut acc = LogSumExp::default();
        let running: Vec<f64> = self
            .log_omega
            .iter()
            .map(|&lw| {
                acc.push(-2.0 * lw);
                acc.value().exp()
            })
            .collect();
        let partial_sum = running.last().copied().unwrap_or(0.0);
        let stabilized = is_stable(&running);
        let evidenced = self.analytic_divergence || (partial_sum > DIVERGENCE_THRESHOLD && !stabilized);
        DivergenceEvidence { partial_sum, stabilized, analytic: self.analytic_divergence, evidenced, window: self.len() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceEvidence {
    pub partial_sum: f64,
    pub stabilized: bool,
    pub analytic: bool,
    pub evidenced: bool,
    pub window: usize,
}

/// The shift model of `C_{az+b}` with `λ_1 = 0` and one non-zero initial point.
pub fn shift_from_space(sym: &AffineSymbol, horizon: usize) -> Result<ShiftModel> {
    if !(sym.a() > 1.0) {
        return Err(Error::InvalidSymbol("shift model needs a > 1".into()));
    }
    let freq = sym.space().frequencies();
    let census = freq.initial_points(sym.a(), sym.space().horizon())?;
    if census.zero != [1] || census.nonzero.len() != 1 {
        return Err(Error::WrongInitialPointCensus(format!(
            "{} zero and {} non-zero initial points in the first {} indices",
            census.zero.len(),
            census.nonzero.len(),
            sym.space().horizon()
        )));
    }
    // the census gives λ_{n+1} = a·λ_n for n ≥ 2, so m_n = n + 1 past the cached window
    let space = sym.space();
    let re_b = sym.b().re;
    let mut log_alpha = Vec::with_capacity(horizon);
    for j in 1..=horizon {
        let n = j + 1;
        let l = if n <= sym.window() {
            sym.log_r(n)?
        } else {
            let lambda = space.lambda(n)?;
            let decay = if re_b == 0.0 || lambda == 0.0 { 0.0 } else { -lambda * re_b };
            decay + space.log_weight_ratio(n + 1, n)?
        };
        if !l.is_finite() {
            // α_j underflows past every representable exponent: stop the window here
            break;
        }
        log_alpha.push(l);
    }
    let certified = sym.closed_form_exponent().is_some_and(|k| k <= 0.0);
    Ok(ShiftModel::from_log_alpha(log_alpha)?.with_certificate(certified))
}

/// `u = ν + (z − 1)p` with `p = Σ_{j ≤ s} a_j z^j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxPolynomial {
    #[serde(with = "pair")]
    pub nu: Complex64,
    /// `a_0, …, a_s`.
    #[serde(with = "pair::vec")]
    pub p: Vec<Complex64>,
    #[serde(with = "pair")]
    pub epsilon: Complex64,
    pub gamma: f64,
    /// Degree of `u`, i.e. `s + 1`.
    pub degree: usize,
    pub predicted_residual: f64,
    /// `‖u(S_α)e_1‖` from the coefficient vector.
    pub measured_residual: f64,
}

impl ApproxPolynomial {
    pub fn s(&self) -> usize {
        self.p.len() - 1
    }

    /// Coefficients `b_0, …, b_{s+1}` of `u`.
    pub fn u_coefficients(&self) -> Vec<Complex64> {
        let s = self.s();
        let mut b = Vec::with_capacity(s + 2);
        b.push(self.nu - self.p[0]);
        for j in 1..=s {
            b.push(self.p[j - 1] - self.p[j]);
        }
        b.push(self.p[s]);
        b
    }

    /// `u(z) = ν + (z − 1)p(z)`; equals `ν` exactly at `z = 1`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let p = self.p.iter().rev().fold(zero(), |acc, &c| acc * z + c);
        self.nu + (z - 1.0) * p
    }
}

/// `‖Σ b_j S_α^j e_1‖` through `p(S_α)e_1 = Σ b_j ω_j e_{j+1}`.
pub fn residual_from_coefficients(model: &ShiftModel, b: &[Complex64]) -> Result<f64> {
    if b.len() > model.len() + 1 {
        return Err(Error::DegreeCapExceeded { cap: model.len(), target: 0.0 });
    }
    let mut acc = LogSumExp::default();
    for (j, c) in b.iter().enumerate() {
        let n = c.norm();
        if n > 0.0 {
            acc.push(2.0 * (n.ln() + model.log_omega(j)));
        }
    }
    Ok((0.5 * acc.value()).exp())
}

/// `log s_j`, `log A_j`, `log B_j` for `j = 1..=len`, with
/// `s_j = Σ_{i≤j} ω_i^{-2}`, `A_j = Σ_{i≤j} ω_i^{-2} s_i^{-γ}`, `B_j = Σ_{i≤j} ω_i^{-2} s_i^{-2γ}`.
struct Sums {
    log_a: Vec<f64>,
    log_b: Vec<f64>,
}

fn sums(model: &ShiftModel, gamma: f64, len: usize) -> Sums {
    let (mut s, mut a, mut b) = (LogSumExp::default(), LogSumExp::default(), LogSumExp::default());
    let mut out = Sums { log_a: Vec::with_capacity(len), log_b: Vec::with_capacity(len) };
    for j in 1..=len {
        let w = -2.0 * model.log_omega(j);
        s.push(w);
        let ls = s.value();
        a.push(w - gamma * ls);
        b.push(w - 2.0 * gamma * ls);
        out.log_a.push(a.value());
        out.log_b.push(b.value());
    }
    out
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.5 && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSequence(format!("γ must lie in (1/2, 1), got {gamma}")))
    }
}

fn assemble(model: &ShiftModel, nu: Complex64, s: usize, gamma: f64, sums: &Sums) -> Result<ApproxPolynomial> {
    let log_as = sums.log_a[s - 1];
    let mut p = Vec::with_capacity(s + 1);
    p.push(nu);
    for j in 1..s {
        p.push(nu * -(sums.log_a[j - 1] - log_as).exp_m1());
    }
    p.push(zero());
    let epsilon = nu * (-log_as).exp();
    let predicted_residual = nu.norm() * (0.5 * sums.log_b[s - 1] - log_as).exp();
    let mut poly = ApproxPolynomial { nu, p, epsilon, gamma, degree: s + 1, predicted_residual, measured_residual: 0.0 };
    poly.measured_residual = residual_from_coefficients(model, &poly.u_coefficients())?;
    Ok(poly)
}

/// `u_k` of degree `s + 1` for a fixed `s` (the `ν ≠ 0` recursion).
pub fn approx_polynomial_of_degree(model: &ShiftModel, nu: Complex64, s: usize, gamma: f64) -> Result<ApproxPolynomial> {
    check_gamma(gamma)?;
    if s == 0 || s + 1 > model.len() {
        return Err(Error::DegreeCapExceeded { cap: model.len(), target: f64::NAN });
    }
    if nu == zero() {
        return zero_target(model, s, gamma, None);
    }
    assemble(model, nu, s, gamma, &sums(model, gamma, s))
}

/// `ν = 0`: fixed `s`, coefficients scaled by `ε` until the residual meets `target`.
fn zero_target(model: &ShiftModel, s: usize, gamma: f64, target: Option<f64>) -> Result<ApproxPolynomial> {
    let sums = sums(model, gamma, s);
    let one = Complex64::new(1.0, 0.0);
    // a_j = ε(1 − A_j), residual = ε·sqrt(C)
    let mut p = vec![one];
    for j in 1..=s {
        p.push(one - sums.log_a[j - 1].exp());
    }
    let unit = ApproxPolynomial {
        nu: zero(),
        p,
        epsilon: one,
        gamma,
        degree: s + 1,
        predicted_residual: 0.0,
        measured_residual: 0.0,
    };
    let c = residual_from_coefficients(model, &unit.u_coefficients())?;
    let eps = match target {
        Some(t) => 0.5 * t / c,
        None => 1.0,
    };
    let mut poly = ApproxPolynomial {
        p: unit.p.iter().map(|x| x * eps).collect(),
        epsilon: Complex64::new(eps, 0.0),
        predicted_residual: eps * c,
        ..unit
    };
    poly.measured_residual = residual_from_coefficients(model, &poly.u_coefficients())?;
    Ok(poly)
}

/// Smallest-degree `u_k` with `u_k(1) = ν` and predicted residual at most `target`.
pub fn build_approx_polynomial(
    model: &ShiftModel,
    nu: Complex64,
    target: f64,
    degree_cap: usize,
    gamma: f64,
) -> Result<ApproxPolynomial> {
    check_gamma(gamma)?;
    let evidence = model.divergence_evidence();
    if !evidence.evidenced {
        return Err(Error::DivergenceNotEvidenced(evidence.partial_sum));
    }
    if !(target > 0.0) {
        return Err(Error::InvalidSequence(format!("target must be positive, got {target}")));
    }
    if nu == zero() {
        if degree_cap < 2 || model.len() < 2 {
            return Err(Error::DegreeCapExceeded { cap: degree_cap, target });
        }
        return zero_target(model, 1, gamma, Some(target));
    }
    // u has degree s + 1 and needs ω_{s+1}
    let max_s = degree_cap.saturating_sub(1).min(model.len().saturating_sub(1));
    let sums = sums(model, gamma, max_s);
    let log_target = (target / nu.norm()).ln();
    let s = (1..=max_s)
        .find(|&s| 0.5 * sums.log_b[s - 1] - sums.log_a[s - 1] <= log_target)
        .ok_or(Error::DegreeCapExceeded { cap: degree_cap, target })?;
    assemble(model, nu, s, gamma, &sums)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub degree: usize,
    pub predicted_residual: f64,
    pub measured_residual: f64,
}

/// Residual of `u_k` over `s = 1, 2, 4, …` up to `degree_cap`.
pub fn residual_trace(model: &ShiftModel, nu: Complex64, degree_cap: usize, gamma: f64) -> Result<Vec<TracePoint>> {
    check_gamma(gamma)?;
    let max_s = degree_cap.saturating_sub(1).min(model.len().saturating_sub(1));
    let sums = sums(model, gamma, max_s);
    let mut out = Vec::new();
    let mut s = 1;
    while s <= max_s {
        let u = assemble(model, nu, s, gamma, &sums)?;
        out.push(TracePoint { degree: u.degree, predicted_residual: u.predicted_residual, measured_residual: u.measured_residual });
        if s == max_s {
            break;
        }
        s = (s * 2).min(max_s);
    }
    Ok(out)
}

/// `p = p̃ + u` approximating `μ e_0 ⊕ y` from the seed `e_0 ⊕ e_1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicApproximation {
    /// Coefficients of `p̃` (degree `N − 1`).
    #[serde(with = "pair::vec")]
    pub interpolant: Vec<Complex64>,
    pub interpolation_offset: f64,
    pub u: ApproxPolynomial,
    /// Coefficients of `p = p̃ + u`.
    #[serde(with = "pair::vec")]
    pub coefficients: Vec<Complex64>,
    /// `p̃(1) + u(1)`.
    #[serde(with = "pair")]
    pub value_at_one: Complex64,
    /// `‖p(S_α)e_1 − y‖` by direct shift application.
    pub residual: f64,
}

/// `p̃` with `p̃(S_α)e_1 − y = offset·e_1` and the interpolation offset used.
pub fn interpolate(model: &ShiftModel, y: &[Complex64], offset: f64) -> Result<Vec<Complex64>> {
    if y.is_empty() {
        return Ok(Vec::new());
    }
    if y.len() > model.len() {
        return Err(Error::DegreeCapExceeded { cap: model.len(), target: f64::NAN });
    }
    let mut c = Vec::with_capacity(y.len());
    c.push(y[0] + offset);
    for m in 1..y.len() {
        // (p̃(S)e_1)_{m+1} = c_m ω_m
        c.push(y[m] * (-model.log_omega(m)).exp());
    }
    Ok(c)
}

/// `Σ c_j S_α^j e_1` by stepping the one-hot vector through `S_α`.
pub fn apply_polynomial(model: &ShiftModel, c: &[Complex64]) -> Result<Vec<Complex64>> {
    if c.len() > model.len() + 1 {
        return Err(Error::DegreeCapExceeded { cap: model.len(), target: f64::NAN });
    }
    let mut out = Vec::with_capacity(c.len());
    let mut x = 1.0f64;
    for (j, &cj) in c.iter().enumerate() {
        out.push(cj * x);
        if j < model.len() {
            x *= model.alpha(j + 1);
        }
    }
    Ok(out)
}

/// Polynomial `p` with `p(1) = μ` and `‖p(S_α)e_1 − y‖ < ε`; `y[i]` is the `e_{i+1}` coordinate.
pub fn cyclic_approximation(
    model: &ShiftModel,
    mu: Complex64,
    y: &[Complex64],
    eps: f64,
    degree_cap: usize,
    gamma: f64,
) -> Result<CyclicApproximation> {
    if !(eps > 0.0) {
        return Err(Error::InvalidSequence(format!("ε must be positive, got {eps}")));
    }
    let offset = if y.is_empty() { 0.0 } else { (eps.sqrt() / 2.0).min(eps / 4.0) };
    let interpolant = interpolate(model, y, offset)?;
    let p_tilde_one: Complex64 = interpolant.iter().sum();
    let nu = mu - p_tilde_one;
    let u = build_approx_polynomial(model, nu, eps / 2.0, degree_cap, gamma)?;
    let mut coefficients = u.u_coefficients();
    if coefficients.len() < interpolant.len() {
        coefficients.resize(interpolant.len(), zero());
    }
    for (c, t) in coefficients.iter_mut().zip(&interpolant) {
        *c += t;
    }
    let value_at_one = p_tilde_one + u.evaluate(Complex64::new(1.0, 0.0));
    let image = apply_polynomial(model, &coefficients)?;
    let mut sq = 0.0;
    for (i, v) in image.iter().enumerate() {
        let target = y.get(i).copied().unwrap_or(zero());
        sq += (v - target).norm_sqr();
    }
    for t in y.iter().skip(image.len()) {
        sq += t.norm_sqr();
    }
    Ok(CyclicApproximation {
        interpolant,
        interpolation_offset: offset,
        u,
        coefficients,
        value_at_one,
        residual: sq.sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Cyclic,
    NotCyclic,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Census {
    pub checked: usize,
    pub zero_count: usize,
    pub nonzero_count: usize,
    /// First few initial points.
    pub zero: Vec<usize>,
    pub nonzero: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicityVerdict {
    pub verdict: Verdict,
    pub reason: String,
    /// `Some(false)` whenever the verdict is decided.
    pub supercyclic: Option<bool>,
    /// False when the verdict rests on a finite window only.
    pub certified: bool,
    pub census: Option<Census>,
    pub divergence: Option<DivergenceEvidence>,
}

impl CyclicityVerdict {
    fn decided(verdict: Verdict, reason: impl Into<String>, certified: bool) -> Self {
        CyclicityVerdict {
            verdict,
            reason: reason.into(),
            supercyclic: Some(false),
            certified,
            census: None,
            divergence: None,
        }
    }
}

/// Cyclicity verdict for a bounded symbol over `horizon` indices.
pub fn classify_cyclicity(sym: &AffineSymbol, horizon: usize) -> Result<CyclicityVerdict> {
    if !sym.is_bounded() {
        return Err(Error::UnboundedSymbol(
            sym.boundedness().reason.clone().unwrap_or_else(|| "boundedness undecided".into()),
        ));
    }
    let (a, b) = (sym.a(), sym.b());
    let space = sym.space();
    if a == 0.0 {
        return Ok(CyclicityVerdict::decided(Verdict::NotCyclic, "rank one: every orbit spans at most two dimensions", true));
    }
    if a == 1.0 {
        if b == zero() {
            return Ok(CyclicityVerdict::decided(Verdict::NotCyclic, "identity: the orbit contains only one function", true));
        }
        if b.re != 0.0 {
            return Ok(CyclicityVerdict::decided(
                Verdict::Cyclic,
                "eigenvalues e^{-λ_n b} have strictly monotone moduli",
                true,
            ));
        }
        let h = space.frequencies().window_len(horizon);
        let mut phases = Vec::with_capacity(h);
        for n in 1..=h {
            let z = unimodular(space.lambda(n)?, b.im);
            phases.push((z.arg().rem_euclid(TAU), n));
        }
        phases.sort_by(|x, y| x.0.total_cmp(&y.0));
        let clash = phases
            .windows(2)
            .find(|w| w[1].0 - w[0].0 <= EIGEN_TOL)
            .map(|w| (w[0].1.min(w[1].1), w[0].1.max(w[1].1)))
            .or_else(|| {
                let (first, last) = (phases.first()?, phases.last()?);
                (phases.len() > 1 && first.0 + TAU - last.0 <= EIGEN_TOL).then(|| (first.1.min(last.1), first.1.max(last.1)))
            });
        return Ok(match clash {
            Some((n, m)) => CyclicityVerdict::decided(
                Verdict::NotCyclic,
                format!("eigenvalues e^{{-λ_n b}} coincide for n = {n}, m = {m}"),
                true,
            ),
            None => CyclicityVerdict::decided(
                Verdict::Cyclic,
                format!("eigenvalues e^{{-λ_n b}} pairwise distinct over {h} indices"),
                false,
            ),
        });
    }
    let points = space.frequencies().initial_points(a, horizon)?;
    let census = Census {
        checked: space.frequencies().window_len(horizon),
        zero_count: points.zero.len(),
        nonzero_count: points.nonzero.len(),
        zero: points.zero.iter().take(8).copied().collect(),
        nonzero: points.nonzero.iter().take(8).copied().collect(),
    };
    let mut verdict = if points.nonzero.len() >= 2 {
        CyclicityVerdict::decided(
            Verdict::NotCyclic,
            format!(
                "at least two non-zero initial points (n = {}, {}): their coefficients never appear in the orbit",
                points.nonzero[0], points.nonzero[1]
            ),
            true,
        )
    } else if points.nonzero.len() == 1 && points.zero.is_empty() {
        CyclicityVerdict::decided(Verdict::Cyclic, "one initial point: the orbit of q_1 reaches every basis direction", false)
    } else if points.nonzero.len() == 1 && points.zero == [1] {
        let model = shift_from_space(sym, horizon)?;
        let evidence = model.divergence_evidence();
        let beta_star = space.beta_star().value;
        let mut v = if evidence.evidenced {
            let how = if evidence.analytic { "every α_j ≤ 1" } else { "windowed partial sum" };
            CyclicityVerdict::decided(
                Verdict::Cyclic,
                format!("Σ ω_j^{{-2}} diverges ({how}): I ⊕ S_α is cyclic"),
                evidence.analytic,
            )
        } else if b.re > a * beta_star && b.re >= 0.0 {
            CyclicityVerdict::decided(Verdict::Cyclic, format!("Re(b) = {} > a·β* = {} and Re(b) ≥ 0", b.re, a * beta_star), true)
        } else {
            CyclicityVerdict {
                verdict: Verdict::Inconclusive,
                reason: format!(
                    "(ω_j^{{-1}}) looks square-summable (partial sum {:.6e}) and Re(b) ≤ a·β*",
                    evidence.partial_sum
                ),
                supercyclic: None,
                certified: false,
                census: None,
                divergence: None,
            }
        };
        v.divergence = Some(evidence);
        v
    } else {
        CyclicityVerdict {
            verdict: Verdict::Inconclusive,
            reason: "initial-point census outside the classified cases".into(),
            supercyclic: None,
            certified: false,
            census: None,
            divergence: None,
        }
    };
    verdict.census = Some(census);
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KrylovReport {
    pub dimension: usize,
    pub powers: usize,
    pub rank: usize,
    /// 1-based rows that are exactly zero in every Krylov vector.
    pub structural_zero_rows: Vec<usize>,
}

/// Numeric rank of `span{f, Tf, …, T^M f}` by column-pivoted Gram–Schmidt
/// on normalized Krylov vectors.
pub fn krylov_density_oracle(t: &DenseMatrix, seed: &[Complex64], powers: usize) -> KrylovReport {
    let n = t.rows();
    assert_eq!(n, t.cols(), "Krylov oracle needs a square matrix");
    assert_eq!(n, seed.len(), "seed dimension mismatch");
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(powers + 1);
    let mut touched = vec![false; n];
    let mut x = seed.to_vec();
    for k in 0..=powers {
        for (flag, v) in touched.iter_mut().zip(&x) {
            *flag |= *v != zero();
        }
        cols.push(x.clone());
        if k < powers {
            x = t.mul_vec(&x);
        }
    }
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut work: Vec<Vec<Complex64>> = cols
        .into_iter()
        .filter_map(|c| {
            let s = norm(&c);
            (s > 0.0).then(|| c.into_iter().map(|z| z / s).collect())
        })
        .collect();
    let mut rank = 0;
    while rank < n && !work.is_empty() {
        let (idx, best) = work
            .iter()
            .enumerate()
            .map(|(i, c)| (i, norm(c)))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= KRYLOV_TOL {
            break;
        }
        let q: Vec<Complex64> = work.swap_remove(idx).into_iter().map(|z| z / best).collect();
        for c in &mut work {
            let proj: Complex64 = q.iter().zip(c.iter()).map(|(a, b)| a.conj() * b).sum();
            for (ci, qi) in c.iter_mut().zip(&q) {
                *ci -= proj * qi;
            }
        }
        rank += 1;
    }
    KrylovReport {
        dimension: n,
        powers,
        rank,
        structural_zero_rows: (0..n).filter(|&i| !touched[i]).map(|i| i + 1).collect(),
    }
}
