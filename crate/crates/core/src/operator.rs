//! Affine composition operators `C_{az+b} f = f(az + b)`.
//!
//! For `a ≥ 1` the operator maps `q_n` to `r_n(a, Re b)·(phase)·q_{m_n}` where
//! `λ_{m_n} = a λ_n` and
//!
//! ```text
//! r_n(a, x) = e^{-λ_n x} β_{m_n} / β_n,
//! ```
//!
//! so every spectral quantity reduces to the behaviour of `(r_n)`: its sup is
//! the norm, its limsup the essential norm, its inf decides closed range and
//! its `ℓ^p` summability decides Schatten membership. When `r_n = e^{κ λ_n}`
//! in closed form (diagonal case, constant or exp-linear weights) these are
//! evaluated analytically, otherwise over the symbol's window.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{exp_neg, pair};
use crate::sequences::{RatioSetCertificate, WeightGenerator};
use crate::space::{DirichletElement, Space};
use crate::window::{
    oscillation_block, running_inf, running_limsup, running_sup, Estimate, LogSumExp,
};

/// Values at or below this are reported as zero.
pub const ZERO_TOL: f64 = 1e-12;

/// Schatten abscissa comparisons closer than this are treated as on the boundary.
pub const ABSCISSA_TOL: f64 = 1e-9;

/// Default certified tail for the rank-one adjoint expansion.
pub const ADJOINT_TAIL_TOL: f64 = 1e-14;

/// `z ↦ az + b` maps `Re z > θ` into itself.
pub fn is_self_map(a: f64, b: Complex64, theta: f64) -> bool {
    if a > 0.0 {
        b.re >= (1.0 - a) * theta
    } else if a == 0.0 {
        b.re > theta
    } else {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Boundedness {
    pub self_map: bool,
    pub bounded: Option<bool>,
    pub reason: Option<String>,
    pub operator_norm: Option<Estimate>,
    pub ratio_set: Option<RatioSetCertificate>,
}

/// A symbol `φ(z) = az + b` bound to a space, with its index map and `r_n`
/// window materialized.
#[derive(Debug, Clone)]
pub struct AffineSymbol {
    space: Arc<Space>,
    a: f64,
    b: Complex64,
    index_map: Vec<usize>,
    ratio_set: Option<RatioSetCertificate>,
    log_r: Vec<f64>,
    profile: Option<f64>,
    boundedness: Boundedness,
}

impl AffineSymbol {
    pub fn new(space: Arc<Space>, a: f64, b: Complex64) -> Result<Self> {
        Self::with_horizon(space.clone(), a, b, space.horizon())
    }

    pub fn with_horizon(space: Arc<Space>, a: f64, b: Complex64, horizon: usize) -> Result<Self> {
        if !a.is_finite() || !b.re.is_finite() || !b.im.is_finite() {
            return Err(Error::InvalidSymbol("a and b must be finite".into()));
        }
        if !(a == 0.0 || a >= 1.0) {
            return Err(Error::InvalidSymbol(format!(
                "a must satisfy a = 0 or a ≥ 1 (0 < a < 1 never gives a bounded operator), got {a}"
            )));
        }
        let mut index_map = Vec::new();
        let mut ratio_set = None;
        if a >= 1.0 {
            let h = space.frequencies().window_len(horizon);
            let map = space.frequencies().index_map(a, h)?;
            let searched = map.len();
            let missing = map.iter().position(Option::is_none);
            index_map = map.into_iter().map_while(|m| m).collect();
            ratio_set = Some(match missing {
                Some(i) => RatioSetCertificate { member: false, witness: Some(i + 1), checked: i + 1 },
                None => RatioSetCertificate { member: true, witness: None, checked: searched },
            });
        }
        let mut sym = AffineSymbol {
            space,
            a,
            b,
            index_map,
            ratio_set,
            log_r: Vec::new(),
            profile: None,
            boundedness: Boundedness {
                self_map: false,
                bounded: None,
                reason: None,
                operator_norm: None,
                ratio_set,
            },
        };
        if a >= 1.0 {
            sym.log_r = (1..=sym.index_map.len()).map(|n| sym.log_r_value(n)).collect::<Result<_>>()?;
            sym.profile = sym.closed_form_exponent();
        }
        sym.boundedness = sym.compute_boundedness()?;
        Ok(sym)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Number of indices with a materialized `m_n` and `r_n`.
    pub fn window(&self) -> usize {
        self.index_map.len()
    }

    pub fn boundedness(&self) -> &Boundedness {
        &self.boundedness
    }

    pub fn is_bounded(&self) -> bool {
        self.boundedness.bounded == Some(true)
    }

    /// `κ` with `r_n = e^{κ λ_n}` for all `n`, when known in closed form.
    pub fn closed_form_exponent(&self) -> Option<f64> {
        if self.a == 1.0 {
            return Some(-self.b.re);
        }
        if self.a > 1.0 && self.ratio_set.is_some_and(|c| c.member) {
            return match self.space.weights().generator() {
                WeightGenerator::Constant => Some(-self.b.re),
                WeightGenerator::ExpLinear { c } => Some(c * (self.a - 1.0) - self.b.re),
                _ => None,
            };
        }
        None
    }

    /// `m_n` with `λ_{m_n} = a λ_n`.
    pub fn m(&self, n: usize) -> Result<usize> {
        if self.a < 1.0 {
            return Err(Error::InvalidSymbol("index map needs a ≥ 1".into()));
        }
        if let Some(&m) = self.index_map.get(n.wrapping_sub(1)) {
            return Ok(m);
        }
        self.space.frequencies().ratio_index(self.a, n)?.ok_or(Error::RatioIndexMissing(n))
    }

    /// The `n` with `m_n = k`, if `k` is in the image of the index map.
    pub fn preimage(&self, k: usize) -> Result<Option<usize>> {
        if k <= self.index_map.len() || self.index_map.last().is_some_and(|&m| m >= k) {
            return Ok(self.index_map.binary_search(&k).ok().map(|i| i + 1));
        }
        let (mut lo, mut hi) = (1usize, k);
        while lo <= hi {
            let mid = lo + (hi - lo) / 2;
            let m = self.m(mid)?;
            if m == k {
                return Ok(Some(mid));
            }
            if m < k {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        Ok(None)
    }

    fn log_r_value(&self, n: usize) -> Result<f64> {
        let m = self.m(n)?;
        let lambda = self.space.lambda(n)?;
        let decay = if self.b.re == 0.0 || lambda == 0.0 { 0.0 } else { -lambda * self.b.re };
        Ok(decay + self.space.log_weight_ratio(m, n)?)
    }

    /// `log r_n(a, Re b)`.
    pub fn log_r(&self, n: usize) -> Result<f64> {
        match self.log_r.get(n.wrapping_sub(1)) {
            Some(&v) => Ok(v),
            None => self.log_r_value(n),
        }
    }

    /// `r_n(a, Re b) = e^{-λ_n Re b} β_{m_n} / β_n`.
    pub fn r_value(&self, n: usize) -> Result<f64> {
        Ok(self.log_r(n)?.exp())
    }

    /// `r_1, …, r_H` over the materialized window.
    pub fn r_window(&self) -> Vec<f64> {
        self.log_r.iter().map(|l| l.exp()).collect()
    }

    fn compute_boundedness(&self) -> Result<Boundedness> {
        let theta = self.space.theta();
        let self_map = is_self_map(self.a, self.b, theta);
        let mut out = Boundedness {
            self_map,
            bounded: Some(false),
            reason: None,
            operator_norm: None,
            ratio_set: self.ratio_set,
        };
        if !self_map {
            out.reason = Some(if self.a == 0.0 {
                format!("Re(b) = {} must exceed θ = {theta}", self.b.re)
            } else {
                format!("Re(b) = {} must be at least (1 − a)θ = {}", self.b.re, (1.0 - self.a) * theta)
            });
            return Ok(out);
        }
        if self.a == 0.0 {
            let lambda1 = self.space.lambda(1)?;
            if lambda1 != 0.0 {
                out.reason = Some(format!("constant symbols need λ_1 = 0, got {lambda1}"));
                return Ok(out);
            }
            let k = self.space.kernel_norm(self.b, ADJOINT_TAIL_TOL)?;
            let norm = self.space.weight(1)? * k.value;
            out.bounded = Some(true);
            out.operator_norm = Some(Estimate { value: norm, converged: true, analytic: true });
            return Ok(out);
        }
        if let Some(cert) = self.ratio_set {
            if !cert.member {
                out.reason = Some(format!(
                    "a = {} is not in the ratio set: no λ_m equals a·λ_{}",
                    self.a,
                    cert.witness.unwrap_or(0)
                ));
                return Ok(out);
            }
        }
        if let Some(kappa) = self.profile {
            if kappa > 0.0 {
                out.reason = Some(format!("r_n = e^{{{kappa}·λ_n}} is unbounded"));
                return Ok(out);
            }
            let norm = (kappa * self.space.lambda(1)?).exp();
            out.bounded = Some(true);
            out.operator_norm = Some(Estimate::exact(norm));
            return Ok(out);
        }
        let sup = Estimate::windowed(&running_sup(&self.r_window()));
        if !sup.value.is_finite() {
            out.reason = Some("r_n overflows within the window".into());
            return Ok(out);
        }
        out.bounded = if sup.converged { Some(true) } else { None };
        if !sup.converged {
            out.reason = Some(format!("sup r_n has not stabilized over {} terms", self.window()));
        }
        out.operator_norm = Some(sup);
        Ok(out)
    }

    /// Boundedness with operator norm; undecided windows are an error.
    pub fn check_bounded(&self) -> Result<&Boundedness> {
        match self.boundedness.bounded {
            None => Err(Error::WindowNotConclusive(
                self.boundedness.reason.clone().unwrap_or_else(|| "sup r_n".into()),
            )),
            Some(_) => Ok(&self.boundedness),
        }
    }

    fn require_bounded(&self) -> Result<()> {
        if self.is_bounded() {
            Ok(())
        } else {
            Err(Error::UnboundedSymbol(
                self.boundedness.reason.clone().unwrap_or_else(|| "boundedness undecided".into()),
            ))
        }
    }

    pub fn operator_norm(&self) -> Result<f64> {
        self.require_bounded()?;
        Ok(self.boundedness.operator_norm.map(|e| e.value).unwrap_or(f64::NAN))
    }

    /// `C_φ f`.
    pub fn apply(&self, f: &DirichletElement) -> Result<DirichletElement> {
        self.require_bounded()?;
        let space = self.space.clone();
        if self.a == 0.0 {
            let value = f.evaluate(self.b)?.value;
            return Ok(DirichletElement::from_coefficients(space, [(1, value)]));
        }
        let mut out = Vec::with_capacity(f.coefficients().len());
        for (&n, &c) in f.coefficients() {
            out.push((self.m(n)?, c * exp_neg(self.space.lambda(n)?, self.b)));
        }
        Ok(DirichletElement::from_coefficients(space, out))
    }

    /// `C_φ^* g`, with the certified norm of the dropped tail (zero unless `a = 0`).
    pub fn apply_adjoint_with_tail(&self, g: &DirichletElement, tol: f64) -> Result<(DirichletElement, f64)> {
        self.require_bounded()?;
        let space = self.space.clone();
        if self.a == 0.0 {
            let g1 = g.coefficient(1);
            if g1 == Complex64::new(0.0, 0.0) {
                return Ok((DirichletElement::zero(space), 0.0));
            }
            let terms = self.space.kernel_terms(2.0 * self.b.re, tol * tol)?;
            let k = self.space.kernel_element(self.b, terms.count)?;
            let scale = g1 * (2.0 * self.space.log_weight(1)?).exp();
            let tail = scale.norm() * terms.tail_bound.sqrt();
            return Ok((k.scale(scale), tail));
        }
        let mut out = Vec::new();
        for (&k, &c) in g.coefficients() {
            if let Some(n) = self.preimage(k)? {
                let ratio = (2.0 * self.space.log_weight_ratio(k, n)?).exp();
                out.push((n, c * ratio * exp_neg(self.space.lambda(n)?, self.b.conj())));
            }
        }
        Ok((DirichletElement::from_coefficients(space, out), 0.0))
    }

    pub fn apply_adjoint(&self, g: &DirichletElement) -> Result<DirichletElement> {
        Ok(self.apply_adjoint_with_tail(g, ADJOINT_TAIL_TOL)?.0)
    }

    /// `limsup r_n` with its convergence flag.
    pub fn essential_norm_estimate(&self) -> Result<Estimate> {
        self.require_bounded()?;
        if self.a == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        if let Some(kappa) = self.profile {
            return Ok(Estimate::exact(if kappa < 0.0 { 0.0 } else { 1.0 }));
        }
        let r = self.r_window();
        Ok(Estimate::windowed(&running_limsup(&r, oscillation_block(r.len()))))
    }

    /// `‖C_φ‖_e = limsup r_n`.
    pub fn essential_norm(&self) -> Result<f64> {
        converged(self.essential_norm_estimate()?, "essential norm")
    }

    pub fn is_compact(&self) -> Result<bool> {
        Ok(self.essential_norm()? <= ZERO_TOL)
    }

    /// `inf r_n`.
    pub fn infimum_estimate(&self) -> Result<Estimate> {
        self.require_bounded()?;
        if let Some(kappa) = self.profile {
            return Ok(Estimate::exact(if kappa < 0.0 { 0.0 } else { 1.0 }));
        }
        Ok(Estimate::windowed(&running_inf(&self.r_window())))
    }

    /// Closed range: `inf r_n > 0` for `a ≥ 1`; rank one for `a = 0`.
    pub fn closed_range(&self) -> Result<bool> {
        self.require_bounded()?;
        if self.a == 0.0 {
            return Ok(true);
        }
        Ok(converged(self.infimum_estimate()?, "inf r_n")? > 0.0)
    }

    /// `Σ r_n^2`, i.e. the Hilbert–Schmidt norm.
    pub fn hilbert_schmidt(&self) -> Result<HilbertSchmidt> {
        self.require_bounded()?;
        if self.a == 0.0 {
            let norm = self.operator_norm()?;
            return Ok(HilbertSchmidt { finite: true, value: norm, tail_bound: 0.0, converged: true });
        }
        let s = self.power_sum(2.0)?;
        let value = if s.converges { s.partial_sum.sqrt() } else { f64::INFINITY };
        Ok(HilbertSchmidt { finite: s.converges, value, tail_bound: s.tail_bound, converged: s.converged })
    }

    /// `Σ_{n ≤ H} r_n^p` with a summability verdict.
    pub fn power_sum(&self, p: f64) -> Result<PowerSum> {
        let r = self.r_window();
        let terms: Vec<f64> = self.log_r.iter().map(|l| (p * l).exp()).collect();
        let partial_sum: f64 = terms.iter().sum();
        if let Some(kappa) = self.profile {
            if kappa >= 0.0 {
                return Ok(PowerSum { converges: false, partial_sum, tail_bound: f64::INFINITY, converged: true });
            }
            let freq = self.space.frequencies();
            let s = freq.summability_threshold(-p * kappa, self.space.horizon());
            return match s {
                Ok(s) => {
                    let tail_bound = if s.converges {
                        freq.tail_exp_sum(r.len(), -p * kappa).unwrap_or(f64::INFINITY)
                    } else {
                        f64::INFINITY
                    };
                    Ok(PowerSum { converges: s.converges, partial_sum, tail_bound, converged: s.l_converged })
                }
                Err(Error::Undetermined(_)) => Err(Error::SchattenUndetermined(-kappa)),
                Err(e) => Err(e),
            };
        }
        let mut acc = 0.0;
        let running: Vec<f64> = terms
            .iter()
            .map(|t| {
                acc += t;
                acc
            })
            .collect();
        let est = Estimate::windowed(&running);
        let converges = est.converged && est.value.is_finite();
        Ok(PowerSum {
            converges,
            partial_sum,
            tail_bound: if converges { 0.0 } else { f64::INFINITY },
            converged: est.converged,
        })
    }

    /// Convergence abscissa of `h_p(z) = Σ (β_{m_k}/β_k)^p e^{-pλ_k z}`.
    pub fn schatten_abscissa(&self, p: f64) -> Result<Estimate> {
        let l = self.space.l();
        if let Some(kappa) = self.profile {
            let weight_slope = kappa + self.b.re;
            return Ok(Estimate { value: weight_slope + l.value / p, converged: l.converged, analytic: true });
        }
        let mut acc = LogSumExp::default();
        let mut xs = Vec::with_capacity(self.window());
        for n in 1..=self.window() {
            acc.push(p * self.space.log_weight_ratio(self.m(n)?, n)?);
            let lambda = self.space.lambda(n)?;
            if lambda > 0.0 {
                xs.push(acc.value() / (p * lambda));
            }
        }
        Ok(Estimate::windowed(&running_limsup(&xs, 1)))
    }

    /// Schatten-`p` membership via `Σ r_k^p < ∞`.
    pub fn schatten_membership(&self, p: f64) -> Result<SchattenReport> {
        if !(p > 0.0) {
            return Err(Error::InvalidSymbol(format!("Schatten exponent must be positive, got {p}")));
        }
        self.require_bounded()?;
        if self.a == 0.0 {
            let norm = self.operator_norm()?;
            return Ok(SchattenReport {
                p,
                member: true,
                partial_sum: norm.powf(p),
                abscissa: None,
                converged: true,
            });
        }
        let abscissa = self.schatten_abscissa(p)?;
        let sum = self.power_sum(p);
        let partial_sum = self.log_r.iter().map(|l| (p * l).exp()).sum();
        let member = match sum {
            Ok(s) if self.profile.is_some() => s.converges,
            Err(Error::SchattenUndetermined(_)) => return Err(Error::SchattenUndetermined(abscissa.value)),
            Err(e) => return Err(e),
            Ok(_) => {
                let re = self.b.re;
                if re > abscissa.value + ABSCISSA_TOL {
                    true
                } else if re < abscissa.value - ABSCISSA_TOL {
                    false
                } else if self.essential_norm_estimate()?.value > ZERO_TOL {
                    // terms r_n^p do not vanish
                    false
                } else {
                    return Err(Error::SchattenUndetermined(abscissa.value));
                }
            }
        };
        Ok(SchattenReport { p, member, partial_sum, abscissa: Some(abscissa), converged: abscissa.converged })
    }

    /// `{r_k : k ≤ count}` sorted descending: the singular values of `C_φ P_count`.
    pub fn singular_values_closed_form(&self, count: usize) -> Result<Vec<f64>> {
        self.require_bounded()?;
        if self.a == 0.0 {
            return Ok(vec![self.operator_norm()?]);
        }
        let mut v = (1..=count).map(|n| self.r_value(n)).collect::<Result<Vec<_>>>()?;
        v.sort_by(|x, y| y.total_cmp(x));
        Ok(v)
    }

    /// Compactness of `C_φ − C_ψ`.
    pub fn compact_difference(&self, other: &AffineSymbol) -> Result<CompactDifference> {
        self.require_bounded()?;
        other.require_bounded()?;
        if !Arc::ptr_eq(&self.space, &other.space) && self.space != other.space {
            return Err(Error::MismatchedSpace);
        }
        let e1 = self.essential_norm_estimate()?;
        let e2 = other.essential_norm_estimate()?;
        let c1 = e1.value <= ZERO_TOL;
        let c2 = e2.value <= ZERO_TOL;
        let both_converged = e1.converged && e2.converged;
        if c1 && c2 {
            return Ok(CompactDifference {
                compact: true,
                essential_norm: Some(Estimate { value: 0.0, ..e1 }),
                reason: "both operators are compact".into(),
            });
        }
        if c1 != c2 {
            let ess = if c1 { e2 } else { e1 };
            return Ok(CompactDifference {
                compact: false,
                essential_norm: Some(ess),
                reason: "exactly one operator is compact".into(),
            });
        }
        if self.a != other.a {
            return Ok(CompactDifference {
                compact: false,
                essential_norm: None,
                reason: format!("non-compact operators with different slopes {} and {}", self.a, other.a),
            });
        }
        let len = self.window().min(other.window());
        let mut d = Vec::with_capacity(len);
        for n in 1..=len {
            let lambda = self.space.lambda(n)?;
            let ratio = self.space.log_weight_ratio(self.m(n)?, n)?.exp();
            d.push(ratio * (exp_neg(lambda, self.b) - exp_neg(lambda, other.b)).norm());
        }
        let est = Estimate::windowed(&running_limsup(&d, oscillation_block(d.len())));
        let est = Estimate { converged: est.converged && both_converged, ..est };
        Ok(CompactDifference {
            compact: converged(est, "essential norm of the difference")? <= ZERO_TOL,
            essential_norm: Some(est),
            reason: "limsup (β_{m_k}/β_k)|e^{-λ_k b} − e^{-λ_k b'}|".into(),
        })
    }

    /// Full report for the symbol.
    pub fn report(&self, schatten_ps: &[f64]) -> BoundednessReport {
        let mut warnings = Vec::new();
        let mut note = |what: &str, e: &Error| warnings.push(format!("{what}: {e}"));
        let b = &self.boundedness;
        let mut report = BoundednessReport {
            a: self.a,
            b: self.b,
            self_map: b.self_map,
            bounded: b.bounded,
            reason: b.reason.clone(),
            operator_norm: b.operator_norm,
            ratio_set: b.ratio_set,
            r_values: self.r_window(),
            essential_norm: None,
            compact: None,
            infimum: None,
            closed_range: None,
            hilbert_schmidt: None,
            schatten: Vec::new(),
            warnings: Vec::new(),
        };
        if let Some(norm) = b.operator_norm {
            if !norm.converged {
                note("operator norm", &Error::WindowNotConclusive("sup r_n".into()));
            }
        }
        if !self.is_bounded() {
            report.warnings = warnings;
            return report;
        }
        match self.essential_norm_estimate() {
            Ok(e) => {
                report.essential_norm = Some(e);
                report.compact = Some(e.value <= ZERO_TOL);
                if !e.converged {
                    note("essential norm", &Error::WindowNotConclusive("limsup r_n".into()));
                }
            }
            Err(e) => note("essential norm", &e),
        }
        if self.a == 0.0 {
            report.closed_range = Some(true);
        } else {
            match self.infimum_estimate() {
                Ok(e) => {
                    report.infimum = Some(e);
                    report.closed_range = Some(e.value > 0.0);
                    if !e.converged {
                        note("closed range", &Error::WindowNotConclusive("inf r_n".into()));
                    }
                }
                Err(e) => note("closed range", &e),
            }
        }
        match self.hilbert_schmidt() {
            Ok(hs) => report.hilbert_schmidt = Some(hs),
            Err(e) => note("Hilbert–Schmidt", &e),
        }
        for &p in schatten_ps {
            match self.schatten_membership(p) {
                Ok(s) => report.schatten.push(s),
                Err(e) => note(&format!("Schatten p = {p}"), &e),
            }
        }
        report.warnings = warnings;
        report
    }
}

fn converged(e: Estimate, what: &str) -> Result<f64> {
    if e.converged {
        Ok(e.value)
    } else {
        Err(Error::WindowNotConclusive(format!("{what} (window value {})", e.value)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HilbertSchmidt {
    pub finite: bool,
    pub value: f64,
    /// Bound on the neglected `Σ_{n>H} r_n^2`.
    pub tail_bound: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerSum {
    pub converges: bool,
    pub partial_sum: f64,
    pub tail_bound: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchattenReport {
    pub p: f64,
    pub member: bool,
    /// `Σ_{k ≤ H} r_k^p`.
    pub partial_sum: f64,
    /// Critical abscissa `σ_c` of `h_p`.
    pub abscissa: Option<Estimate>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactDifference {
    pub compact: bool,
    pub essential_norm: Option<Estimate>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundednessReport {
    pub a: f64,
    #[serde(with = "pair")]
    pub b: Complex64,
    pub self_map: bool,
    pub bounded: Option<bool>,
    pub reason: Option<String>,
    pub operator_norm: Option<Estimate>,
    pub ratio_set: Option<RatioSetCertificate>,
    pub r_values: Vec<f64>,
    pub essential_norm: Option<Estimate>,
    pub compact: Option<bool>,
    pub infimum: Option<Estimate>,
    pub closed_range: Option<bool>,
    pub hilbert_schmidt: Option<HilbertSchmidt>,
    pub schatten: Vec<SchattenReport>,
    pub warnings: Vec<String>,
}
