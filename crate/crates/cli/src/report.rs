//! Report types. Field order here is the field order in the JSON output.

use std::fmt::Write as _;

use dirichlet_core::dynamics::{ApproxPolynomial, CyclicApproximation, CyclicityVerdict, DivergenceEvidence, TracePoint};
use dirichlet_core::numeric::pair;
use dirichlet_core::operator::{BoundednessReport, CompactDifference};
use dirichlet_core::oracle::ComparisonReport;
use dirichlet_core::space::{BetaStarCheck, KernelNorm};
use dirichlet_core::symmetry::{ConjugationReport, SymmetryReport};
use dirichlet_core::{Complex64, Estimate};
use serde::Serialize;

use crate::Command;

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub command: Command,
    pub seed: u64,
    pub horizon: usize,
    pub truncation: usize,
    pub space: SpaceSummary,
    pub symbols: Vec<SymbolReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conjugations: Vec<ConjugationCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub differences: Vec<DifferenceReport>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpaceSummary {
    pub l: Estimate,
    pub beta_star: Estimate,
    /// `L/2 − β*`: the space lives on `Re z > θ`.
    pub theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_star_check: Option<BetaStarCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_sample: Option<KernelSample>,
}

/// `‖k_w‖` at the real point `w = max(θ, 0) + 1`.
#[derive(Debug, Clone, Serialize)]
pub struct KernelSample {
    pub w: f64,
    #[serde(flatten)]
    pub norm: KernelNorm,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolReport {
    pub index: usize,
    pub a: f64,
    #[serde(with = "pair")]
    pub b: Complex64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundedness: Option<BoundednessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclicity: Option<CyclicityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

impl SymbolReport {
    pub fn new(index: usize, a: f64, b: Complex64) -> Self {
        SymbolReport {
            index,
            a,
            b,
            boundedness: None,
            cyclicity: None,
            construction: None,
            symmetry: None,
            comparison: None,
            errors: Vec::new(),
        }
    }
}

/// `u(S_α)e_1 ≈ 0` with `u(1) = ν`, plus the optional full cyclic target.
#[derive(Debug, Clone, Serialize)]
pub struct Construction {
    pub model_horizon: usize,
    pub divergence: DivergenceEvidence,
    pub polynomial: PolynomialSummary,
    pub trace: Vec<TracePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approximation: Option<ApproximationSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolynomialSummary {
    pub degree: usize,
    #[serde(with = "pair")]
    pub nu: Complex64,
    #[serde(with = "pair")]
    pub epsilon: Complex64,
    pub gamma: f64,
    pub predicted_residual: f64,
    pub measured_residual: f64,
    #[serde(with = "pair")]
    pub value_at_one: Complex64,
}

impl From<&ApproxPolynomial> for PolynomialSummary {
    fn from(u: &ApproxPolynomial) -> Self {
        PolynomialSummary {
            degree: u.degree,
            nu: u.nu,
            epsilon: u.epsilon,
            gamma: u.gamma,
            predicted_residual: u.predicted_residual,
            measured_residual: u.measured_residual,
            value_at_one: u.evaluate(Complex64::new(1.0, 0.0)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproximationSummary {
    pub degree: usize,
    pub epsilon: f64,
    pub interpolation_offset: f64,
    pub residual: f64,
    #[serde(with = "pair")]
    pub value_at_one: Complex64,
    pub within_epsilon: bool,
}

impl ApproximationSummary {
    pub fn new(c: &CyclicApproximation, epsilon: f64) -> Self {
        ApproximationSummary {
            degree: c.coefficients.len().saturating_sub(1),
            epsilon,
            interpolation_offset: c.interpolation_offset,
            residual: c.residual,
            value_at_one: c.value_at_one,
            within_epsilon: c.residual < epsilon,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugationCheck {
    #[serde(flatten)]
    pub report: ConjugationReport,
    pub passes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DifferenceReport {
    pub first: usize,
    pub second: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<CompactDifference>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

fn est(e: Option<Estimate>) -> String {
    match e {
        None => "-".into(),
        Some(e) if e.converged => format!("{:.6e}", e.value),
        Some(e) => format!("{:.6e}?", e.value),
    }
}

impl AnalysisReport {
    /// Plain-text table; `?` marks window estimates that did not settle.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let s = &self.space;
        let _ = writeln!(
            out,
            "{:?}  horizon {}  N {}  L {}  beta* {}  theta {:.6}",
            self.command,
            self.horizon,
            self.truncation,
            est(Some(s.l)),
            est(Some(s.beta_star)),
            s.theta
        );
        let _ = writeln!(
            out,
            "{:>3} {:>8} {:>22} {:>8} {:>14} {:>14} {:>8} {:>8} {:>13} {:>24}",
            "#", "a", "b", "bounded", "norm", "ess. norm", "compact", "closed", "cyclic", "symmetry"
        );
        for r in &self.symbols {
            let bd = r.boundedness.as_ref();
            let cyc = r.cyclicity.as_ref().map(|c| format!("{:?}", c.verdict));
            let sym = r.symmetry.as_ref().map(|c| format!("{:?}", c.verdict));
            let _ = writeln!(
                out,
                "{:>3} {:>8} {:>22} {:>8} {:>14} {:>14} {:>8} {:>8} {:>13} {:>24}",
                r.index,
                r.a,
                format!("{:.4}{:+.4}i", r.b.re, r.b.im),
                opt(bd.and_then(|b| b.bounded)),
                est(bd.and_then(|b| b.operator_norm)),
                est(bd.and_then(|b| b.essential_norm)),
                opt(bd.and_then(|b| b.compact)),
                opt(bd.and_then(|b| b.closed_range)),
                opt(cyc),
                opt(sym),
            );
            if let Some(bd) = bd {
                for sp in &bd.schatten {
                    let _ = writeln!(out, "      S_{}: member {} (partial sum {:.6e})", sp.p, sp.member, sp.partial_sum);
                }
            }
            if let Some(c) = &r.construction {
                let p = &c.polynomial;
                let _ = writeln!(
                    out,
                    "      u: degree {} predicted {:.6e} measured {:.6e}",
                    p.degree, p.predicted_residual, p.measured_residual
                );
                if let Some(a) = &c.approximation {
                    let _ = writeln!(out, "      p: degree {} residual {:.6e} < {}: {}", a.degree, a.residual, a.epsilon, a.within_epsilon);
                }
            }
            if let Some(c) = &r.comparison {
                let _ = writeln!(
                    out,
                    "      oracle: sigma_max {:.6e} vs {:.6e} (within bound {}), lost columns {}",
                    c.operator_norm.oracle,
                    c.operator_norm.closed_form,
                    c.operator_norm.within_bound,
                    c.lost_columns.len()
                );
            }
            for e in &r.errors {
                let _ = writeln!(out, "      error: {e}");
            }
        }
        for c in &self.conjugations {
            let r = &c.report;
            let _ = writeln!(
                out,
                "J_{}: isometry {:.2e} involution {:.2e} antilinearity {:.2e} passes {}",
                r.c, r.isometry_defect, r.involution_defect, r.antilinearity_defect, c.passes
            );
        }
        for d in &self.differences {
            let v = d.result.as_ref().map(|r| format!("compact {} ess {}", r.compact, est(r.essential_norm)));
            let _ = writeln!(out, "C{} - C{}: {}", d.first, d.second, v.or(d.error.clone()).unwrap_or_default());
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
