//! Config-driven analysis runs for affine composition operators.
//!
//! [`run`] is the whole pipeline: validate, build the space, analyze every
//! symbol in parallel, merge in config order. The binary only adds argument
//! parsing and file output.

pub mod config;
pub mod export;
pub mod report;

use std::sync::Arc;

use clap::ValueEnum;
use dirichlet_core::dynamics::{
    build_approx_polynomial, classify_cyclicity, cyclic_approximation, residual_trace, shift_from_space, TracePoint, Verdict,
};
use dirichlet_core::operator::AffineSymbol;
use dirichlet_core::oracle::{self, SectionKind, TruncationMatrix};
use dirichlet_core::symmetry::{complex_symmetry_verdict, verify_conjugation, Conjugation};
use dirichlet_core::{Complex64, Space};
use rayon::prelude::*;
use serde::Serialize;

pub use config::AnalysisConfig;
pub use report::AnalysisReport;

use config::Dynamics;
use report::{
    ApproximationSummary, ConjugationCheck, Construction, DifferenceReport, KernelSample, PolynomialSummary, SpaceSummary, SymbolReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("computation error: {0}")]
    Compute(#[from] dirichlet_core::Error),
    #[error("output error: {0}")]
    Output(String),
    #[error("strict mode: {0} warning(s)")]
    Strict(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Boundedness, cyclicity, symmetry and oracle comparison.
    Analyze,
    /// Operator norm, essential norm, closed range.
    Norm,
    /// Hilbert–Schmidt and Schatten class membership.
    Schatten,
    /// Cyclicity verdicts and polynomial constructions.
    Cyclic,
    /// Conjugation checks and complex symmetry verdicts.
    Symmetry,
    /// Closed forms next to dense-section singular values.
    Compare,
}

/// Everything a run produced: the report plus raw data for CSV export.
#[derive(Debug)]
pub struct RunOutput {
    pub report: AnalysisReport,
    pub sections: Vec<(usize, TruncationMatrix)>,
    pub traces: Vec<(usize, Vec<TracePoint>)>,
}

struct SymbolOutput {
    report: SymbolReport,
    section: Option<TruncationMatrix>,
    warnings: Vec<String>,
}

pub fn run(cmd: Command, cfg: &AnalysisConfig) -> Result<RunOutput, CliError> {
    cfg.validate()?;
    let space = Arc::new(Space::new(cfg.frequencies.build()?, cfg.weights.build()?, cfg.horizon)?);
    let mut warnings = Vec::new();

    let (l, beta_star) = (space.l(), space.beta_star());
    for (name, e) in [("L", l), ("beta_*", beta_star)] {
        if !e.converged {
            warnings.push(format!("space: {name} window estimate {} did not settle", e.value));
        }
    }
    let beta_star_check = space.beta_star_check();
    if let Some(c) = beta_star_check.filter(|c| !c.agrees) {
        warnings.push(format!(
            "space: computed beta_* = {} differs from the alternative closed form {}",
            c.computed.value, c.alternative
        ));
    }
    let w = Complex64::new(space.theta().max(0.0) + 1.0, 0.0);
    let kernel_sample = match space.kernel_norm(w, cfg.tolerances.kernel) {
        Ok(k) => Some(KernelSample { w: w.re, norm: k }),
        Err(e) => {
            warnings.push(format!("space: kernel norm at w = {}: {e}", w.re));
            None
        }
    };

    let outputs: Vec<SymbolOutput> = cfg
        .symbols
        .par_iter()
        .enumerate()
        .map(|(i, s)| analyze_symbol(cmd, cfg, &space, i, s.a, s.b))
        .collect();

    let conjugations = if matches!(cmd, Command::Analyze | Command::Symmetry) {
        let mut out = Vec::new();
        for &c in &cfg.conjugations {
            let report = verify_conjugation(&Conjugation::new(space.clone(), c)?, cfg.conjugation_samples, cfg.seed)?;
            let worst = report.isometry_defect.max(report.involution_defect).max(report.antilinearity_defect);
            let passes = worst <= cfg.tolerances.conjugation;
            if !passes {
                warnings.push(format!("conjugation c = {c}: defect {worst:.3e} above tolerance"));
            }
            out.push(ConjugationCheck { report, passes });
        }
        out
    } else {
        Vec::new()
    };

    let differences = if matches!(cmd, Command::Analyze | Command::Norm) {
        cfg.differences.iter().map(|&(i, j)| difference(&space, cfg, i, j)).collect()
    } else {
        Vec::new()
    };

    let mut symbols = Vec::with_capacity(outputs.len());
    let mut sections = Vec::new();
    let mut traces = Vec::new();
    for out in outputs {
        let i = out.report.index;
        warnings.extend(out.warnings);
        if let Some(s) = out.section {
            sections.push((i, s));
        }
        if let Some(c) = &out.report.construction {
            traces.push((i, c.trace.clone()));
        }
        symbols.push(out.report);
    }
    for d in &differences {
        if let Some(e) = &d.error {
            warnings.push(format!("difference ({}, {}): {e}", d.first, d.second));
        }
    }

    let report = AnalysisReport {
        schema: config::SCHEMA,
        command: cmd,
        seed: cfg.seed,
        horizon: cfg.horizon,
        truncation: cfg.truncation,
        space: SpaceSummary { l, beta_star, theta: space.theta(), beta_star_check, kernel_sample },
        symbols,
        conjugations,
        differences,
        warnings,
    };
    Ok(RunOutput { report, sections, traces })
}

fn analyze_symbol(cmd: Command, cfg: &AnalysisConfig, space: &Arc<Space>, index: usize, a: f64, b: Complex64) -> SymbolOutput {
    let mut out = SymbolOutput { report: SymbolReport::new(index, a, b), section: None, warnings: Vec::new() };
    let sym = match AffineSymbol::new(space.clone(), a, b) {
        Ok(s) => s,
        Err(e) => {
            out.report.errors.push(e.to_string());
            out.warnings.push(format!("symbols[{index}]: {e}"));
            return out;
        }
    };
    let fail = |out: &mut SymbolOutput, what: &str, e: &dyn std::fmt::Display| {
        out.report.errors.push(format!("{what}: {e}"));
        out.warnings.push(format!("symbols[{index}]: {what}: {e}"));
    };

    let ps: &[f64] = match cmd {
        Command::Analyze | Command::Schatten | Command::Compare => &cfg.schatten_p,
        _ => &[],
    };
    let bounded_report = sym.report(ps);
    out.warnings.extend(bounded_report.warnings.iter().map(|w| format!("symbols[{index}]: {w}")));
    out.report.boundedness = Some(bounded_report);
    if !sym.is_bounded() {
        return out;
    }

    if matches!(cmd, Command::Analyze | Command::Cyclic) {
        match classify_cyclicity(&sym, cfg.horizon) {
            Ok(v) => {
                if !v.certified {
                    out.warnings.push(format!("symbols[{index}]: cyclicity verdict rests on a finite window"));
                }
                let construct = cmd == Command::Cyclic && v.verdict == Verdict::Cyclic && v.divergence.is_some();
                out.report.cyclicity = Some(v);
                if let (true, Some(d)) = (construct, &cfg.dynamics) {
                    match construction(&sym, d) {
                        Ok(c) => out.report.construction = Some(c),
                        Err(e) => fail(&mut out, "construction", &e),
                    }
                }
            }
            Err(e) => fail(&mut out, "cyclicity", &e),
        }
    }

    if matches!(cmd, Command::Analyze | Command::Symmetry) {
        match complex_symmetry_verdict(&sym, cfg.truncation, &cfg.conjugations) {
            Ok(r) => out.report.symmetry = Some(r),
            Err(e) => fail(&mut out, "symmetry", &e),
        }
    }

    if matches!(cmd, Command::Analyze | Command::Compare) {
        let kind: SectionKind = cfg.section.into();
        match oracle::compare(&sym, cfg.truncation, kind, ps) {
            Ok(r) => {
                if !r.operator_norm.within_bound {
                    out.warnings.push(format!("symbols[{index}]: oracle norm deviates beyond its tail bound"));
                }
                out.report.comparison = Some(r);
            }
            Err(e) => fail(&mut out, "comparison", &e),
        }
        let section = match kind {
            SectionKind::Square => oracle::truncate(&sym, cfg.truncation),
            SectionKind::Columns => oracle::column_section(&sym, cfg.truncation),
        };
        out.section = section.ok();
    }
    out
}

fn construction(sym: &AffineSymbol, d: &Dynamics) -> Result<Construction, CliError> {
    let horizon = d.model_horizon.unwrap_or(d.degree_cap).max(2);
    let model = shift_from_space(sym, horizon)?;
    let u = build_approx_polynomial(&model, d.nu, d.target, d.degree_cap, d.gamma)?;
    let trace = residual_trace(&model, d.nu, u.degree, d.gamma)?;
    let approximation = match &d.approximation {
        Some(t) => {
            let c = cyclic_approximation(&model, t.mu, &t.y, t.epsilon, d.degree_cap, d.gamma)?;
            Some(ApproximationSummary::new(&c, t.epsilon))
        }
        None => None,
    };
    Ok(Construction {
        model_horizon: model.len(),
        divergence: model.divergence_evidence(),
        polynomial: PolynomialSummary::from(&u),
        trace,
        approximation,
    })
}

fn difference(space: &Arc<Space>, cfg: &AnalysisConfig, i: usize, j: usize) -> DifferenceReport {
    let (s, t) = (cfg.symbols[i], cfg.symbols[j]);
    let result = AffineSymbol::new(space.clone(), s.a, s.b)
        .and_then(|x| AffineSymbol::new(space.clone(), t.a, t.b).and_then(|y| x.compact_difference(&y)));
    match result {
        Ok(r) => DifferenceReport { first: i, second: j, result: Some(r), error: None },
        Err(e) => DifferenceReport { first: i, second: j, result: None, error: Some(e.to_string()) },
    }
}

/// Deterministic JSON text of a report.
pub fn to_json(report: &AnalysisReport, pretty: bool) -> Result<String, CliError> {
    let text = if pretty { serde_json::to_string_pretty(report) } else { serde_json::to_string(report) };
    text.map_err(|e| CliError::Output(e.to_string()))
}
