//! JSON analysis configuration, `schema: 1`.

use std::path::Path;

use dirichlet_core::numeric::pair;
use dirichlet_core::oracle::SectionKind;
use dirichlet_core::sequences::{FrequencySequence, WeightSequence};
use dirichlet_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA: u32 = 1;
pub const MIN_HORIZON: usize = 8;
pub const MIN_TRUNCATION: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Frequencies {
    Arithmetic,
    Logarithmic,
    Factorial,
    Geometric { first: f64, ratio: f64 },
    GeometricWithZero { second: f64, ratio: f64 },
    PowerOfBase { scale: f64, base: f64 },
    Explicit { values: Vec<f64> },
}

impl Frequencies {
    pub fn build(&self) -> Result<FrequencySequence, CliError> {
        let f = match self {
            Frequencies::Arithmetic => FrequencySequence::arithmetic(),
            Frequencies::Logarithmic => FrequencySequence::logarithmic(),
            Frequencies::Factorial => FrequencySequence::factorial(),
            Frequencies::Geometric { first, ratio } => FrequencySequence::geometric(*first, *ratio)?,
            Frequencies::GeometricWithZero { second, ratio } => FrequencySequence::geometric_with_zero(*second, *ratio)?,
            Frequencies::PowerOfBase { scale, base } => FrequencySequence::power_of_base(*scale, *base)?,
            Frequencies::Explicit { values } => FrequencySequence::explicit(values.clone())?,
        };
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Weights {
    Constant,
    /// `β_n = e^{c λ_n}`
    ExpLinear { c: f64 },
    /// `β_n = Π_{i<n} e^{λ_i}`
    ExpPrefixSum,
    Explicit { values: Vec<f64> },
}

impl Weights {
    pub fn build(&self) -> Result<WeightSequence, CliError> {
        let w = match self {
            Weights::Constant => WeightSequence::constant(),
            Weights::ExpLinear { c } => WeightSequence::exp_linear(*c)?,
            Weights::ExpPrefixSum => WeightSequence::exp_prefix_sum(),
            Weights::Explicit { values } => WeightSequence::explicit(values.clone())?,
        };
        Ok(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    pub a: f64,
    #[serde(with = "pair")]
    pub b: Complex64,
}

/// Which finite section the oracle builds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    /// `P_N C P_N`
    Square,
    /// `C P_N`
    #[default]
    Columns,
}

impl From<Section> for SectionKind {
    fn from(s: Section) -> Self {
        match s {
            Section::Square => SectionKind::Square,
            Section::Columns => SectionKind::Columns,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Absolute tail tolerance for kernel sums.
    pub kernel: f64,
    /// Largest accepted conjugation defect.
    pub conjugation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { kernel: 1e-12, conjugation: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dynamics {
    #[serde(with = "pair")]
    pub nu: Complex64,
    /// Residual target for `u(S_α)e_1`.
    pub target: f64,
    pub degree_cap: usize,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    /// Length of the shift window; defaults to `degree_cap`.
    #[serde(default)]
    pub model_horizon: Option<usize>,
    /// Optional full cyclic target `μ e_0 ⊕ y`.
    #[serde(default)]
    pub approximation: Option<ApproximationTarget>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproximationTarget {
    #[serde(with = "pair")]
    pub mu: Complex64,
    #[serde(with = "pair::vec")]
    pub y: Vec<Complex64>,
    pub epsilon: f64,
}

fn default_gamma() -> f64 {
    dirichlet_core::dynamics::DEFAULT_GAMMA
}

fn default_schatten() -> Vec<f64> {
    vec![1.0, 2.0]
}

fn default_samples() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub schema: u32,
    pub frequencies: Frequencies,
    pub weights: Weights,
    pub symbols: Vec<SymbolSpec>,
    pub horizon: usize,
    pub truncation: usize,
    #[serde(default)]
    pub section: Section,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_schatten")]
    pub schatten_p: Vec<f64>,
    #[serde(default)]
    pub conjugations: Vec<f64>,
    #[serde(default = "default_samples")]
    pub conjugation_samples: usize,
    #[serde(default)]
    pub dynamics: Option<Dynamics>,
    /// Pairs of symbol indices whose difference is tested for compactness.
    #[serde(default)]
    pub differences: Vec<(usize, usize)>,
    #[serde(default)]
    pub seed: u64,
}

impl AnalysisConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: AnalysisConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.schema != SCHEMA {
            return bad(format!("unsupported schema {}, expected {SCHEMA}", self.schema));
        }
        if self.horizon < MIN_HORIZON {
            return bad(format!("horizon must be at least {MIN_HORIZON}, got {}", self.horizon));
        }
        if self.truncation < MIN_TRUNCATION {
            return bad(format!("truncation must be at least {MIN_TRUNCATION}, got {}", self.truncation));
        }
        if self.symbols.is_empty() {
            return bad("at least one symbol is required".into());
        }
        for (i, s) in self.symbols.iter().enumerate() {
            if !(s.a.is_finite() && s.b.re.is_finite() && s.b.im.is_finite()) {
                return bad(format!("symbols[{i}]: coefficients must be finite"));
            }
            if !(s.a == 0.0 || s.a >= 1.0) {
                return bad(format!("symbols[{i}]: a = {} violates the constraint a = 0 or a >= 1", s.a));
            }
        }
        if let Some(p) = self.schatten_p.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
            return bad(format!("schatten_p entries must be positive, got {p}"));
        }
        if let Some(c) = self.conjugations.iter().find(|c| !c.is_finite()) {
            return bad(format!("conjugation parameters must be finite, got {c}"));
        }
        let t = self.tolerances;
        if !(t.kernel > 0.0 && t.conjugation > 0.0) {
            return bad("tolerances must be positive".into());
        }
        for &(i, j) in &self.differences {
            if i >= self.symbols.len() || j >= self.symbols.len() {
                return bad(format!("difference ({i}, {j}) refers to a missing symbol"));
            }
        }
        if let Some(d) = &self.dynamics {
            if !(d.target > 0.0) {
                return bad(format!("dynamics.target must be positive, got {}", d.target));
            }
            if d.degree_cap < 2 {
                return bad("dynamics.degree_cap must be at least 2".into());
            }
            if !(d.gamma > 0.5 && d.gamma < 1.0) {
                return bad(format!("dynamics.gamma must lie in (1/2, 1), got {}", d.gamma));
            }
            if let Some(a) = &d.approximation {
                if !(a.epsilon > 0.0) {
                    return bad(format!("dynamics.approximation.epsilon must be positive, got {}", a.epsilon));
                }
            }
        }
        self.frequencies.build()?;
        self.weights.build()?;
        Ok(())
    }
}
