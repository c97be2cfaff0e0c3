//! Frequency sequences `Λ = (λ_n)` and weight sequences `β = (β_n)`.
//!
//! Generator families whose frequencies are rational (arithmetic, factorial,
//! geometric with rational parameters) are held exactly so that the ratio
//! test `a·λ_n = λ_m` is decided without rounding. Logarithmic frequencies
//! and explicit float lists use a relative tolerance.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::window::{running_liminf, running_limsup, Estimate};

pub const DEFAULT_RATIO_TOL: f64 = 1e-12;

fn rational(x: f64, what: &str) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidSequence(format!("{what} must be finite")))
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyGenerator {
    ExplicitList(Vec<f64>),
    /// `λ_n = n`
    Arithmetic,
    /// `λ_n = log n`
    Logarithmic,
    /// `λ_n = first · ratio^(n-1)`
    Geometric { first: BigRational, ratio: BigRational },
    /// `λ_1 = 0`, `λ_n = second · ratio^(n-2)` for `n ≥ 2`
    GeometricWithZero { second: BigRational, ratio: BigRational },
    /// `λ_n = n!`
    Factorial,
    /// `λ_n = scale · base^n`
    PowerOfBase { scale: BigRational, base: BigRational },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySequence {
    generator: FrequencyGenerator,
    tol: f64,
}

/// `λ_n = head · ratio^(n - start)` for `n ≥ start`, and `λ_n = 0` before.
struct GeometricView<'a> {
    start: usize,
    head: BigRational,
    ratio: &'a BigRational,
}

impl FrequencySequence {
    fn new(generator: FrequencyGenerator) -> Self {
        FrequencySequence { generator, tol: DEFAULT_RATIO_TOL }
    }

    pub fn arithmetic() -> Self {
        Self::new(FrequencyGenerator::Arithmetic)
    }

    pub fn logarithmic() -> Self {
        Self::new(FrequencyGenerator::Logarithmic)
    }

    pub fn factorial() -> Self {
        Self::new(FrequencyGenerator::Factorial)
    }

    pub fn geometric(first: f64, ratio: f64) -> Result<Self> {
        if !(first > 0.0) || !(ratio > 1.0) {
            return Err(Error::InvalidSequence("geometric needs first > 0 and ratio > 1".into()));
        }
        Ok(Self::new(FrequencyGenerator::Geometric {
            first: rational(first, "first")?,
            ratio: rational(ratio, "ratio")?,
        }))
    }

    pub fn geometric_with_zero(second: f64, ratio: f64) -> Result<Self> {
        if !(second > 0.0) || !(ratio > 1.0) {
            return Err(Error::InvalidSequence("geometric needs second > 0 and ratio > 1".into()));
        }
        Ok(Self::new(FrequencyGenerator::GeometricWithZero {
            second: rational(second, "second")?,
            ratio: rational(ratio, "ratio")?,
        }))
    }

    pub fn power_of_base(scale: f64, base: f64) -> Result<Self> {
        if !(scale > 0.0) || !(base > 1.0) {
            return Err(Error::InvalidSequence("power of base needs scale > 0 and base > 1".into()));
        }
        Ok(Self::new(FrequencyGenerator::PowerOfBase {
            scale: rational(scale, "scale")?,
            base: rational(base, "base")?,
        }))
    }

    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence("explicit frequency list is empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSequence("frequencies must be finite".into()));
        }
        if values[0] < 0.0 {
            return Err(Error::InvalidSequence("λ_1 must be non-negative".into()));
        }
        if let Some(n) = values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSequence(format!(
                "frequencies must be strictly increasing (λ_{} ≥ λ_{})",
                n + 1,
                n + 2
            )));
        }
        Ok(Self::new(FrequencyGenerator::ExplicitList(values)))
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn generator(&self) -> &FrequencyGenerator {
        &self.generator
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Whether frequencies are held as exact rationals.
    pub fn is_exact(&self) -> bool {
        !matches!(
            self.generator,
            FrequencyGenerator::ExplicitList(_) | FrequencyGenerator::Logarithmic
        )
    }

    /// Number of materializable indices within `horizon`.
    pub fn window_len(&self, horizon: usize) -> usize {
        match &self.generator {
            FrequencyGenerator::ExplicitList(v) => horizon.min(v.len()),
            _ => horizon,
        }
    }

    fn geometric_view(&self) -> Option<GeometricView<'_>> {
        match &self.generator {
            FrequencyGenerator::Geometric { first, ratio } => {
                Some(GeometricView { start: 1, head: first.clone(), ratio })
            }
            FrequencyGenerator::GeometricWithZero { second, ratio } => {
                Some(GeometricView { start: 2, head: second.clone(), ratio })
            }
            FrequencyGenerator::PowerOfBase { scale, base } => {
                Some(GeometricView { start: 1, head: scale * base, ratio: base })
            }
            _ => None,
        }
    }

    fn check_index(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidSequence("indices start at 1".into()));
        }
        Ok(())
    }

    /// `λ_n` as a float. Very large frequencies saturate to `+∞`.
    pub fn lambda_at(&self, n: usize) -> Result<f64> {
        Self::check_index(n)?;
        if let Some(g) = self.geometric_view() {
            if n < g.start {
                return Ok(0.0);
            }
            let head = g.head.to_f64().unwrap_or(f64::INFINITY);
            let ratio = g.ratio.to_f64().unwrap_or(f64::INFINITY);
            return Ok(head * ratio.powf((n - g.start) as f64));
        }
        Ok(match &self.generator {
            FrequencyGenerator::ExplicitList(v) => {
                *v.get(n - 1).ok_or(Error::WindowExceeded { index: n, len: v.len() })?
            }
            FrequencyGenerator::Arithmetic => n as f64,
            FrequencyGenerator::Logarithmic => (n as f64).ln(),
            FrequencyGenerator::Factorial => (1..=n).fold(1.0, |acc, k| acc * k as f64),
            _ => unreachable!(),
        })
    }

    /// `λ_n` as an exact rational, or `None` when the generator is not exact.
    pub fn lambda_exact(&self, n: usize) -> Result<Option<BigRational>> {
        Self::check_index(n)?;
        if let Some(g) = self.geometric_view() {
            if n < g.start {
                return Ok(Some(BigRational::zero()));
            }
            let exp = i32::try_from(n - g.start)
                .map_err(|_| Error::InvalidSequence("index too large for exact power".into()))?;
            return Ok(Some(g.head * num_traits::pow::Pow::pow(g.ratio, exp)));
        }
        Ok(match &self.generator {
            FrequencyGenerator::Arithmetic => Some(BigRational::from_integer(BigInt::from(n))),
            FrequencyGenerator::Factorial => {
                let f = (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
                Some(BigRational::from_integer(f))
            }
            _ => None,
        })
    }

    /// `λ_1, …, λ_h` for `h = window_len(horizon)`.
    pub fn values(&self, horizon: usize) -> Result<Vec<f64>> {
        (1..=self.window_len(horizon)).map(|n| self.lambda_at(n)).collect()
    }

    /// `L = limsup log n / λ_n`.
    pub fn compute_l(&self, horizon: usize) -> Estimate {
        match &self.generator {
            FrequencyGenerator::Logarithmic => Estimate::exact(1.0),
            FrequencyGenerator::ExplicitList(v) => {
                let h = horizon.min(v.len());
                let xs: Vec<f64> = (1..=h)
                    .filter(|&n| v[n - 1] > 0.0)
                    .map(|n| (n as f64).ln() / v[n - 1])
                    .collect();
                Estimate::windowed(&running_limsup(&xs, 1))
            }
            _ => Estimate::exact(0.0),
        }
    }

    /// Smallest `ℓ ≥ 0` with `ratio^ℓ = a`, if any.
    fn geometric_shift(ratio: &BigRational, a: &BigRational) -> Option<usize> {
        let mut power = BigRational::one();
        let mut ell = 0;
        while &power < a {
            power *= ratio;
            ell += 1;
        }
        (&power == a).then_some(ell)
    }

    /// The unique `m ≥ n` with `λ_m = a·λ_n`, if it exists.
    pub fn ratio_index(&self, a: f64, n: usize) -> Result<Option<usize>> {
        Self::check_index(n)?;
        if !(a >= 1.0) || !a.is_finite() {
            return Err(Error::InvalidSymbol(format!("ratio index needs a ≥ 1, got {a}")));
        }
        if a == 1.0 {
            return Ok(Some(n));
        }
        let a_exact = rational(a, "a")?;
        if let Some(g) = self.geometric_view() {
            if n < g.start {
                return Ok(Some(n));
            }
            return Ok(Self::geometric_shift(g.ratio, &a_exact).map(|ell| n + ell));
        }
        match &self.generator {
            FrequencyGenerator::Arithmetic => {
                let target = a_exact * BigInt::from(n);
                Ok(if target.is_integer() { target.to_integer().to_usize() } else { None })
            }
            FrequencyGenerator::Factorial => {
                if !a_exact.is_integer() {
                    return Ok(None);
                }
                let a_int = a_exact.to_integer();
                let mut product = BigInt::one();
                let mut m = n;
                loop {
                    if product == a_int {
                        return Ok(Some(m));
                    }
                    if product > a_int {
                        return Ok(None);
                    }
                    m += 1;
                    product *= BigInt::from(m);
                }
            }
            FrequencyGenerator::Logarithmic => {
                if n == 1 {
                    return Ok(Some(1));
                }
                if a_exact.is_integer() {
                    if let Some(exp) = a_exact.to_integer().to_u32() {
                        if let Some(m) = (n as u64).checked_pow(exp) {
                            return Ok(usize::try_from(m).ok());
                        }
                    }
                }
                let target = a * (n as f64).ln();
                if target > (usize::MAX as f64).ln() {
                    return Err(Error::SearchWindowExceeded { index: n, target });
                }
                let m = target.exp().round();
                let close = (target - m.ln()).abs() <= self.tol * m.ln();
                Ok(close.then_some(m as usize))
            }
            FrequencyGenerator::ExplicitList(v) => {
                let ln = *v.get(n - 1).ok_or(Error::WindowExceeded { index: n, len: v.len() })?;
                let target = a * ln;
                let last = *v.last().unwrap();
                if target > last * (1.0 + self.tol) {
                    return Err(Error::SearchWindowExceeded { index: n, target });
                }
                let tail = &v[n - 1..];
                let pos = tail.partition_point(|&x| x < target);
                let near = |i: usize| {
                    tail.get(i).copied().filter(|&x| {
                        if x == 0.0 || target == 0.0 {
                            x == target
                        } else {
                            (x - target).abs() <= self.tol * x
                        }
                    })
                };
                let hit = near(pos).map(|_| pos).or_else(|| pos.checked_sub(1).filter(|&i| near(i).is_some()));
                Ok(hit.map(|i| n + i))
            }
            _ => unreachable!(),
        }
    }

    /// Horizon-limited check that `a ∈ R(Λ)`.
    pub fn is_in_ratio_set(&self, a: f64, horizon: usize) -> Result<RatioSetCertificate> {
        let h = self.window_len(horizon);
        for n in 1..=h {
            if self.ratio_index(a, n)?.is_none() {
                return Ok(RatioSetCertificate { member: false, witness: Some(n), checked: n });
            }
        }
        Ok(RatioSetCertificate { member: true, witness: None, checked: h })
    }

    /// Index map `n ↦ m_n` for every `n ≤ horizon` whose image is searchable.
    /// Stops at the first index whose image leaves an explicit window.
    pub fn index_map(&self, a: f64, horizon: usize) -> Result<Vec<Option<usize>>> {
        let h = self.window_len(horizon);
        let mut out = Vec::with_capacity(h);
        for n in 1..=h {
            match self.ratio_index(a, n) {
                Ok(m) => out.push(m),
                Err(Error::SearchWindowExceeded { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// Initial points with respect to `a > 1` among the first `horizon` indices.
    pub fn initial_points(&self, a: f64, horizon: usize) -> Result<InitialPoints> {
        if !(a > 1.0) {
            return Err(Error::InvalidSymbol(format!("initial points need a > 1, got {a}")));
        }
        let h = self.window_len(horizon);
        let mut reached = vec![false; h + 1];
        for (i, m) in self.index_map(a, h)?.into_iter().enumerate() {
            let n = i + 1;
            if let Some(m) = m {
                if m > n && m <= h {
                    reached[m] = true;
                }
            }
        }
        let mut points = InitialPoints::default();
        for k in 1..=h {
            if !reached[k] {
                if self.lambda_at(k)? == 0.0 {
                    points.zero.push(k);
                } else {
                    points.nonzero.push(k);
                }
            }
        }
        Ok(points)
    }

    /// Classifies `Σ e^{-rλ_n}` against `L`.
    pub fn summability_threshold(&self, r: f64, horizon: usize) -> Result<Summability> {
        let h = self.window_len(horizon);
        let partial_sum = (1..=h).map(|n| self.lambda_at(n).map(|l| (-r * l).exp())).sum::<Result<f64>>()?;
        let l = self.compute_l(horizon);
        let converges = if r <= 0.0 {
            false
        } else if (r - l.value).abs() <= 1e-12 {
            return Err(Error::Undetermined(l.value));
        } else {
            r > l.value
        };
        let tail_bound = if converges { self.tail_exp_sum(h, r) } else { None };
        Ok(Summability { converges, partial_sum, tail_bound, l_converged: l.converged })
    }

    /// Upper bound on `Σ_{n>N} e^{-tλ_n}` for `t > 0`, when one is known for the family.
    pub fn tail_exp_sum(&self, n: usize, t: f64) -> Option<f64> {
        if !(t > 0.0) {
            return None;
        }
        match &self.generator {
            FrequencyGenerator::ExplicitList(_) => None,
            FrequencyGenerator::Arithmetic => Some((-t * (n as f64 + 1.0)).exp() / -(-t).exp_m1()),
            FrequencyGenerator::Logarithmic => {
                if t <= 1.0 || n == 0 {
                    None
                } else {
                    Some((n as f64).powf(1.0 - t) / (t - 1.0))
                }
            }
            // gaps λ_{k+1} - λ_k are non-decreasing from k = 2 on
            _ => {
                let n = n.max(1);
                let first = self.lambda_at(n + 1).ok()?;
                let gap = self.lambda_at(n + 2).ok()? - first;
                let denom = -(-t * gap).exp_m1();
                if denom <= 0.0 {
                    return None;
                }
                Some((-t * first).exp() / denom)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct RatioSetCertificate {
    pub member: bool,
    /// First index `n` with no `m` such that `λ_m = a·λ_n`.
    pub witness: Option<usize>,
    /// Number of indices examined.
    pub checked: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct InitialPoints {
    pub zero: Vec<usize>,
    pub nonzero: Vec<usize>,
}

impl InitialPoints {
    pub fn all(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.zero.iter().chain(&self.nonzero).copied().collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Summability {
    pub converges: bool,
    pub partial_sum: f64,
    pub tail_bound: Option<f64>,
    pub l_converged: bool,
}

/// A user-supplied weight rule `n ↦ log β_n`.
#[derive(Clone)]
pub struct CustomWeights {
    pub name: String,
    pub log_weight: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
    /// `κ` such that `log β_n ≥ κ·λ_n` for every `n`, if known.
    pub certified_slope: Option<f64>,
}

impl fmt::Debug for CustomWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomWeights")
            .field("name", &self.name)
            .field("certified_slope", &self.certified_slope)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum WeightGenerator {
    ExplicitList(Vec<f64>),
    /// `β_n = 1`
    Constant,
    /// `β_n = e^{c λ_n}`
    ExpLinear { c: f64 },
    /// `β_k = ∏_{i<k} e^{λ_i}`
    ExpPrefixSum,
    Custom(CustomWeights),
}

impl PartialEq for WeightGenerator {
    fn eq(&self, other: &Self) -> bool {
        use WeightGenerator::*;
        match (self, other) {
            (ExplicitList(a), ExplicitList(b)) => a == b,
            (Constant, Constant) | (ExpPrefixSum, ExpPrefixSum) => true,
            (ExpLinear { c: a }, ExpLinear { c: b }) => a == b,
            (Custom(a), Custom(b)) => Arc::ptr_eq(&a.log_weight, &b.log_weight),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    generator: WeightGenerator,
}

impl WeightSequence {
    pub fn constant() -> Self {
        WeightSequence { generator: WeightGenerator::Constant }
    }

    pub fn exp_linear(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::InvalidSequence("exp-linear slope must be finite".into()));
        }
        Ok(WeightSequence { generator: WeightGenerator::ExpLinear { c } })
    }

    pub fn exp_prefix_sum() -> Self {
        WeightSequence { generator: WeightGenerator::ExpPrefixSum }
    }

    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|&b| !(b > 0.0) || !b.is_finite()) {
            return Err(Error::InvalidSequence("weights must be positive and finite".into()));
        }
        Ok(WeightSequence { generator: WeightGenerator::ExplicitList(values) })
    }

    pub fn custom(custom: CustomWeights) -> Self {
        WeightSequence { generator: WeightGenerator::Custom(custom) }
    }

    pub fn generator(&self) -> &WeightGenerator {
        &self.generator
    }

    pub fn window_len(&self, horizon: usize) -> usize {
        match &self.generator {
            WeightGenerator::ExplicitList(v) => horizon.min(v.len()),
            _ => horizon,
        }
    }

    pub fn log_weight(&self, freq: &FrequencySequence, n: usize) -> Result<f64> {
        FrequencySequence::check_index(n)?;
        Ok(match &self.generator {
            WeightGenerator::ExplicitList(v) => {
                v.get(n - 1).ok_or(Error::WindowExceeded { index: n, len: v.len() })?.ln()
            }
            WeightGenerator::Constant => 0.0,
            WeightGenerator::ExpLinear { c } => c * freq.lambda_at(n)?,
            WeightGenerator::ExpPrefixSum => {
                (1..n).map(|i| freq.lambda_at(i)).sum::<Result<f64>>()?
            }
            WeightGenerator::Custom(cw) => (cw.log_weight)(n),
        })
    }

    /// `log β_1, …, log β_h`.
    pub fn log_weights(&self, freq: &FrequencySequence, horizon: usize) -> Result<Vec<f64>> {
        let h = self.window_len(freq.window_len(horizon));
        if let WeightGenerator::ExpPrefixSum = self.generator {
            let mut acc = 0.0;
            let mut out = Vec::with_capacity(h);
            for n in 1..=h {
                out.push(acc);
                acc += freq.lambda_at(n)?;
            }
            return Ok(out);
        }
        (1..=h).map(|n| self.log_weight(freq, n)).collect()
    }

    pub fn weight(&self, freq: &FrequencySequence, n: usize) -> Result<f64> {
        Ok(self.log_weight(freq, n)?.exp())
    }

    /// `log(β_m / β_n)` for `m ≥ n`, computed without cancellation where possible.
    pub fn log_ratio(&self, freq: &FrequencySequence, m: usize, n: usize) -> Result<f64> {
        if m == n {
            return Ok(0.0);
        }
        Ok(match &self.generator {
            WeightGenerator::Constant => 0.0,
            WeightGenerator::ExpLinear { c } => c * (freq.lambda_at(m)? - freq.lambda_at(n)?),
            WeightGenerator::ExpPrefixSum => {
                (n..m).map(|i| freq.lambda_at(i)).sum::<Result<f64>>()?
            }
            _ => self.log_weight(freq, m)? - self.log_weight(freq, n)?,
        })
    }

    /// `κ` with `log β_n ≥ κ λ_n` for every `n`, when the family certifies one.
    pub fn certified_slope(&self) -> Option<f64> {
        match &self.generator {
            WeightGenerator::Constant | WeightGenerator::ExpPrefixSum => Some(0.0),
            WeightGenerator::ExpLinear { c } => Some(*c),
            WeightGenerator::Custom(cw) => cw.certified_slope,
            WeightGenerator::ExplicitList(_) => None,
        }
    }

    /// `β_* = liminf log β_n / λ_n`, skipping indices with `λ_n = 0`.
    pub fn compute_beta_star(&self, freq: &FrequencySequence, horizon: usize) -> Result<Estimate> {
        match &self.generator {
            WeightGenerator::Constant => return Ok(Estimate::exact(0.0)),
            WeightGenerator::ExpLinear { c } => return Ok(Estimate::exact(*c)),
            _ => {}
        }
        let lambdas = freq.values(self.window_len(horizon))?;
        let logs = self.log_weights(freq, lambdas.len())?;
        let xs: Vec<f64> = lambdas
            .iter()
            .zip(&logs)
            .filter(|(&l, _)| l > 0.0)
            .map(|(&l, &lb)| lb / l)
            .collect();
        Ok(Estimate::windowed(&running_liminf(&xs, 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_at_generators() {
        assert_eq!(FrequencySequence::arithmetic().lambda_at(5).unwrap(), 5.0);
        assert_eq!(FrequencySequence::factorial().lambda_at(4).unwrap(), 24.0);
        assert_eq!(FrequencySequence::geometric(1.0, 2.0).unwrap().lambda_at(3).unwrap(), 4.0);
        let z = FrequencySequence::geometric_with_zero(1.0, 2.0).unwrap();
        let first: Vec<f64> = (1..=5).map(|n| z.lambda_at(n).unwrap()).collect();
        assert_eq!(first, vec![0.0, 1.0, 2.0, 4.0, 8.0]);
        assert_eq!(FrequencySequence::power_of_base(3.0, 2.0).unwrap().lambda_at(2).unwrap(), 12.0);
    }

    #[test]
    fn lambda_exact_matches_float() {
        let f = FrequencySequence::factorial();
        let exact = f.lambda_exact(10).unwrap().unwrap();
        assert_eq!(exact, BigRational::from_integer(BigInt::from(3_628_800u64)));
        assert!(FrequencySequence::logarithmic().lambda_exact(3).unwrap().is_none());
    }

    #[test]
    fn explicit_window_errors() {
        let s = FrequencySequence::explicit(vec![1.0, 2.0]).unwrap();
        assert_eq!(s.lambda_at(3), Err(Error::WindowExceeded { index: 3, len: 2 }));
        assert!(FrequencySequence::explicit(vec![1.0, 1.0]).is_err());
        assert!(FrequencySequence::explicit(vec![-1.0, 1.0]).is_err());
        assert!(s.lambda_at(0).is_err());
    }

    #[test]
    fn l_values() {
        assert_eq!(FrequencySequence::logarithmic().compute_l(100), Estimate::exact(1.0));
        assert_eq!(FrequencySequence::arithmetic().compute_l(100), Estimate::exact(0.0));
        let list = FrequencySequence::explicit((1..=64).map(f64::from).collect()).unwrap();
        let l = list.compute_l(64);
        assert!(!l.converged && !l.analytic);
        assert!((l.value - 0.064_982_548_177_494_87).abs() < 1e-15);
    }

    #[test]
    fn beta_star_values() {
        let ar = FrequencySequence::arithmetic();
        assert_eq!(WeightSequence::constant().compute_beta_star(&ar, 64).unwrap().value, 0.0);
        assert_eq!(WeightSequence::exp_linear(0.5).unwrap().compute_beta_star(&ar, 64).unwrap().value, 0.5);
    }

    #[test]
    fn beta_star_prefix_sum_is_one_not_half() {
        // β_k = ∏_{i<k} e^{2^i}, Λ = (2^k): log β_k / λ_k = (2^k - 2)/2^k → 1
        let freq = FrequencySequence::geometric(2.0, 2.0).unwrap();
        let est = WeightSequence::exp_prefix_sum().compute_beta_star(&freq, 64).unwrap();
        assert!(est.converged);
        assert!((est.value - 1.0).abs() < 1e-12, "{}", est.value);
        assert!((est.value - 0.5).abs() > 0.4);
    }

    #[test]
    fn ratio_index_examples() {
        assert_eq!(FrequencySequence::logarithmic().ratio_index(2.0, 3).unwrap(), Some(9));
        assert_eq!(FrequencySequence::factorial().ratio_index(2.0, 3).unwrap(), None);
        assert_eq!(FrequencySequence::factorial().ratio_index(2.0, 1).unwrap(), Some(2));
        assert_eq!(FrequencySequence::factorial().ratio_index(3.0, 2).unwrap(), Some(3));
        for s in [FrequencySequence::arithmetic(), FrequencySequence::factorial(), FrequencySequence::logarithmic()] {
            assert_eq!(s.ratio_index(1.0, 7).unwrap(), Some(7));
        }
        assert_eq!(FrequencySequence::arithmetic().ratio_index(2.5, 3).unwrap(), None);
        assert_eq!(FrequencySequence::arithmetic().ratio_index(2.5, 4).unwrap(), Some(10));
        assert!(FrequencySequence::arithmetic().ratio_index(0.5, 4).is_err());
    }

    #[test]
    fn ratio_index_logarithmic_rational_power() {
        // 1.5·log 4 = log 8
        assert_eq!(FrequencySequence::logarithmic().ratio_index(1.5, 4).unwrap(), Some(8));
        assert_eq!(FrequencySequence::logarithmic().ratio_index(1.5, 3).unwrap(), None);
    }

    #[test]
    fn ratio_index_explicit_window() {
        let s = FrequencySequence::explicit(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.ratio_index(2.0, 2).unwrap(), Some(4));
        assert!(matches!(s.ratio_index(2.0, 3), Err(Error::SearchWindowExceeded { index: 3, .. })));
        let z = FrequencySequence::explicit(vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(z.ratio_index(2.0, 1).unwrap(), Some(1));
        let f = FrequencySequence::explicit(vec![0.1, 0.2, 0.3]).unwrap();
        assert_eq!(f.ratio_index(3.0, 1).unwrap(), Some(3));
    }

    #[test]
    fn ratio_set_membership() {
        let g = FrequencySequence::geometric(1.0, 2.0).unwrap();
        let cert = g.is_in_ratio_set(4.0, 16).unwrap();
        assert!(cert.member);
        for n in 1..=16 {
            assert_eq!(g.ratio_index(4.0, n).unwrap(), Some(n + 2));
        }
        let f = FrequencySequence::factorial().is_in_ratio_set(2.0, 16).unwrap();
        assert_eq!(f, RatioSetCertificate { member: false, witness: Some(2), checked: 2 });
        assert!(FrequencySequence::logarithmic().is_in_ratio_set(1.0, 50).unwrap().member);
        assert!(FrequencySequence::logarithmic().is_in_ratio_set(3.0, 50).unwrap().member);
    }

    #[test]
    fn initial_points_examples() {
        let z = FrequencySequence::explicit(vec![0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0]).unwrap();
        let p = z.initial_points(2.0, 10).unwrap();
        assert_eq!(p, InitialPoints { zero: vec![1], nonzero: vec![2] });
        let g = FrequencySequence::geometric(1.0, 2.0).unwrap();
        assert_eq!(g.initial_points(2.0, 10).unwrap(), InitialPoints { zero: vec![], nonzero: vec![1] });
        let ar = FrequencySequence::arithmetic();
        assert_eq!(ar.initial_points(2.0, 12).unwrap().nonzero, vec![1, 3, 5, 7, 9, 11]);
    }

    #[test]
    fn summability_examples() {
        let ar = FrequencySequence::arithmetic();
        let s = ar.summability_threshold(1.0, 200).unwrap();
        assert!(s.converges);
        assert!((s.partial_sum - 0.581_976_706_869_326_4).abs() < 1e-15);
        assert!(s.tail_bound.unwrap() < 1e-80);
        assert!(!FrequencySequence::logarithmic().summability_threshold(0.5, 100).unwrap().converges);
        assert!(!ar.summability_threshold(0.0, 100).unwrap().converges);
        assert!(matches!(
            FrequencySequence::logarithmic().summability_threshold(1.0, 100),
            Err(Error::Undetermined(_))
        ));
    }

    #[test]
    fn tail_bounds_dominate_direct_sums() {
        let cases = [
            (FrequencySequence::arithmetic(), 0.7),
            (FrequencySequence::logarithmic(), 2.5),
            (FrequencySequence::geometric(1.0, 1.5).unwrap(), 0.3),
            (FrequencySequence::geometric_with_zero(0.5, 2.0).unwrap(), 0.4),
            (FrequencySequence::factorial(), 0.2),
        ];
        for (seq, t) in cases {
            for n in [1usize, 3, 8] {
                let bound = seq.tail_exp_sum(n, t).unwrap();
                let direct: f64 = (n + 1..3_000).map(|k| (-t * seq.lambda_at(k).unwrap()).exp()).sum();
                assert!(direct <= bound * (1.0 + 1e-12), "{seq:?} n={n}: {direct} > {bound}");
            }
        }
    }

    #[test]
    fn prefix_sum_log_ratio_avoids_cancellation() {
        let freq = FrequencySequence::geometric(2.0, 2.0).unwrap();
        let w = WeightSequence::exp_prefix_sum();
        assert_eq!(w.log_ratio(&freq, 61, 60).unwrap(), freq.lambda_at(60).unwrap());
        let logs = w.log_weights(&freq, 5).unwrap();
        assert_eq!(logs, vec![0.0, 2.0, 6.0, 14.0, 30.0]);
    }
}
