//! Finite-window estimates of asymptotic quantities.
//!
//! Every limsup, liminf, sup and inf over an infinite index set is either
//! known in closed form for a generator family (`analytic = true`) or
//! estimated from a running value over a window. A window estimate is
//! `converged` when the running value stays within [`STABILITY_TOL`] of its
//! final value over the last `⌈H/4⌉` indices.

use serde::{Deserialize, Serialize};

pub const STABILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub converged: bool,
    pub analytic: bool,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, converged: true, analytic: true }
    }

    pub fn windowed(running: &[f64]) -> Self {
        match running.last() {
            None => Estimate { value: f64::NAN, converged: false, analytic: false },
            Some(&value) => Estimate { value, converged: is_stable(running), analytic: false },
        }
    }
}

fn same(x: f64, y: f64) -> bool {
    if x.is_infinite() || y.is_infinite() {
        return x == y;
    }
    (x - y).abs() <= STABILITY_TOL
}

/// True when the last `⌈len/4⌉` running values agree with the final one.
pub fn is_stable(running: &[f64]) -> bool {
    let len = running.len();
    if len == 0 {
        return false;
    }
    let last = running[len - 1];
    if last.is_nan() {
        return false;
    }
    let tail = len.div_ceil(4);
    running[len - tail..].iter().all(|&v| same(v, last))
}

/// Running supremum `max_{k≤n} x_k`.
pub fn running_sup(xs: &[f64]) -> Vec<f64> {
    let mut acc = f64::NEG_INFINITY;
    xs.iter()
        .map(|&x| {
            acc = acc.max(x);
            acc
        })
        .collect()
}

/// Running infimum `min_{k≤n} x_k`.
pub fn running_inf(xs: &[f64]) -> Vec<f64> {
    let mut acc = f64::INFINITY;
    xs.iter()
        .map(|&x| {
            acc = acc.min(x);
            acc
        })
        .collect()
}

/// Running limsup estimate: `max` over the trailing `block` values.
pub fn running_limsup(xs: &[f64], block: usize) -> Vec<f64> {
    let block = block.max(1);
    (0..xs.len())
        .map(|n| {
            let lo = (n + 1).saturating_sub(block);
            xs[lo..=n].iter().copied().fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

/// Running liminf estimate: `min` over the trailing `block` values.
pub fn running_liminf(xs: &[f64], block: usize) -> Vec<f64> {
    let block = block.max(1);
    (0..xs.len())
        .map(|n| {
            let lo = (n + 1).saturating_sub(block);
            xs[lo..=n].iter().copied().fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Block length used for limsup/liminf of operator sequences over a window of `h` terms.
pub fn oscillation_block(h: usize) -> usize {
    h.div_ceil(8).max(2)
}

/// `log Σ exp(x_i)` accumulated term by term.
#[derive(Debug, Clone, Copy)]
pub struct LogSumExp {
    max: f64,
    scaled: f64,
}

impl Default for LogSumExp {
    fn default() -> Self {
        LogSumExp { max: f64::NEG_INFINITY, scaled: 0.0 }
    }
}

impl LogSumExp {
    pub fn push(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x > self.max {
            self.scaled = self.scaled * (self.max - x).exp() + 1.0;
            self.max = x;
        } else {
            self.scaled += (x - self.max).exp();
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}
