//! Browser bindings: each export takes plain numbers and returns a JSON string.
//!
//! Build with `wasm-pack build crates/wasm --target web --out-dir www/pkg`
//! and serve `crates/wasm/www/`.

use std::sync::Arc;

use dirichlet_core::dynamics::{build_approx_polynomial, residual_trace, shift_from_space};
use dirichlet_core::operator::AffineSymbol;
use dirichlet_core::oracle::{column_section, singular_values};
use dirichlet_core::{Complex64, FrequencySequence, Space, WeightSequence};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const HORIZON: usize = 64;
const KERNEL_TOL: f64 = 1e-12;

type Out = Result<String, String>;

fn frequencies(family: &str, param: f64) -> dirichlet_core::Result<FrequencySequence> {
    match family {
        "arithmetic" => Ok(FrequencySequence::arithmetic()),
        "logarithmic" => Ok(FrequencySequence::logarithmic()),
        "geometric" => FrequencySequence::geometric(1.0, param),
        "geometric_with_zero" => FrequencySequence::geometric_with_zero(1.0, param),
        other => Err(dirichlet_core::Error::InvalidSequence(format!("unknown frequency family {other:?}"))),
    }
}

fn weights(family: &str, param: f64) -> dirichlet_core::Result<WeightSequence> {
    match family {
        "constant" => Ok(WeightSequence::constant()),
        "exp_linear" => WeightSequence::exp_linear(param),
        "exp_prefix_sum" => Ok(WeightSequence::exp_prefix_sum()),
        other => Err(dirichlet_core::Error::InvalidSequence(format!("unknown weight family {other:?}"))),
    }
}

fn space(freq: &str, freq_param: f64, weight: &str, weight_param: f64) -> dirichlet_core::Result<Arc<Space>> {
    Ok(Arc::new(Space::new(frequencies(freq, freq_param)?, weights(weight, weight_param)?, HORIZON)?))
}

fn emit<T: Serialize>(r: dirichlet_core::Result<T>) -> Out {
    let v = r.map_err(|e| e.to_string())?;
    serde_json::to_string(&v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Summary {
    theta: f64,
    self_map: bool,
    bounded: Option<bool>,
    reason: Option<String>,
    norm: Option<f64>,
    essential_norm: Option<f64>,
    compact: Option<bool>,
    closed_range: Option<bool>,
    hilbert_schmidt: Option<f64>,
    /// `r_1, …, r_N`.
    r: Vec<f64>,
    /// Singular values of `C P_N`, descending.
    sigma: Vec<f64>,
}

/// Closed-form quantities of `C_{az+b}` next to the singular values of its `N`-column section.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn operator_summary(
    freq: &str,
    freq_param: f64,
    weight: &str,
    weight_param: f64,
    a: f64,
    b_re: f64,
    b_im: f64,
    n: usize,
) -> Out {
    emit((|| {
        let sp = space(freq, freq_param, weight, weight_param)?;
        let sym = AffineSymbol::new(sp.clone(), a, Complex64::new(b_re, b_im))?;
        let rep = sym.report(&[]);
        let mut s = Summary {
            theta: sp.theta(),
            self_map: rep.self_map,
            bounded: rep.bounded,
            reason: rep.reason,
            norm: rep.operator_norm.map(|e| e.value),
            essential_norm: rep.essential_norm.map(|e| e.value),
            compact: rep.compact,
            closed_range: rep.closed_range,
            hilbert_schmidt: rep.hilbert_schmidt.filter(|h| h.finite).map(|h| h.value),
            r: Vec::new(),
            sigma: Vec::new(),
        };
        if sym.is_bounded() && a != 0.0 {
            let n = n.clamp(1, HORIZON);
            s.r = (1..=n).map(|k| sym.r_value(k)).collect::<dirichlet_core::Result<_>>()?;
            s.sigma = singular_values(&column_section(&sym, n)?.matrix)?;
        }
        Ok(s)
    })())
}

#[derive(Serialize)]
struct KernelPoint {
    re: f64,
    norm: f64,
    terms: usize,
}

/// `‖k_w‖` for `Re w` on a uniform grid strictly inside the half-plane.
#[wasm_bindgen]
pub fn kernel_profile(freq: &str, freq_param: f64, weight: &str, weight_param: f64, re_max: f64, points: usize) -> Out {
    emit((|| {
        let sp = space(freq, freq_param, weight, weight_param)?;
        let theta = sp.theta();
        let points = points.clamp(2, 400);
        let span = re_max - theta;
        if !(span > 0.0) {
            return Err(dirichlet_core::Error::OutsideDomain { re: re_max, theta });
        }
        let mut out = Vec::with_capacity(points);
        for k in 1..=points {
            let re = theta + span * k as f64 / points as f64;
            // points too close to θ can need more terms than the window holds
            if let Ok(kn) = sp.kernel_norm(Complex64::new(re, 0.0), KERNEL_TOL) {
                out.push(KernelPoint { re, norm: kn.value, terms: kn.terms });
            }
        }
        Ok(out)
    })())
}

/// Residual of `u(S_α)e_1` against degree for `Λ = (0, 1, r, r², …)`, constant weights, `a = r`.
#[wasm_bindgen]
pub fn cyclic_trace(ratio: f64, b_re: f64, nu_re: f64, nu_im: f64, target: f64, degree_cap: usize) -> Out {
    emit((|| {
        let sp = Arc::new(Space::new(FrequencySequence::geometric_with_zero(1.0, ratio)?, WeightSequence::constant(), HORIZON)?);
        let sym = AffineSymbol::new(sp, ratio, Complex64::new(b_re, 0.0))?;
        let cap = degree_cap.clamp(2, 2_000_000);
        let model = shift_from_space(&sym, cap)?;
        let nu = Complex64::new(nu_re, nu_im);
        let u = build_approx_polynomial(&model, nu, target, cap, dirichlet_core::dynamics::DEFAULT_GAMMA)?;
        residual_trace(&model, nu, u.degree, u.gamma)
    })())
}
