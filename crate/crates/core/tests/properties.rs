use std::sync::Arc;

use dirichlet_core::dynamics::{apply_polynomial, approx_polynomial_of_degree, residual_trace, ShiftModel};
use dirichlet_core::operator::AffineSymbol;
use dirichlet_core::oracle::{column_section, hermitian_eigenvalues, singular_values, svd, truncate, DenseMatrix};
use dirichlet_core::sequences::{FrequencySequence, WeightSequence};
use dirichlet_core::space::{DirichletElement, Space};
use dirichlet_core::symmetry::Conjugation;
use dirichlet_core::Complex64;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn space(weights: u8) -> Arc<Space> {
    let w = match weights {
        0 => WeightSequence::constant(),
        _ => WeightSequence::exp_linear(0.2).unwrap(),
    };
    Arc::new(Space::new(FrequencySequence::arithmetic(), w, 64).unwrap())
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn coeffs(max_index: usize) -> impl Strategy<Value = Vec<(usize, Complex64)>> {
    prop::collection::vec((1..=max_index, complex()), 1..12)
}

fn element(sp: &Arc<Space>, c: &[(usize, Complex64)]) -> DirichletElement {
    DirichletElement::from_coefficients(sp.clone(), c.iter().copied())
}

// self-maps over both weight choices: Re b ≥ 0.2(a − 1) suffices
fn symbol() -> impl Strategy<Value = (u8, f64, Complex64)> {
    (0..2u8, prop::sample::select(vec![1.0, 2.0, 3.0]), 0.5..2.0f64, -3.0..3.0f64)
        .prop_map(|(w, a, re, im)| (w, a, Complex64::new(re, im)))
}

fn dense(rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(complex(), rows * cols).prop_map(move |v| {
        let mut m = DenseMatrix::zeros(rows, cols);
        for (k, x) in v.into_iter().enumerate() {
            m.set(k % rows, k / rows, x);
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratio_index_lands_on_scaled_frequency(ratio in 1.5..4.0f64, a in 1u32..4, n in 1usize..30) {
        let f = FrequencySequence::geometric(1.0, ratio).unwrap();
        prop_assert_eq!(f.ratio_index(1.0, n).unwrap(), Some(n));
        let scale = ratio.powi(a as i32);
        if let Some(m) = f.ratio_index(scale, n).unwrap() {
            let (lm, ln) = (f.lambda_at(m).unwrap(), f.lambda_at(n).unwrap());
            prop_assert!((lm - scale * ln).abs() <= 1e-9 * lm);
        }
        let v = f.values(40).unwrap();
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parseval(c in coeffs(40), w in 0..2u8) {
        let sp = space(w);
        let f = element(&sp, &c);
        let mut sum = 0.0;
        for n in 1..=40 {
            sum += f.inner_product(&DirichletElement::basis(sp.clone(), n).unwrap()).unwrap().norm_sqr();
        }
        let norm2 = f.norm().unwrap().powi(2);
        prop_assert!((sum - norm2).abs() <= 1e-12 * norm2.max(1.0));
    }

    #[test]
    fn kernel_is_hermitian(w in (0.3..2.0f64, -4.0..4.0f64), z in (0.3..2.0f64, -4.0..4.0f64)) {
        let sp = space(0);
        let (w, z) = (Complex64::new(w.0, w.1), Complex64::new(z.0, z.1));
        let kwz = sp.kernel_eval(w, z, 1e-14).unwrap().value;
        let kzw = sp.kernel_eval(z, w, 1e-14).unwrap().value;
        prop_assert!((kwz - kzw.conj()).norm() <= 1e-12);
    }

    #[test]
    fn kernel_gram_is_positive(points in prop::collection::vec((0.3..2.0f64, -4.0..4.0f64), 1..=6)) {
        let sp = space(1);
        let pts: Vec<Complex64> = points.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
        let n = pts.len();
        let mut g = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, sp.kernel_eval(pts[j], pts[i], 1e-14).unwrap().value);
            }
        }
        let trace: f64 = (0..n).map(|i| g.get(i, i).re).sum();
        let ev = hermitian_eigenvalues(&g).unwrap();
        prop_assert!(*ev.last().unwrap() >= -1e-8 * trace);
    }

    #[test]
    fn reproducing_property(c in coeffs(16), w in (0.5..2.0f64, -3.0..3.0f64)) {
        let sp = space(0);
        let w = Complex64::new(w.0, w.1);
        let f = element(&sp, &c);
        let kt = sp.kernel_terms(2.0 * w.re, 1e-12).unwrap();
        let k = sp.kernel_element(w, kt.count).unwrap();
        let lhs = f.inner_product(&k).unwrap();
        let rhs = f.evaluate(w).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= f.norm().unwrap() * kt.tail_bound.sqrt() + 1e-12);
    }

    #[test]
    fn adjoint_duality((w, a, b) in symbol(), fc in coeffs(12), gc in coeffs(12)) {
        let sp = space(w);
        let sym = AffineSymbol::new(sp.clone(), a, b).unwrap();
        let (f, g) = (element(&sp, &fc), element(&sp, &gc));
        let lhs = sym.apply(&f).unwrap().inner_product(&g).unwrap();
        let rhs = f.inner_product(&sym.apply_adjoint(&g).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * f.norm().unwrap() * g.norm().unwrap());
    }

    #[test]
    fn basis_images_have_norm_r((w, a, b) in symbol(), n in 1usize..=20) {
        let sp = space(w);
        let sym = AffineSymbol::new(sp.clone(), a, b).unwrap();
        let q = DirichletElement::basis(sp, n).unwrap();
        let image = sym.apply(&q).unwrap().norm().unwrap();
        let r = sym.r_value(n).unwrap();
        prop_assert!((image - r).abs() <= 1e-14 * r.max(1e-300));
    }

    #[test]
    fn essential_norm_below_norm((w, a, b) in symbol()) {
        let sym = AffineSymbol::new(space(w), a, b).unwrap();
        let ess = sym.essential_norm_estimate().unwrap().value;
        prop_assert!(ess <= sym.operator_norm().unwrap());
        let rep = sym.report(&[1.0, 2.0]);
        if let (Some(e), Some(n)) = (rep.essential_norm, rep.operator_norm) {
            prop_assert!(e.value <= n.value);
        }
    }

    #[test]
    fn oracle_values_come_from_r((w, a, b) in symbol(), n in 4usize..=24) {
        let sym = AffineSymbol::new(space(w), a, b).unwrap();
        let t = truncate(&sym, n).unwrap();
        let sigma = singular_values(&t.matrix).unwrap();
        let mut pool: Vec<f64> = (1..=n).map(|k| sym.r_value(k).unwrap()).collect();
        for s in sigma {
            if s <= 1e-12 {
                continue;
            }
            let hit = pool.iter().position(|r| (r - s).abs() <= 1e-12 * s.max(1.0));
            prop_assert!(hit.is_some(), "sigma {} not among r_k", s);
            pool.swap_remove(hit.unwrap());
        }
    }

    #[test]
    fn column_section_has_one_entry_per_column((w, a, b) in symbol(), n in 2usize..=24) {
        let sym = AffineSymbol::new(space(w), a, b).unwrap();
        let t = column_section(&sym, n).unwrap();
        for j in 0..n {
            prop_assert!(t.matrix.col(j).iter().filter(|x| x.norm() > 0.0).count() <= 1);
        }
    }

    #[test]
    fn svd_reconstructs(m in (1usize..=10, 1usize..=10).prop_flat_map(|(r, c)| dense(r, c))) {
        let d = svd(&m).unwrap();
        let err = d.reconstruct().sub(&m).frobenius();
        prop_assert!(err <= 1e-12 * m.frobenius().max(1e-300));
    }

    // second route: nalgebra's bidiagonal SVD
    #[test]
    fn svd_matches_nalgebra(m in (1usize..=10, 1usize..=10).prop_flat_map(|(r, c)| dense(r, c))) {
        let ours = singular_values(&m).unwrap();
        let na = DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j));
        let mut theirs: Vec<f64> = na.singular_values().iter().copied().collect();
        theirs.sort_by(|x, y| y.total_cmp(x));
        let tol = 1e-12 * m.frobenius().max(1.0);
        prop_assert_eq!(theirs.len(), m.rows().min(m.cols()));
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() <= tol);
        }
        // one value per column: the surplus is the structural kernel
        prop_assert!(ours[theirs.len()..].iter().all(|&x| x <= tol));
    }

    #[test]
    fn conjugation_is_isometric_involution(c in -4.0..4.0f64, fc in coeffs(40)) {
        let sp = space(1);
        let j = Conjugation::new(sp.clone(), c).unwrap();
        let f = element(&sp, &fc);
        let jf = j.apply(&f).unwrap();
        let norm = f.norm().unwrap();
        prop_assert!((jf.norm().unwrap() - norm).abs() <= 1e-12 * norm);
        prop_assert!(j.apply(&jf).unwrap().sub(&f).unwrap().norm().unwrap() <= 1e-12 * norm);
    }

    #[test]
    fn conjugated_translation_flips_b(c in -4.0..4.0f64, re in 0.0..2.0f64, im in -3.0..3.0f64, n in 1usize..=30) {
        let sp = space(0);
        let j = Conjugation::new(sp.clone(), c).unwrap();
        let b = Complex64::new(re, im);
        let sym = AffineSymbol::new(sp.clone(), 1.0, b).unwrap();
        let flipped = AffineSymbol::new(sp.clone(), 1.0, b.conj()).unwrap();
        let q = DirichletElement::basis(sp, n).unwrap();
        let lhs = j.apply(&sym.apply(&j.apply(&q).unwrap()).unwrap()).unwrap();
        let rhs = flipped.apply(&q).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().norm().unwrap() <= 1e-12 * q.norm().unwrap());
    }

    #[test]
    fn construction_identities(alpha in 0.3..1.0f64, re in -2.0..2.0f64, im in -2.0..2.0f64, s in 1usize..200) {
        prop_assume!(re != 0.0 || im != 0.0);
        let model = ShiftModel::constant(alpha, 256).unwrap();
        let nu = Complex64::new(re, im);
        let u = approx_polynomial_of_degree(&model, nu, s, 0.55).unwrap();
        prop_assert_eq!(u.evaluate(Complex64::new(1.0, 0.0)), nu);
        prop_assert_eq!(u.p[u.s()], Complex64::new(0.0, 0.0));
        let b = u.u_coefficients();
        let direct: f64 = apply_polynomial(&model, &b).unwrap().iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((direct - u.measured_residual).abs() <= 1e-10 * direct.max(1e-300));
    }

    #[test]
    fn shift_steps_match_weights(logs in prop::collection::vec(-0.7..0.1f64, 1..40), c in prop::collection::vec(complex(), 1..40)) {
        let model = ShiftModel::from_log_alpha(logs).unwrap();
        let c = &c[..c.len().min(model.len() + 1)];
        let out = apply_polynomial(&model, c).unwrap();
        for (j, (x, cj)) in out.iter().zip(c).enumerate() {
            let want = cj * model.omega(j);
            prop_assert!((x - want).norm() <= 1e-12 * want.norm().max(1e-300));
        }
    }

    #[test]
    fn trace_never_increases(alpha in 0.3..1.0f64, cap in 8usize..4096) {
        let model = ShiftModel::constant(alpha, 4096).unwrap();
        let trace = residual_trace(&model, Complex64::new(1.0, 0.0), cap, 0.55).unwrap();
        for w in trace.windows(2) {
            prop_assert!(w[1].predicted_residual <= w[0].predicted_residual * (1.0 + 1e-12));
        }
    }
}
