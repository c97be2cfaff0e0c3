use std::f64::consts::TAU;

use num_complex::Complex64;

/// `e^{-λ b}`.
///
/// When `λ` is an integer the imaginary part of `b` is first reduced modulo
/// `2π`, so phases that differ by whole turns produce identical values.
pub fn exp_neg(lambda: f64, b: Complex64) -> Complex64 {
    let modulus = if b.re == 0.0 || lambda == 0.0 { 1.0 } else { (-lambda * b.re).exp() };
    modulus * unimodular(lambda, b.im)
}

/// `e^{-i λ y}`.
pub fn unimodular(lambda: f64, y: f64) -> Complex64 {
    if lambda == 0.0 || y == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let y = if lambda.fract() == 0.0 { y - (y / TAU).round() * TAU } else { y };
    let (s, c) = (lambda * y).sin_cos();
    Complex64::new(c, -s)
}

/// Complex values as `{"re": .., "im": ..}` objects in serialized output.
pub mod pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Pair {
        re: f64,
        im: f64,
    }

    impl From<&Complex64> for Pair {
        fn from(z: &Complex64) -> Self {
            Pair { re: z.re, im: z.im }
        }
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Pair::from(z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let p = Pair::deserialize(d)?;
        Ok(Complex64::new(p.re, p.im))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(Pair::from))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
            let v = Vec::<Pair>::deserialize(d)?;
            Ok(v.into_iter().map(|p| Complex64::new(p.re, p.im)).collect())
        }
    }
}
