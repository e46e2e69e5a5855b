//! Seeded random monic polynomials for property checks.

use rand::Rng;

use crate::poly::MonicPolynomial;
use crate::scalar::{c, Scalar};

/// Monic polynomial of the given degree whose coefficients have modulus at
/// most `max_modulus` and uniformly random phase. The constant term is kept
/// away from zero (modulus at least `max_modulus / 20`).
pub fn random_monic<T: Scalar, R: Rng + ?Sized>(rng: &mut R, degree: usize, max_modulus: f64) -> MonicPolynomial<T> {
    let coeffs = (0..degree)
        .map(|j| {
            let u: f64 = rng.gen();
            let modulus = if j == 0 {
                max_modulus * (0.05 + 0.95 * u)
            } else {
                max_modulus * u
            };
            let phase: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            c(T::lit(modulus * phase.cos()), T::lit(modulus * phase.sin()))
        })
        .collect();
    MonicPolynomial::new(coeffs).expect("degree >= 1")
}
