//! Complex monic polynomials and the real polynomials derived from their
//! coefficient moduli.
//!
//! Coefficients are stored in ascending degree. For a monic polynomial
//! `p(z) = z^n + a_{n-1} z^{n-1} + ... + a_0` only `a_0 ..= a_{n-1}` are
//! stored; `a_n = 1` is implicit.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{real, Scalar};

pub(crate) fn check_index(index: usize, lo: usize, hi: usize) -> Result<()> {
    if index < lo || index > hi {
        Err(Error::IndexOutOfRange { index, lo, hi })
    } else {
        Ok(())
    }
}

fn horner<T: Scalar>(ascending: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    ascending
        .iter()
        .rev()
        .fold(Complex::new(T::zero(), T::zero()), |acc, &a| acc * z + a)
}

/// Monic polynomial of degree `n >= 1` with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> MonicPolynomial<T> {
    /// Builds `z^n + coeffs[n-1] z^{n-1} + ... + coeffs[0]`.
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(Self { coeffs })
    }

    /// Divides `raw` (the coefficients below the leading one) by `leading`.
    pub fn normalize(raw: &[Complex<T>], leading: Complex<T>) -> Result<Self> {
        if leading.re == T::zero() && leading.im == T::zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Self::new(raw.iter().map(|&a| a / leading).collect())
    }

    /// Accepts a full ascending coefficient list, leading coefficient last.
    pub fn from_ascending(all: &[Complex<T>]) -> Result<Self> {
        match all.split_last() {
            Some((&leading, raw)) if !raw.is_empty() => Self::normalize(raw, leading),
            Some(_) => Err(Error::PreconditionViolated(
                "polynomial must have degree at least 1".into(),
            )),
            None => Err(Error::EmptyPolynomial),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_0 ..= a_{n-1}`.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// `a_j` for `0 <= j <= n`, with `a_n = 1`.
    pub fn coeff(&self, j: usize) -> Complex<T> {
        if j == self.degree() {
            real(T::one())
        } else {
            self.coeffs[j]
        }
    }

    /// `|a_j|`, overflow-safe.
    pub fn abs_coeff(&self, j: usize) -> T {
        self.coeff(j).norm()
    }

    /// Full ascending coefficient list including the leading 1.
    pub fn to_ascending(&self) -> Vec<Complex<T>> {
        let mut all = self.coeffs.clone();
        all.push(real(T::one()));
        all
    }

    pub fn max_abs_coeff(&self) -> T {
        (0..=self.degree())
            .map(|j| self.abs_coeff(j))
            .fold(T::zero(), T::max)
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(real(T::one()), |acc, &a| acc * z + a)
    }

    /// `(p(z), p'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut value = real(T::one());
        let mut deriv = real(T::zero());
        for &a in self.coeffs.iter().rev() {
            deriv = deriv * z + value;
            value = value * z + a;
        }
        (value, deriv)
    }

    pub fn has_zero_constant(&self) -> bool {
        let a0 = self.coeffs[0];
        a0.re == T::zero() && a0.im == T::zero()
    }

    /// Checks the hypotheses shared by the Pellet and generalized Cauchy
    /// constructions: `n >= 3` and `a_0 != 0`.
    pub fn require_theorem_hypotheses(&self) -> Result<()> {
        if self.degree() < 3 {
            return Err(Error::PreconditionViolated(format!(
                "degree {} < 3",
                self.degree()
            )));
        }
        if self.has_zero_constant() {
            return Err(Error::PreconditionViolated(
                "a_0 = 0; deflate the origin first".into(),
            ));
        }
        Ok(())
    }

    /// Validates `1 <= k <= n - 1`.
    pub fn check_split_index(&self, k: usize) -> Result<()> {
        let n = self.degree();
        if n < 2 {
            return Err(Error::IndexOutOfRange { index: k, lo: 1, hi: 0 });
        }
        check_index(k, 1, n - 1)
    }

    /// Associated polynomial `p_k(z) = z^k + a_{n-1} z^{k-1} + ... + a_{n-k+1} z`,
    /// built with the recursion `p_{k+1}(z) = z (p_k(z) + a_{n-k})`.
    pub fn associated(&self, k: usize) -> Result<ComplexPolynomial<T>> {
        let n = self.degree();
        self.check_split_index(k)?;
        // p_1 = z
        let mut current = vec![real(T::zero()), real(T::one())];
        for j in 1..k {
            current[0] += self.coeffs[n - j];
            current.insert(0, real(T::zero()));
        }
        Ok(ComplexPolynomial { coeffs: current })
    }

    /// Majorant `P_k`: `p_k` with every coefficient replaced by its modulus.
    pub fn majorant(&self, k: usize) -> Result<RealPolynomial<T>> {
        let pk = self.associated(k)?;
        Ok(RealPolynomial::new(
            pk.coeffs().iter().map(|a| a.norm()).collect(),
        ))
    }

    /// `P_k(x)` evaluated directly from the coefficient moduli.
    pub fn majorant_at(&self, k: usize, x: T) -> Result<T> {
        let n = self.degree();
        self.check_split_index(k)?;
        // x^k + |a_{n-1}| x^{k-1} + ... + |a_{n-k+1}| x
        let mut acc = T::one();
        for t in 1..k {
            acc = acc * x + self.abs_coeff(n - t);
        }
        Ok(acc * x)
    }

    /// `mu(k, x) = sum_{j<k} |a_j| x^{j-k}`; `mu(0, x) = 0`.
    pub fn mu(&self, k: usize, x: T) -> Result<T> {
        check_index(k, 0, self.degree() - 1)?;
        if !(x > T::zero()) {
            return Err(Error::NonpositiveArgument(x.as_f64()));
        }
        let y = x.recip();
        let mut acc = T::zero();
        for j in 0..k {
            acc = (acc + self.abs_coeff(j)) * y;
        }
        Ok(acc)
    }

    /// Pellet polynomial `f_k`: moduli of all coefficients, with the sign of
    /// the `x^k` term flipped.
    pub fn pellet_poly(&self, k: usize) -> Result<RealPolynomial<T>> {
        let n = self.degree();
        self.check_split_index(k)?;
        let mut coeffs: Vec<T> = (0..=n).map(|j| self.abs_coeff(j)).collect();
        coeffs[k] = -coeffs[k];
        Ok(RealPolynomial::new(coeffs))
    }

    /// Cauchy-type polynomial `h_j`: `x^n + ... + |a_{j+1}| x^{j+1}` minus
    /// `|a_j| x^j + ... + |a_0|`.
    pub fn cauchy_poly(&self, j: usize) -> Result<RealPolynomial<T>> {
        let n = self.degree();
        check_index(j, 0, n - 1)?;
        let coeffs = (0..=n)
            .map(|i| {
                let m = self.abs_coeff(i);
                if i <= j {
                    -m
                } else {
                    m
                }
            })
            .collect();
        Ok(RealPolynomial::new(coeffs))
    }

    /// Monic reciprocal `z^n p(1/z) / a_0`; its zeros are the reciprocals of
    /// the zeros of `p`.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.has_zero_constant() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut reversed = self.to_ascending();
        reversed.reverse();
        Self::from_ascending(&reversed)
    }

    /// Factors `z^m` out of `p`, leaving a polynomial with nonzero constant
    /// term.
    pub fn deflate_origin(&self) -> Result<DeflationRecord<T>> {
        let m = self
            .coeffs
            .iter()
            .take_while(|a| a.re == T::zero() && a.im == T::zero())
            .count();
        if m == self.degree() {
            return Err(Error::PreconditionViolated(
                "polynomial is z^n; nothing left after deflation".into(),
            ));
        }
        Ok(DeflationRecord {
            origin_multiplicity: m,
            reduced: Self {
                coeffs: self.coeffs[m..].to_vec(),
            },
        })
    }
}

/// `p = z^origin_multiplicity * reduced`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflationRecord<T> {
    pub origin_multiplicity: usize,
    pub reduced: MonicPolynomial<T>,
}

/// Dense complex polynomial with explicit leading coefficient.
///
/// Used for associated polynomials `p_k` and their shifts `p_k + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexPolynomial<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        horner(&self.coeffs, z)
    }

    /// `self + c`.
    pub fn plus_constant(&self, c: Complex<T>) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        Self { coeffs }
    }

    /// Divides through by the leading coefficient.
    pub fn to_monic(&self) -> Result<MonicPolynomial<T>> {
        MonicPolynomial::from_ascending(&self.coeffs)
    }
}

/// Real polynomial in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> RealPolynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &a| acc * x + a)
    }

    pub fn eval_with_derivative(&self, x: T) -> (T, T) {
        let mut value = T::zero();
        let mut deriv = T::zero();
        for &a in self.coeffs.iter().rev() {
            deriv = deriv * x + value;
            value = value * x + a;
        }
        (value, deriv)
    }

    pub fn eval_complex(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(real(T::zero()), |acc, &a| acc * z + real(a))
    }

    /// Sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_changes(&self) -> usize {
        let signs: Vec<bool> = self
            .coeffs
            .iter()
            .filter(|a| **a != T::zero())
            .map(|a| *a > T::zero())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}
