//! Aberth–Ehrlich simultaneous iteration for all zeros of a monic
//! polynomial.
//!
//! This root finder never touches the companion matrix, so it can serve as an
//! independent check on every inclusion region built elsewhere in the crate.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::MonicPolynomial;
use crate::scalar::{c, Scalar};

const MAX_SWEEPS: usize = 500;
/// Rotation of the initial guesses off the real axis (radians).
const START_ROTATION: f64 = 0.618_033_988_749_894_8;

/// All zeros of a polynomial, sorted by ascending modulus (ties by argument).
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet<T> {
    pub zeros: Vec<Complex<T>>,
    /// `|p(z_i)|` for each zero.
    pub residuals: Vec<T>,
}

impl<T: Scalar> ZeroSet<T> {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex<T>> {
        self.zeros.iter()
    }
}

/// Residual bound used to accept an Aberth result:
/// `1e-8 * max(1, max |z_i|)^n * max |a_j|`.
pub fn residual_bound<T: Scalar>(p: &MonicPolynomial<T>, zeros: &[Complex<T>]) -> T {
    let radius = zeros.iter().map(|z| z.norm()).fold(T::one(), T::max);
    T::tol(1e-8) * radius.powi(p.degree() as i32) * p.max_abs_coeff()
}

/// Sorts by modulus, then by argument within groups of equal modulus.
fn sort_zeros<T: Scalar>(zeros: &mut [Complex<T>]) {
    zeros.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal));
    let tie = T::tol(1e-10);
    let mut start = 0;
    while start < zeros.len() {
        let base = zeros[start].norm();
        let mut end = start + 1;
        while end < zeros.len() && zeros[end].norm() - base <= tie * base.max(T::one()) {
            end += 1;
        }
        zeros[start..end]
            .sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap_or(std::cmp::Ordering::Equal));
        start = end;
    }
}

/// All zeros of `p` by Aberth–Ehrlich iteration.
///
/// Requires `a_0 != 0`; use [`zeros_with_origin`] for polynomials that
/// still carry a factor of `z`.
pub fn all_zeros<T: Scalar>(p: &MonicPolynomial<T>) -> Result<ZeroSet<T>> {
    if p.has_zero_constant() {
        return Err(Error::PreconditionViolated(
            "a_0 = 0; deflate the origin first".into(),
        ));
    }
    let n = p.degree();
    let radius = p.coeffs()[0].norm().powf(T::from_usize_lossy(n).recip());
    let rotation = T::lit(START_ROTATION);
    let mut zeros: Vec<Complex<T>> = (0..n)
        .map(|j| {
            let theta = T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(n) + rotation;
            c(radius * theta.cos(), radius * theta.sin())
        })
        .collect();
    let step_tol = T::tol(1e-14);
    let mut done = vec![false; n];

    for _ in 0..MAX_SWEEPS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let z = zeros[i];
            let (value, deriv) = p.eval_with_derivative(z);
            if value.re == T::zero() && value.im == T::zero() {
                done[i] = true;
                continue;
            }
            let newton = value / deriv;
            let repulsion = zeros
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(c(T::zero(), T::zero()), |acc, (_, &w)| acc + (z - w).inv());
            let correction = newton / (c(T::one(), T::zero()) - newton * repulsion);
            let correction = if correction.re.is_finite() && correction.im.is_finite() {
                correction
            } else {
                newton
            };
            zeros[i] = z - correction;
            if correction.norm() <= step_tol * (T::one() + zeros[i].norm()) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    sort_zeros(&mut zeros);
    let residuals: Vec<T> = zeros.iter().map(|&z| p.eval(z).norm()).collect();
    let bound = residual_bound(p, &zeros);
    let max_residual = residuals.iter().copied().fold(T::zero(), T::max);
    if !(max_residual <= bound) {
        return Err(Error::NoConvergence {
            residuals: residuals.iter().map(|r| r.as_f64()).collect(),
            max_residual: max_residual.as_f64(),
        });
    }
    Ok(ZeroSet { zeros, residuals })
}

/// Zeros of a polynomial that may have `a_0 = 0`: deflates `z^m`, solves the
/// reduced polynomial, and appends `m` zeros at the origin.
pub fn zeros_with_origin<T: Scalar>(p: &MonicPolynomial<T>) -> Result<ZeroSet<T>> {
    let record = p.deflate_origin();
    let (m, reduced) = match record {
        Ok(d) => (d.origin_multiplicity, Some(d.reduced)),
        // p = z^n
        Err(_) => (p.degree(), None),
    };
    let mut set = match reduced {
        Some(q) => all_zeros(&q)?,
        None => ZeroSet {
            zeros: Vec::new(),
            residuals: Vec::new(),
        },
    };
    for _ in 0..m {
        set.zeros.push(c(T::zero(), T::zero()));
    }
    sort_zeros(&mut set.zeros);
    set.residuals = set.zeros.iter().map(|&z| p.eval(z).norm()).collect();
    Ok(set)
}

/// Foci of `Omega_2(k)`: the zeros of `p_{n-k}(z) + a_k`.
pub fn foci<T: Scalar>(p: &MonicPolynomial<T>, k: usize) -> Result<Vec<Complex<T>>> {
    p.check_split_index(k)?;
    let shifted = p.associated(p.degree() - k)?.plus_constant(p.coeff(k));
    Ok(zeros_with_origin(&shifted.to_monic()?)?.zeros)
}

/// Smallest `d` such that `a` and `b` can be matched one-to-one with every
/// pair within distance `d` (bottleneck matching). Returns `None` when the
/// multisets differ in size.
pub fn matched_distance<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Option<T> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(T::zero());
    }
    let n = a.len();
    let dist: Vec<Vec<T>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let mut candidates: Vec<T> = dist.iter().flatten().copied().collect();
    candidates.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let feasible = |limit: T| -> bool {
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let mut seen = vec![false; n];
            if !augment(i, limit, &dist, &mut seen, &mut owner) {
                return false;
            }
        }
        true
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(candidates[lo])
}

fn augment<T: Scalar>(
    i: usize,
    limit: T,
    dist: &[Vec<T>],
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for j in 0..dist.len() {
        if dist[i][j] <= limit && !seen[j] {
            seen[j] = true;
            if owner[j].is_none_or(|o| augment(o, limit, dist, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
    }
    false
}
