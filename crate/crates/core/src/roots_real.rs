//! Positive roots of the modulus polynomials `f_k` (Pellet) and `h_j`
//! (generalized Cauchy).
//!
//! `f_k` has either zero or two positive roots. Rather than scanning `f_k`,
//! the solver works with `g_k(x) = f_k(x) / x^k = P_{n-k}(x) - |a_k| + mu(k, x)`,
//! which is strictly convex on `(0, inf)` and tends to `+inf` at both ends.
//! Its minimum decides the outcome: negative gives two roots, zero a double
//! root, positive no roots.

use crate::error::{Error, Result};
use crate::poly::{check_index, MonicPolynomial};
use crate::scalar::Scalar;

/// Default relative tolerance for the positive-root solvers.
pub const DEFAULT_TOL: f64 = 1e-13;

const MAX_DOUBLINGS: usize = 80;
const MAX_ITERATIONS: usize = 300;
const GOLDEN_STEPS: usize = 12;

/// Outcome of the Pellet test for one split index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PelletOutcome<T> {
    /// `f_k` has two positive roots `r < big_r`.
    Separated { r: T, big_r: T },
    /// `f_k` has a double positive root at `rho`.
    Tangent { rho: T },
    /// `f_k > 0` on the positive axis; `min_value` is `min g_k`.
    Inapplicable { min_value: T, minimizer: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PelletBracket<T> {
    pub k: usize,
    pub outcome: PelletOutcome<T>,
}

impl<T: Scalar> PelletBracket<T> {
    pub fn separated(&self) -> Option<(T, T)> {
        match self.outcome {
            PelletOutcome::Separated { r, big_r } => Some((r, big_r)),
            _ => None,
        }
    }
}

/// Unique positive root `s_j` of `h_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyRadius<T> {
    pub j: usize,
    pub s: T,
}

/// `g_k` with its first two derivatives.
struct Gauge<T> {
    k: usize,
    moduli: Vec<T>,
}

impl<T: Scalar> Gauge<T> {
    fn new(p: &MonicPolynomial<T>, k: usize) -> Self {
        Self {
            k,
            moduli: (0..=p.degree()).map(|j| p.abs_coeff(j)).collect(),
        }
    }

    fn a_k(&self) -> T {
        self.moduli[self.k]
    }

    fn eval(&self, x: T) -> (T, T, T) {
        let inv = x.recip();
        let (mut g, mut d1, mut d2) = (-self.a_k(), T::zero(), T::zero());
        for (j, &m) in self.moduli.iter().enumerate() {
            if j == self.k || m == T::zero() {
                continue;
            }
            let e = j as i32 - self.k as i32;
            let term = m * x.powi(e);
            let ef = T::lit(e as f64);
            g += term;
            d1 += ef * term * inv;
            d2 += ef * (ef - T::one()) * term * inv * inv;
        }
        (g, d1, d2)
    }
}

/// Root of `f` inside `[lo, hi]` where `f(lo)` and `f(hi)` differ in sign.
///
/// Newton steps are taken when they stay inside the bracket and shrink fast
/// enough; otherwise the bracket is bisected.
pub(crate) fn safeguarded_root<T: Scalar>(
    f: impl Fn(T) -> (T, T),
    mut lo: T,
    mut hi: T,
    rel_tol: T,
) -> T {
    let two = T::lit(2.0);
    let (f_lo, _) = f(lo);
    let (f_hi, _) = f(hi);
    if f_lo == T::zero() {
        return lo;
    }
    if f_hi == T::zero() {
        return hi;
    }
    let lo_negative = f_lo < T::zero();
    let mut x = (lo + hi) / two;
    let mut step_old = hi - lo;
    let mut step = step_old;
    for _ in 0..MAX_ITERATIONS {
        let (v, d) = f(x);
        if v == T::zero() {
            return x;
        }
        if (v < T::zero()) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let newton_ok = d != T::zero() && {
            let candidate = x - v / d;
            candidate > lo && candidate < hi && (two * v).abs() <= (step_old * d).abs()
        };
        step_old = step;
        if newton_ok {
            step = v / d;
            x -= step;
        } else {
            step = (hi - lo) / two;
            x = lo + step;
        }
        if step.abs() <= rel_tol * x.abs() || hi - lo <= rel_tol * x.abs() {
            return x;
        }
    }
    x
}

/// Expands from `start` by doubling (`grow = true`) or halving until
/// `accept` holds.
fn expand<T: Scalar>(start: T, grow: bool, accept: impl Fn(T) -> bool, what: &str) -> Result<T> {
    let two = T::lit(2.0);
    let mut x = start;
    for _ in 0..=MAX_DOUBLINGS {
        if accept(x) {
            return Ok(x);
        }
        x = if grow { x * two } else { x / two };
    }
    Err(Error::BracketFailure(what.to_string()))
}

/// Minimizer of the strictly convex `g_k`.
fn minimize_gauge<T: Scalar>(gauge: &Gauge<T>, tol: T) -> Result<T> {
    let one = T::one();
    let slope = |x: T| gauge.eval(x).1;
    let (mut lo, mut hi) = if slope(one) > T::zero() {
        let lo = expand(one, false, |x| slope(x) < T::zero(), "bracketing the minimizer")?;
        (lo, (lo * T::lit(2.0)).min(one))
    } else {
        let hi = expand(one, true, |x| slope(x) > T::zero(), "bracketing the minimizer")?;
        ((hi / T::lit(2.0)).max(one), hi)
    };
    // Golden-section narrowing on g itself before switching to Newton on g'.
    let ratio = (T::lit(5.0).sqrt() - one) / T::lit(2.0);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut gc, mut gd) = (gauge.eval(c).0, gauge.eval(d).0);
    for _ in 0..GOLDEN_STEPS {
        if gc < gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - ratio * (hi - lo);
            gc = gauge.eval(c).0;
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + ratio * (hi - lo);
            gd = gauge.eval(d).0;
        }
    }
    // The golden bracket may have drifted off the sign change of g' when g is
    // flat at rounding level; restore it before the Newton phase.
    while slope(lo) > T::zero() {
        lo /= T::lit(2.0);
    }
    while slope(hi) < T::zero() {
        hi *= T::lit(2.0);
    }
    Ok(safeguarded_root(
        |x| {
            let (_, d1, d2) = gauge.eval(x);
            (d1, d2)
        },
        lo,
        hi,
        tol,
    ))
}

/// Pellet test for split index `k`: locates the positive roots of `f_k`.
pub fn pellet_roots<T: Scalar>(p: &MonicPolynomial<T>, k: usize, tol: T) -> Result<PelletBracket<T>> {
    p.check_split_index(k)?;
    p.require_theorem_hypotheses()?;
    let gauge = Gauge::new(p, k);
    let x_min = minimize_gauge(&gauge, tol)?;
    let g_min = gauge.eval(x_min).0;
    let threshold = tol * gauge.a_k();
    let outcome = if g_min > threshold {
        PelletOutcome::Inapplicable {
            min_value: g_min,
            minimizer: x_min,
        }
    } else if g_min.abs() <= threshold {
        PelletOutcome::Tangent { rho: x_min }
    } else {
        let g = |x: T| {
            let (v, d, _) = gauge.eval(x);
            (v, d)
        };
        let positive = |x: T| g(x).0 > T::zero();
        let left = expand(x_min, false, positive, "bracketing r")?;
        let right = expand(x_min, true, positive, "bracketing R")?;
        let r = safeguarded_root(g, left, x_min, tol);
        let big_r = safeguarded_root(g, x_min, right, tol);
        let f = p.pellet_poly(k)?;
        PelletOutcome::Separated {
            r: polish(&f, r),
            big_r: polish(&f, big_r),
        }
    };
    Ok(PelletBracket { k, outcome })
}

/// A couple of Newton steps on the polynomial itself, kept only while the
/// residual decreases.
fn polish<T: Scalar>(f: &crate::poly::RealPolynomial<T>, mut x: T) -> T {
    let (mut v, mut d) = f.eval_with_derivative(x);
    for _ in 0..2 {
        if d == T::zero() || v == T::zero() {
            break;
        }
        let next = x - v / d;
        let (nv, nd) = f.eval_with_derivative(next);
        if !(nv.abs() < v.abs()) || !(next > T::zero()) {
            break;
        }
        x = next;
        v = nv;
        d = nd;
    }
    x
}

/// Pellet test for every split index `k = 1 ..= n-1`.
pub fn pellet_scan<T: Scalar>(p: &MonicPolynomial<T>, tol: T) -> Result<Vec<PelletBracket<T>>> {
    p.require_theorem_hypotheses()?;
    (1..p.degree()).map(|k| pellet_roots(p, k, tol)).collect()
}

/// Unique positive root of `h_j`.
pub fn cauchy_radius<T: Scalar>(p: &MonicPolynomial<T>, j: usize, tol: T) -> Result<CauchyRadius<T>> {
    check_index(j, 0, p.degree() - 1)?;
    if p.has_zero_constant() {
        return Err(Error::PreconditionViolated(
            "a_0 = 0; h_j would have a root at the origin".into(),
        ));
    }
    let h = p.cauchy_poly(j)?;
    let one = T::one();
    let value = |x: T| h.eval(x);
    let (lo, hi) = if value(one) > T::zero() {
        let lo = expand(one, false, |x| value(x) < T::zero(), "bracketing s_j")?;
        (lo, lo * T::lit(2.0))
    } else {
        let hi = expand(one, true, |x| value(x) > T::zero(), "bracketing s_j")?;
        (hi / T::lit(2.0), hi)
    };
    let s = safeguarded_root(|x| h.eval_with_derivative(x), lo, hi, tol);
    Ok(CauchyRadius { j, s: polish(&h, s) })
}

/// All Cauchy radii `s_0, ..., s_{n-1}`.
pub fn cauchy_radii<T: Scalar>(p: &MonicPolynomial<T>, tol: T) -> Result<Vec<T>> {
    (0..p.degree())
        .map(|j| cauchy_radius(p, j, tol).map(|c| c.s))
        .collect()
}

/// The scaling `x` at which both Gershgorin disks of the scaled `M_{n-k}`
/// have equal radius: `P_{n-k}(x) = mu(k, x)`.
pub fn equal_radius_point<T: Scalar>(p: &MonicPolynomial<T>, k: usize, tol: T) -> Result<T> {
    p.check_split_index(k)?;
    p.require_theorem_hypotheses()?;
    let n = p.degree();
    let majorant = p.majorant(n - k)?;
    let diff = |x: T| -> (T, T) {
        let (pv, pd) = majorant.eval_with_derivative(x);
        let mut mu = T::zero();
        let mut mu_d = T::zero();
        for j in 0..k {
            let e = j as i32 - k as i32;
            let term = p.abs_coeff(j) * x.powi(e);
            mu += term;
            mu_d += T::lit(e as f64) * term / x;
        }
        (pv - mu, pd - mu_d)
    };
    let one = T::one();
    let (lo, hi) = if diff(one).0 > T::zero() {
        let lo = expand(one, false, |x| diff(x).0 < T::zero(), "bracketing the crossover")?;
        (lo, lo * T::lit(2.0))
    } else {
        let hi = expand(one, true, |x| diff(x).0 > T::zero(), "bracketing the crossover")?;
        (hi / T::lit(2.0), hi)
    };
    Ok(safeguarded_root(diff, lo, hi, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use num_complex::Complex;

    fn poly(coeffs: &[(f64, f64)]) -> MonicPolynomial<f64> {
        MonicPolynomial::new(coeffs.iter().map(|&(re, im)| c(re, im)).collect()).unwrap()
    }

    fn q_a() -> MonicPolynomial<f64> {
        poly(&[
            (1.0, 1.0),
            (-1.0, 0.0),
            (2.5, 0.0),
            (1.0, 0.0),
            (0.5, 0.0),
            (-11.0, 0.0),
            (-1.0, 1.0),
            (2.0, 0.0),
        ])
    }

    fn q_b() -> MonicPolynomial<f64> {
        poly(&[(1.0, 0.0), (2.0, 0.0), (4.0, 0.0)])
    }

    fn q_c() -> MonicPolynomial<f64> {
        poly(&[
            (1.0, 0.0),
            (0.0, 2.0),
            (0.0, 0.0),
            (0.0, -8.0),
            (1.0, 0.0),
            (0.0, 3.0),
            (0.0, 0.0),
            (0.0, 0.0),
        ])
    }

    fn q_d() -> MonicPolynomial<f64> {
        poly(&[
            (0.0, 1.0),
            (-5.0, 0.0),
            (2.0, 0.0),
            (-4.0, 0.0),
            (-0.5, 0.0),
            (-2.0, 3.0),
            (-0.5, 0.0),
            (2.5, 0.0),
        ])
    }

    /// Bisection with a fixed iteration count; independent of the solver.
    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
        let lo_neg = f(lo) < 0.0;
        for _ in 0..iters {
            let mid = 0.5 * (lo + hi);
            if (f(mid) < 0.0) == lo_neg {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn q_a_bracket() {
        let b = pellet_roots(&q_a(), 5, DEFAULT_TOL).unwrap();
        let (r, big_r) = b.separated().unwrap();
        assert!((r - 0.9872).abs() < 5e-4, "r = {r}");
        assert!((big_r - 1.4065).abs() < 5e-4, "R = {big_r}");
    }

    #[test]
    fn q_b_bracket_matches_factorization() {
        // f_2 = (x - 1)(x^2 - 3x - 1)
        let (r, big_r) = pellet_roots(&q_b(), 2, DEFAULT_TOL).unwrap().separated().unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        assert!((big_r - (3.0 + 13f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn all_unit_moduli_is_inapplicable() {
        let p = poly(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        // dense-sampling oracle for g_1(x) = x^2 + x - 1 + 1/x
        let sampled_min = (1..=100_000)
            .map(|i| {
                let x = 0.01 + (10.0 - 0.01) * i as f64 / 100_000.0;
                x * x + x - 1.0 + 1.0 / x
            })
            .fold(f64::INFINITY, f64::min);
        assert!(sampled_min > 0.0);
        match pellet_roots(&p, 1, DEFAULT_TOL).unwrap().outcome {
            PelletOutcome::Inapplicable { min_value, .. } => {
                assert!(min_value > 0.0);
                assert!(min_value <= sampled_min + 1e-9);
            }
            other => panic!("unexpected {other:?}"),
        }
        for b in pellet_scan(&p, DEFAULT_TOL).unwrap() {
            assert!(matches!(b.outcome, PelletOutcome::Inapplicable { .. }));
        }
    }

    #[test]
    fn zero_coefficient_at_split_is_inapplicable() {
        let p = poly(&[(1.0, 0.0), (0.0, 0.0), (3.0, 0.0)]);
        assert!(matches!(
            pellet_roots(&p, 1, DEFAULT_TOL).unwrap().outcome,
            PelletOutcome::Inapplicable { .. }
        ));
    }

    #[test]
    fn scan_reports_every_index() {
        let scan = pellet_scan(&q_a(), DEFAULT_TOL).unwrap();
        assert_eq!(scan.len(), 7);
        let (r, big_r) = scan[4].separated().unwrap();
        assert!((r - 0.9872).abs() < 5e-4 && (big_r - 1.4065).abs() < 5e-4);
        assert!(pellet_scan(&q_c(), DEFAULT_TOL).unwrap()[2].separated().is_some());
    }

    #[test]
    fn q_c_outer_root_is_one() {
        let p = q_c();
        assert_eq!(p.pellet_poly(3).unwrap().eval(1.0), 0.0);
        let (_, big_r) = pellet_roots(&p, 3, DEFAULT_TOL).unwrap().separated().unwrap();
        assert!((big_r - 1.0).abs() < 1e-12, "{big_r}");
    }

    #[test]
    fn preconditions() {
        let quad = poly(&[(1.0, 0.0), (3.0, 0.0)]);
        assert!(matches!(
            pellet_roots(&quad, 1, DEFAULT_TOL),
            Err(Error::PreconditionViolated(_))
        ));
        let deflatable = poly(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        assert!(matches!(
            pellet_roots(&deflatable, 1, DEFAULT_TOL),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            pellet_roots(&q_a(), 8, DEFAULT_TOL),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            cauchy_radius(&q_a(), 8, DEFAULT_TOL),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn separated_residuals_and_interior() {
        for (p, k) in [(q_a(), 5), (q_b(), 2), (q_c(), 3)] {
            let (r, big_r) = pellet_roots(&p, k, DEFAULT_TOL).unwrap().separated().unwrap();
            let f = p.pellet_poly(k).unwrap();
            let scale = p.max_abs_coeff() * big_r.max(1.0).powi(p.degree() as i32);
            assert!(f.eval(r).abs() <= 1e-9 * scale);
            assert!(f.eval(big_r).abs() <= 1e-9 * scale);
            assert!(f.eval(0.5 * (r + big_r)) < 0.0);
        }
    }

    #[test]
    fn cauchy_radii_known_values() {
        let cube8 = poly(&[(-8.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        for j in 0..3 {
            assert!((cauchy_radius(&cube8, j, DEFAULT_TOL).unwrap().s - 2.0).abs() < 1e-10);
        }
        let h7 = q_d().cauchy_poly(7).unwrap();
        let oracle = bisect(|x| h7.eval(x), 1e-6, 100.0, 200);
        let s7 = cauchy_radius(&q_d(), 7, DEFAULT_TOL).unwrap().s;
        assert!((s7 - oracle).abs() < 1e-12 * oracle);
    }

    #[test]
    fn cauchy_root_separates_signs() {
        let p = q_d();
        for j in 0..8 {
            let s = cauchy_radius(&p, j, DEFAULT_TOL).unwrap().s;
            let h = p.cauchy_poly(j).unwrap();
            assert!(h.eval(0.9 * s) < 0.0 && h.eval(1.1 * s) > 0.0);
            assert!(h.eval(s).abs() <= 1e-10 * p.max_abs_coeff() * s.max(1.0).powi(8));
        }
    }

    #[test]
    fn crossover_closed_form() {
        // z^3 - 8, k = 2: x^1 ... P_1(x) = x, mu(2, x) = 8 / x^2 -> x^3 = 8
        let cube8 = poly(&[(-8.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let x = equal_radius_point(&cube8, 2, DEFAULT_TOL).unwrap();
        assert!((x - 2.0).abs() < 1e-12);
        let x = equal_radius_point(&q_a(), 5, DEFAULT_TOL).unwrap();
        assert!((q_a().majorant_at(3, x).unwrap() - q_a().mu(5, x).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn tangent_detection_for_constructed_double_root() {
        // q_B with |a_2| lowered so that min g_2 is exactly zero.
        let p = q_b();
        let k = 1;
        let sampler = |x: f64| {
            p.majorant_at(p.degree() - k, x).unwrap() + p.mu(k, x).unwrap()
        };
        // ternary search for the minimizer of P + mu
        let (mut lo, mut hi) = (1e-3, 1e3);
        for _ in 0..300 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if sampler(m1) < sampler(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let x_star = 0.5 * (lo + hi);
        let mut coeffs = p.coeffs().to_vec();
        let phase = coeffs[k] / coeffs[k].norm();
        coeffs[k] = phase * sampler(x_star);
        let tangent = MonicPolynomial::new(coeffs).unwrap();
        match pellet_roots(&tangent, k, DEFAULT_TOL).unwrap().outcome {
            PelletOutcome::Tangent { rho } => assert!((rho - x_star).abs() < 1e-6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn f32_solver() {
        let p: MonicPolynomial<f32> = MonicPolynomial::new(vec![
            Complex::new(1.0, 0.0),
            Complex::new(2.0, 0.0),
            Complex::new(4.0, 0.0),
        ])
        .unwrap();
        let (r, big_r) = pellet_roots(&p, 2, f32::tol(DEFAULT_TOL)).unwrap().separated().unwrap();
        assert!((r - 1.0).abs() < 1e-4);
        assert!((big_r - 3.302_775_6).abs() < 1e-4);
    }
}
