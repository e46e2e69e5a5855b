//! Companion matrix `C(p)`, the matrices `M_k(p) = p_k(C(p))`, their diagonal
//! similarity scaling, and Gershgorin disks.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::MonicPolynomial;
use crate::scalar::{c, rel_diff, Scalar};

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    order: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![c(T::zero(), T::zero()); order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.order + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.entries[row * self.order + col] = value;
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.order).map(|i| self.get(i, i)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(l, j);
                }
            }
        }
        out
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &Self, factor: Complex<T>) -> Self {
        Self {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + factor * b)
                .collect(),
        }
    }

    /// `D^{-1} A D` with `D = diag(x^n, x^{n-1}, ..., x)`; entry `(i, j)`
    /// becomes `a_ij * x^{i-j}`.
    pub fn diagonal_similarity(&self, x: T) -> Self {
        let n = self.order;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let e = i as i32 - j as i32;
                out.entries[i * n + j] = self.get(i, j) * x.powi(e);
            }
        }
        out
    }

    /// Sum of the off-diagonal moduli of each column.
    pub fn deleted_column_sums(&self) -> Vec<T> {
        (0..self.order)
            .map(|j| {
                (0..self.order)
                    .filter(|&i| i != j)
                    .map(|i| self.get(i, j).norm())
                    .fold(T::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Sum of the off-diagonal moduli of each row.
    pub fn deleted_row_sums(&self) -> Vec<T> {
        (0..self.order)
            .map(|i| {
                (0..self.order)
                    .filter(|&j| j != i)
                    .map(|j| self.get(i, j).norm())
                    .fold(T::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn max_relative_difference(&self, other: &Self) -> T {
        let scale = self
            .entries
            .iter()
            .chain(&other.entries)
            .map(|z| z.norm())
            .fold(T::one(), T::max);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm() / scale)
            .fold(T::zero(), T::max)
    }
}

/// Closed disk in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk<T> {
    pub center: Complex<T>,
    pub radius: T,
}

impl<T: Scalar> Disk<T> {
    pub fn contains(&self, z: Complex<T>, slack: T) -> bool {
        (z - self.center).norm() <= self.radius + slack
    }
}

/// Which deleted sums define the Gershgorin radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Row,
    Column,
}

/// Gershgorin disks of `m`: centered at the diagonal entries, with deleted
/// row or column sums as radii.
pub fn gershgorin_disks<T: Scalar>(m: &ComplexMatrix<T>, orientation: Orientation) -> Vec<Disk<T>> {
    let radii = match orientation {
        Orientation::Row => m.deleted_row_sums(),
        Orientation::Column => m.deleted_column_sums(),
    };
    m.diagonal()
        .into_iter()
        .zip(radii)
        .map(|(center, radius)| Disk { center, radius })
        .collect()
}

/// Companion matrix: ones on the subdiagonal, `-a_0 ... -a_{n-1}` down the
/// last column.
pub fn companion<T: Scalar>(p: &MonicPolynomial<T>) -> ComplexMatrix<T> {
    let n = p.degree();
    let mut m = ComplexMatrix::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, c(T::one(), T::zero()));
    }
    for (i, &a) in p.coeffs().iter().enumerate() {
        m.set(i, n - 1, -a);
    }
    m
}

/// `M_k(p)` filled from its closed-form band structure.
///
/// Column `j < n-k` holds `a_{n-k+1}, ..., a_{n-1}, 1` below a zero diagonal.
/// Column `n-k+m` holds `-a_0, ..., -a_{n-k}` starting at row `m`, so the last
/// `k` diagonal entries equal `-a_{n-k}`.
pub fn mk_structured<T: Scalar>(p: &MonicPolynomial<T>, k: usize) -> Result<ComplexMatrix<T>> {
    p.check_split_index(k)?;
    let n = p.degree();
    let mut m = ComplexMatrix::zeros(n);
    for j in 0..n - k {
        for t in 1..=k {
            m.set(j + t, j, p.coeff(n - k + t));
        }
    }
    for col in 0..k {
        let j = n - k + col;
        for s in 0..=n - k {
            m.set(col + s, j, -p.coeff(s));
        }
    }
    Ok(m)
}

/// `M_k(p)` by the recursion `M_1 = C`, `M_{j+1} = C M_j + a_{n-j} C`.
pub fn mk_direct<T: Scalar>(p: &MonicPolynomial<T>, k: usize) -> Result<ComplexMatrix<T>> {
    p.check_split_index(k)?;
    let n = p.degree();
    let cm = companion(p);
    let mut m = cm.clone();
    for j in 1..k {
        m = cm.mul(&m).add_scaled(&cm, p.coeff(n - j));
    }
    Ok(m)
}

/// The two Gershgorin column disks of `D_x^{-1} M_{n-k}(p) D_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPair<T> {
    /// Centered at 0; radius `P_{n-k}(x)`.
    pub inner: Disk<T>,
    /// Centered at `-a_k`; radius `mu(k, x)`.
    pub outer: Disk<T>,
    pub x: T,
}

impl<T: Scalar> DiskPair<T> {
    /// Strict separation of the two closed disks.
    pub fn disjoint(&self) -> bool {
        self.inner.radius + self.outer.radius < self.outer.center.norm()
    }

    pub fn contains(&self, z: Complex<T>, slack: T) -> bool {
        self.inner.contains(z, slack) || self.outer.contains(z, slack)
    }
}

/// Builds `D_x^{-1} M_{n-k}(p) D_x` explicitly and reads its column disks.
///
/// The first `k` columns (zero diagonal) share one deleted column sum and the
/// last `n-k` columns (diagonal `-a_k`) share another; a spread larger than
/// `1e-12` within either group is reported as an error.
pub fn scaled_gershgorin_disks<T: Scalar>(p: &MonicPolynomial<T>, k: usize, x: T) -> Result<DiskPair<T>> {
    p.check_split_index(k)?;
    if !(x > T::zero()) {
        return Err(Error::NonpositiveArgument(x.as_f64()));
    }
    let n = p.degree();
    let scaled = mk_structured(p, n - k)?.diagonal_similarity(x);
    let sums = scaled.deleted_column_sums();
    let group = |range: std::ops::Range<usize>| -> Result<T> {
        let first = sums[range.start];
        let spread = sums[range.clone()]
            .iter()
            .map(|&s| rel_diff(s, first))
            .fold(T::zero(), T::max);
        if spread > T::tol(1e-12) {
            return Err(Error::InconsistentColumnSums(spread.as_f64()));
        }
        Ok(first)
    };
    let radius_inner = group(0..k)?;
    let radius_outer = group(k..n)?;
    Ok(DiskPair {
        inner: Disk {
            center: c(T::zero(), T::zero()),
            radius: radius_inner,
        },
        outer: Disk {
            center: -p.coeff(k),
            radius: radius_outer,
        },
        x,
    })
}
