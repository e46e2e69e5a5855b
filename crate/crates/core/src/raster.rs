//! Pixel grids over rectangular windows of the complex plane and their
//! 4-connected components.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Axis-aligned rectangle `[re_min, re_max] x [im_min, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window<T> {
    pub re_min: T,
    pub re_max: T,
    pub im_min: T,
    pub im_max: T,
}

impl<T: Scalar> Window<T> {
    pub fn new(re_min: T, re_max: T, im_min: T, im_max: T) -> Result<Self> {
        let w = Self {
            re_min,
            re_max,
            im_min,
            im_max,
        };
        if !(re_max > re_min && im_max > im_min) || !(re_max - re_min).is_finite() || !(im_max - im_min).is_finite() {
            return Err(Error::WindowDegenerate);
        }
        Ok(w)
    }

    /// Square window of half-width `half` around `center`.
    pub fn square(center: Complex<T>, half: T) -> Result<Self> {
        Self::new(center.re - half, center.re + half, center.im - half, center.im + half)
    }

    pub fn width(&self) -> T {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> T {
        self.im_max - self.im_min
    }

    /// Center of pixel `(col, row)`; row 0 is the top (largest imaginary part).
    pub fn pixel_center(&self, col: usize, row: usize, resolution: usize) -> Complex<T> {
        let res = T::from_usize_lossy(resolution);
        let half = T::lit(0.5);
        let re = self.re_min + (T::from_usize_lossy(col) + half) * self.width() / res;
        let im = self.im_max - (T::from_usize_lossy(row) + half) * self.height() / res;
        c(re, im)
    }

    /// Pixel containing `z`, if inside the window.
    pub fn pixel_of(&self, z: Complex<T>, resolution: usize) -> Option<(usize, usize)> {
        let res = T::from_usize_lossy(resolution);
        let u = (z.re - self.re_min) / self.width() * res;
        let v = (self.im_max - z.im) / self.height() * res;
        if !(u >= T::zero() && v >= T::zero() && u < res && v < res) {
            return None;
        }
        Some((u.to_usize()?.min(resolution - 1), v.to_usize()?.min(resolution - 1)))
    }

    pub fn pixel_diagonal(&self, resolution: usize) -> T {
        let res = T::from_usize_lossy(resolution);
        (self.width() / res).hypot(self.height() / res)
    }

    pub fn pixel_area(&self, resolution: usize) -> T {
        let res = T::from_usize_lossy(resolution);
        self.width() * self.height() / (res * res)
    }
}

/// Square boolean grid, row-major, row 0 at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub resolution: usize,
    pub cells: Vec<bool>,
}

impl Grid {
    /// Samples `member` at every pixel center.
    pub fn sample<T: Scalar>(
        window: &Window<T>,
        resolution: usize,
        member: impl Fn(Complex<T>) -> bool,
    ) -> Self {
        let mut cells = Vec::with_capacity(resolution * resolution);
        for row in 0..resolution {
            for col in 0..resolution {
                cells.push(member(window.pixel_center(col, row, resolution)));
            }
        }
        Self { resolution, cells }
    }

    pub fn get(&self, col: usize, row: usize) -> bool {
        self.cells[row * self.resolution + col]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn fraction(&self) -> f64 {
        self.count() as f64 / self.cells.len() as f64
    }

    /// Cell-wise conjunction.
    pub fn and(&self, other: &Grid) -> Grid {
        Grid {
            resolution: self.resolution,
            cells: self.cells.iter().zip(&other.cells).map(|(a, b)| *a && *b).collect(),
        }
    }

    /// Cell-wise disjunction.
    pub fn or(&self, other: &Grid) -> Grid {
        Grid {
            resolution: self.resolution,
            cells: self.cells.iter().zip(&other.cells).map(|(a, b)| *a || *b).collect(),
        }
    }

    /// Member cells with at least one 4-neighbor outside the set.
    pub fn boundary(&self) -> Grid {
        let n = self.resolution;
        let mut cells = vec![false; n * n];
        for row in 0..n {
            for col in 0..n {
                if !self.get(col, row) {
                    continue;
                }
                let edge = col == 0 || row == 0 || col + 1 == n || row + 1 == n;
                cells[row * n + col] = edge
                    || !self.get(col - 1, row)
                    || !self.get(col + 1, row)
                    || !self.get(col, row - 1)
                    || !self.get(col, row + 1);
            }
        }
        Grid { resolution: n, cells }
    }
}

/// Component labels of a grid under 4-connectivity.
///
/// Labels are assigned in row-major scan order, so component `i` is the one
/// whose smallest grid index is the `i`-th smallest among components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub resolution: usize,
    pub labels: Vec<Option<usize>>,
    pub count: usize,
}

impl Labels {
    pub fn get(&self, col: usize, row: usize) -> Option<usize> {
        self.labels[row * self.resolution + col]
    }
}

pub fn label_components(grid: &Grid) -> Labels {
    let n = grid.resolution;
    let mut labels: Vec<Option<usize>> = vec![None; n * n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n * n {
        if !grid.cells[start] || labels[start].is_some() {
            continue;
        }
        labels[start] = Some(count);
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (row, col) = (idx / n, idx % n);
            let mut visit = |r: usize, c: usize| {
                let j = r * n + c;
                if grid.cells[j] && labels[j].is_none() {
                    labels[j] = Some(count);
                    stack.push(j);
                }
            };
            if col > 0 {
                visit(row, col - 1);
            }
            if col + 1 < n {
                visit(row, col + 1);
            }
            if row > 0 {
                visit(row - 1, col);
            }
            if row + 1 < n {
                visit(row + 1, col);
            }
        }
        count += 1;
    }
    Labels {
        resolution: n,
        labels,
        count,
    }
}
