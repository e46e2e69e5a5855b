//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable in scalar type")
    }

    /// Widens to `f64` for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }

    /// A tolerance stated for `f64`, widened in proportion to this type's
    /// machine epsilon when it is coarser than `f64`.
    fn tol(v_f64: f64) -> Self {
        let v = Self::lit(v_f64);
        let ratio = Self::epsilon() / Self::lit(f64::EPSILON);
        if ratio > Self::one() {
            v * ratio
        } else {
            v
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over a [`Scalar`].
pub type C<T> = Complex<T>;

pub(crate) fn c<T: Scalar>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

pub(crate) fn real<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Relative difference `|a - b| / max(1, |a|, |b|)`.
pub fn rel_diff<T: Scalar>(a: T, b: T) -> T {
    let scale = T::one().max(a.abs()).max(b.abs());
    (a - b).abs() / scale
}
