//! The scalar capability set shared by the floating-point and exact backends.
//!
//! Every operator routine in this crate is generic over [`Scalar`], so the
//! same teleportation pipeline runs on `Complex64` for sweeps and on
//! [`PolyP`](crate::exact::PolyP) to obtain the output state as exact
//! polynomials in the noise probability.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Ring operations plus complex conjugation.
///
/// Equality through [`PartialEq`] is exact. Backends that carry rounding
/// error also answer [`Scalar::approx_eq`] with a tolerance; exact backends
/// ignore the tolerance.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    /// The real rational constant `num / den`.
    fn from_ratio(num: i64, den: u64) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// The value as a probability, when it is a concrete real number.
    ///
    /// Returns `None` for symbolic values and for numbers with an imaginary
    /// part, which cannot be probabilities at all.
    fn as_real(&self) -> Option<f64>;

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    /// `|x|^2` as a scalar of the same backend.
    fn norm_sqr(&self) -> Self {
        self.mul_ref(&self.conj())
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn from_ratio(num: i64, den: u64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }

    fn as_real(&self) -> Option<f64> {
        (self.im == 0.0).then_some(self.re)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}
