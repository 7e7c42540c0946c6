//! Scalar types the bounded dual simplex can run over.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arithmetic used by [`super::lp::BoundedLp`]. Floating point instances
/// compare against a tolerance; exact instances compare exactly.
pub trait LpScalar: Clone + std::fmt::Debug + PartialOrd {
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// `true` when the value is zero up to the pivot tolerance.
    fn is_negligible(&self) -> bool;
    /// Feasibility tolerance for a value of the given magnitude.
    fn feas_tol(scale: &Self) -> Self;
    /// Strictly positive beyond the pivot tolerance.
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    /// In-place `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
}

const PIVOT_TOL: f64 = 1e-11;

impl LpScalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::INFINITY)
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negligible(&self) -> bool {
        f64::abs(*self) < PIVOT_TOL
    }
    fn feas_tol(scale: &Self) -> Self {
        1e-9 * f64::max(1.0, f64::abs(*scale))
    }
    fn is_pos(&self) -> bool {
        *self > PIVOT_TOL
    }
    fn is_neg(&self) -> bool {
        *self < -PIVOT_TOL
    }
    #[inline]
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

impl LpScalar for BigRational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn feas_tol(_scale: &Self) -> Self {
        Zero::zero()
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= a * b;
        }
    }
}
