//! Scalar abstraction over the two working precisions.
//!
//! Every kernel is written once against [`Real`] and instantiated with `f64`
//! (fast path, ~15 digits) or [`Dd`](super::dd::Dd) (extended path, ~31
//! digits). The extended path is the default: the level-r gamma sums lose up
//! to 12 digits to cancellation before the identities under test are down at
//! 1e-8.

use super::dd::Dd;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub(crate) trait Real:
    Copy
    + Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn from_i64(x: i64) -> Self;
    fn to_f64(self) -> f64;
    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn atan2(self, x: Self) -> Self;
    fn mul_pow2(self, k: i32) -> Self;
    fn pi() -> Self;
}

impl Real for f64 {
    fn from_f64(x: f64) -> f64 {
        x
    }
    fn from_i64(x: i64) -> f64 {
        x as f64
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn exp(self) -> f64 {
        f64::exp(self)
    }
    fn ln(self) -> f64 {
        f64::ln(self)
    }
    fn sin_cos(self) -> (f64, f64) {
        f64::sin_cos(self)
    }
    fn atan2(self, x: f64) -> f64 {
        f64::atan2(self, x)
    }
    fn mul_pow2(self, k: i32) -> f64 {
        self * 2f64.powi(k)
    }
    fn pi() -> f64 {
        std::f64::consts::PI
    }
}

impl Real for Dd {
    fn from_f64(x: f64) -> Dd {
        Dd::from_f64(x)
    }
    fn from_i64(x: i64) -> Dd {
        Dd::from_i64(x)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn sqrt(self) -> Dd {
        Dd::sqrt(self)
    }
    fn exp(self) -> Dd {
        Dd::exp(self)
    }
    fn ln(self) -> Dd {
        Dd::ln(self)
    }
    fn sin_cos(self) -> (Dd, Dd) {
        Dd::sin_cos(self)
    }
    fn atan2(self, x: Dd) -> Dd {
        Dd::atan2(self, x)
    }
    fn mul_pow2(self, k: i32) -> Dd {
        Dd::mul_pow2(self, k)
    }
    fn pi() -> Dd {
        Dd::pi()
    }
}
