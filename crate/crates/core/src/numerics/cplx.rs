//! Minimal complex arithmetic over a [`Real`] scalar.
//!
//! `num_complex::Complex` wants `Float` for its transcendentals, which the
//! double-double type does not implement; this small type covers exactly what
//! the kernels use. Logs and powers take principal branches.

use super::real::Real;
use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Cx<T> {
    pub fn new(re: T, im: T) -> Cx<T> {
        Cx { re, im }
    }

    pub fn zero() -> Cx<T> {
        Cx::new(T::zero(), T::zero())
    }

    pub fn one() -> Cx<T> {
        Cx::new(T::one(), T::zero())
    }

    pub fn real(re: T) -> Cx<T> {
        Cx::new(re, T::zero())
    }

    pub fn from_i64(x: i64) -> Cx<T> {
        Cx::real(T::from_i64(x))
    }

    pub fn from_c64(z: Complex64) -> Cx<T> {
        Cx::new(T::from_f64(z.re), T::from_f64(z.im))
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, k: T) -> Cx<T> {
        Cx::new(self.re * k, self.im * k)
    }

    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn arg(self) -> T {
        self.im.atan2(self.re)
    }

    pub fn exp(self) -> Cx<T> {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cx::new(m * c, m * s)
    }

    /// Principal logarithm; requires `self != 0`.
    pub fn ln(self) -> Cx<T> {
        Cx::new(self.norm_sqr().ln().mul_pow2(-1), self.arg())
    }

    /// sin z = sin x cosh y + i cos x sinh y.
    pub fn sin(self) -> Cx<T> {
        let (s, c) = self.re.sin_cos();
        let ey = self.im.exp();
        let eyi = T::one() / ey;
        let cosh = (ey + eyi).mul_pow2(-1);
        let sinh = (ey - eyi).mul_pow2(-1);
        Cx::new(s * cosh, c * sinh)
    }
}

impl<T: Real> Add for Cx<T> {
    type Output = Cx<T>;
    fn add(self, b: Cx<T>) -> Cx<T> {
        Cx::new(self.re + b.re, self.im + b.im)
    }
}

impl<T: Real> Sub for Cx<T> {
    type Output = Cx<T>;
    fn sub(self, b: Cx<T>) -> Cx<T> {
        Cx::new(self.re - b.re, self.im - b.im)
    }
}

impl<T: Real> Mul for Cx<T> {
    type Output = Cx<T>;
    fn mul(self, b: Cx<T>) -> Cx<T> {
        Cx::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl<T: Real> Div for Cx<T> {
    type Output = Cx<T>;
    fn div(self, b: Cx<T>) -> Cx<T> {
        let d = b.norm_sqr();
        Cx::new(
            (self.re * b.re + self.im * b.im) / d,
            (self.im * b.re - self.re * b.im) / d,
        )
    }
}

impl<T: Real> Neg for Cx<T> {
    type Output = Cx<T>;
    fn neg(self) -> Cx<T> {
        Cx::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::super::dd::Dd;
    use super::*;

    fn close(a: Cx<Dd>, b: Complex64, tol: f64) -> bool {
        (a.to_c64() - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn log_exp_roundtrip() {
        let z = Cx::<Dd>::new(Dd::from_f64(2.5), Dd::from_f64(-1.25));
        let back = z.ln().exp();
        assert!((back - z).abs().to_f64() < 1e-30);
    }

    #[test]
    fn sin_against_f64() {
        let z = Cx::<Dd>::new(Dd::from_f64(0.9), Dd::from_f64(1.7));
        let want = Complex64::new(0.9, 1.7).sin();
        assert!(close(z.sin(), want, 1e-14));
        let neg = Cx::<Dd>::new(Dd::from_f64(-0.9), Dd::from_f64(-1.7));
        assert!((z.sin() + neg.sin()).abs().to_f64() < 1e-30);
    }
}
