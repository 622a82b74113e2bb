//! Double-double arithmetic: an unevaluated sum of two `f64` carrying about
//! 31 significant decimal digits.
//!
//! The Euler-Maclaurin sums behind the level-r gamma functions cancel through
//! roughly 12 digits at level 16, which puts the shipped tolerances out of
//! reach of plain `f64`. This module supplies the few operations the kernels
//! need. Every transcendental here is checked in the unit tests against
//! 240-bit references frozen in `dd_tables.rs`.

use super::dd_tables as tables;

/// Error-free sum: returns `(s, e)` with `s = fl(a+b)` and `a + b = s + e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Like [`two_sum`] but requires `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

/// Double-double number. Invariant: `hi = fl(hi + lo)`, so the components do
/// not overlap and lexicographic comparison on `(hi, lo)` is numeric order.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact for `|x| < 2^62`; the library never builds larger integers.
    #[inline]
    pub fn from_i64(x: i64) -> Dd {
        let hi = x as f64;
        if hi.abs() < 9.007_199_254_740_992e15 {
            return Dd { hi, lo: 0.0 };
        }
        let rem = x.wrapping_sub(hi as i64) as f64;
        Dd::new(hi, rem)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact scaling by 2^k (no rounding while the components stay normal).
    #[inline]
    pub fn mul_pow2(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    #[inline]
    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn pi() -> Dd {
        Dd {
            hi: tables::PI.0,
            lo: tables::PI.1,
        }
    }

    fn frac_pi_2() -> Dd {
        Dd {
            hi: tables::FRAC_PI_2.0,
            lo: tables::FRAC_PI_2.1,
        }
    }

    fn ln_2() -> Dd {
        Dd {
            hi: tables::LN_2.0,
            lo: tables::LN_2.1,
        }
    }

    #[inline]
    fn inv_fact(k: usize) -> Dd {
        let (hi, lo) = tables::INV_FACT[k - 2];
        Dd { hi, lo }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        assert!(self.hi > 0.0, "sqrt of negative double-double");
        // Karp's method: one correction step from an f64 seed is exact to
        // O(eps^2) because the residual is formed in full precision.
        let x = self.hi.sqrt();
        let s = Dd::from_f64(x);
        let e = (self - s * s).hi / (2.0 * x);
        s + Dd::from_f64(e)
    }

    pub fn exp(self) -> Dd {
        if self.hi < -709.0 {
            return Dd::ZERO;
        }
        assert!(self.hi < 709.0, "exp overflow in double-double");
        // exp(x) = 2^m * exp(r)^(2^9) with r = (x - m ln 2) / 2^9 kept tiny,
        // so the Taylor tail below converges in a handful of terms.
        let m = (self.hi / tables::LN_2.0).round();
        let r = (self - Dd::ln_2().mul_f64(m)).mul_pow2(-9);
        // p = exp(r) - 1, summed to below the double-double noise floor.
        let mut pow = r * r;
        let mut p = r + pow.mul_pow2(-1);
        let mut k = 3usize;
        loop {
            pow = pow * r;
            let term = pow * Dd::inv_fact(k);
            p = p + term;
            if term.hi.abs() < 1e-40 || k >= 12 {
                break;
            }
            k += 1;
        }
        // Undo the nine halvings: (1+p)^2 - 1 = 2p + p^2.
        for _ in 0..9 {
            p = p.mul_pow2(1) + p * p;
        }
        (Dd::ONE + p).mul_pow2(m as i32)
    }

    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "ln of non-positive double-double");
        let u = self - Dd::ONE;
        if u.hi.abs() < 0.03125 {
            // Near 1 the Newton step below forms its correction against
            // values of size 1 and keeps only absolute accuracy; the atanh
            // series in z = (x-1)/(x+1) keeps relative accuracy instead.
            let z = u / (self + Dd::ONE);
            let z2 = z * z;
            let mut pow = z;
            let mut sum = z;
            let mut k = 1usize;
            loop {
                pow = pow * z2;
                k += 2;
                let term = pow / Dd::from_f64(k as f64);
                sum = sum + term;
                if term.hi.abs() < 1e-35 * sum.hi.abs() || k > 41 {
                    break;
                }
            }
            return sum.mul_pow2(1);
        }
        // One Newton step y -> y + x e^{-y} - 1 lifts the f64 seed to full
        // double-double accuracy.
        let y = Dd::from_f64(self.hi.ln());
        y + self * (-y).exp() - Dd::ONE
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        let k = (self.hi / tables::FRAC_PI_2.0).round();
        let r = self - Dd::frac_pi_2().mul_f64(k);
        let (s, c) = sincos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn atan2(self, x: Dd) -> Dd {
        let y = self;
        if y.hi == 0.0 && y.lo == 0.0 {
            return if x.hi >= 0.0 { Dd::ZERO } else { Dd::pi() };
        }
        if x.hi == 0.0 && x.lo == 0.0 {
            let h = Dd::frac_pi_2();
            return if y.hi > 0.0 { h } else { -h };
        }
        // Newton correction of the f64 seed: with z ~ atan2(y, x),
        // d/dz [y cos z - x sin z] = -(x cos z + y sin z), so one step reads
        // z + (y cos z - x sin z) / (x cos z + y sin z).
        let z = Dd::from_f64(y.to_f64().atan2(x.to_f64()));
        let (s, c) = z.sin_cos();
        z + (y * c - x * s) / (x * c + y * s)
    }
}

/// Taylor evaluation of `(sin r, cos r)` for `|r| <= pi/4`. The cosine comes
/// from `sqrt(1 - sin^2)`, which is safe because `cos r >= 0.7` there.
fn sincos_reduced(r: Dd) -> (Dd, Dd) {
    if r.hi == 0.0 && r.lo == 0.0 {
        return (Dd::ZERO, Dd::ONE);
    }
    let x2 = r * r;
    let mut pow = r;
    let mut sum = r;
    let mut k = 1usize;
    let mut negate = true;
    loop {
        pow = pow * x2;
        k += 2;
        let term = pow * Dd::inv_fact(k);
        sum = if negate { sum - term } else { sum + term };
        negate = !negate;
        if term.hi.abs() < 1e-36 || k >= 33 {
            break;
        }
    }
    let cos = (Dd::ONE - sum * sum).sqrt();
    (sum, cos)
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Dd { hi, lo }
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        // Three rounds of quotient refinement (the classic long-division
        // scheme for double-double).
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl std::fmt::Display for Dd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:e}{:+e}", self.hi, self.lo)
    }
}

#[cfg(test)]
mod tests {
    use super::super::dd_tables::vectors;
    use super::*;

    fn rel_err(got: Dd, hi: f64, lo: f64) -> f64 {
        let want = Dd::new(hi, lo);
        let diff = (got - want).to_f64().abs();
        let scale = want.to_f64().abs().max(1e-300);
        diff / scale
    }

    #[test]
    fn arithmetic_identities() {
        let a = Dd::from_f64(0.1) + Dd::from_f64(1e-25);
        let b = Dd::from_f64(7.3);
        // Addition is accurate to ~2^-104 of the operand scale, not exact.
        assert!(((a + b) - b - a).to_f64().abs() < 1e-31);
        let q = a / b;
        assert!((q * b - a).to_f64().abs() < 1e-31);
        assert!((a.sqrt() * a.sqrt() - a).to_f64().abs() < 1e-32);
        assert_eq!(Dd::from_i64(1 << 60).to_f64(), (1u64 << 60) as f64);
    }

    #[test]
    fn ordering_is_numeric() {
        let a = Dd::new(1.0, -1e-20);
        let b = Dd::new(1.0, 0.0);
        assert!(a < b);
        assert!(Dd::from_f64(-2.0) < Dd::from_f64(1.0));
    }

    #[test]
    fn exp_matches_references() {
        for &(x, hi, lo) in vectors::EXP.iter() {
            let e = rel_err(Dd::from_f64(x).exp(), hi, lo);
            assert!(e < 1e-29, "exp({x}): rel err {e:.2e}");
        }
    }

    #[test]
    fn ln_matches_references() {
        for &(x, hi, lo) in vectors::LN.iter() {
            let e = rel_err(Dd::from_f64(x).ln(), hi, lo);
            assert!(e < 1e-29, "ln({x}): rel err {e:.2e}");
        }
    }

    #[test]
    fn sin_cos_match_references() {
        for (&(x, shi, slo), &(_, chi, clo)) in vectors::SIN.iter().zip(vectors::COS.iter()) {
            let (s, c) = Dd::from_f64(x).sin_cos();
            // Near zeros of sin/cos only absolute accuracy is meaningful.
            let es = (s - Dd::new(shi, slo)).to_f64().abs();
            let ec = (c - Dd::new(chi, clo)).to_f64().abs();
            assert!(es < 1e-29, "sin({x}): abs err {es:.2e}");
            assert!(ec < 1e-29, "cos({x}): abs err {ec:.2e}");
        }
    }

    #[test]
    fn atan2_matches_references() {
        for &(y, x, hi, lo) in vectors::ATAN2.iter() {
            let e = rel_err(Dd::from_f64(y).atan2(Dd::from_f64(x)), hi, lo);
            assert!(e < 1e-29, "atan2({y},{x}): rel err {e:.2e}");
        }
    }

    #[test]
    fn sqrt_matches_references() {
        for &(x, hi, lo) in vectors::SQRT.iter() {
            let e = rel_err(Dd::from_f64(x).sqrt(), hi, lo);
            assert!(e < 1e-30, "sqrt({x}): rel err {e:.2e}");
        }
    }

}
