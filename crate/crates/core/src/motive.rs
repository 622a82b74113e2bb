//! Integer Laurent polynomials acting as exponent twists.

use crate::sign::Sign;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::str::FromStr;

/// An integer Laurent polynomial `sum_k a(k) x^k` with finite support.
///
/// Invariant: stored coefficients are nonzero; the zero polynomial is the
/// empty map. Two values are equal iff they are the same polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TateMotive {
    coeffs: BTreeMap<i64, BigInt>,
}

/// Outcome of testing `f(x^{-1}) = C x^{-D} f(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutomorphyStatus {
    /// The zero polynomial satisfies the identity for every `(C, D)`.
    Degenerate,
    Automorphic(Automorphy),
    NotAutomorphic,
}

/// The unique `(C, D)` pair of an automorphic nonzero polynomial.
///
/// Comparing support endpoints forces `D = min_deg + max_deg`, and matching
/// leading coefficients forces `C^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Automorphy {
    pub sign: Sign,
    pub degree: i64,
}

/// Multiplicity of the zero of `f` at `x = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingOrder {
    Finite(u32),
    /// The zero polynomial vanishes to every order.
    Infinite,
}

impl VanishingOrder {
    pub fn at_least(self, m: u32) -> bool {
        match self {
            VanishingOrder::Finite(n) => n >= m,
            VanishingOrder::Infinite => true,
        }
    }
}

impl TateMotive {
    pub fn zero() -> TateMotive {
        TateMotive::default()
    }

    pub fn one() -> TateMotive {
        TateMotive::monomial(0, 1)
    }

    /// The polynomial `c x^k`.
    pub fn monomial(k: i64, c: impl Into<BigInt>) -> TateMotive {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        TateMotive { coeffs }
    }

    /// Sums duplicate exponents and drops zero totals.
    pub fn from_coeffs<I, C>(terms: I) -> TateMotive
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = TateMotive::zero();
        for (k, c) in terms {
            out.add_term(k, &c.into());
        }
        out
    }

    fn add_term(&mut self, k: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k` (zero when absent).
    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_deg(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_deg(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Multiplication by `x^d`.
    pub fn shift(&self, d: i64) -> TateMotive {
        TateMotive {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k.checked_add(d).expect("exponent overflow"), c.clone()))
                .collect(),
        }
    }

    /// The substitution `x -> x^{-1}`.
    pub fn reverse(&self) -> TateMotive {
        TateMotive {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k.checked_neg().expect("exponent overflow"), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> TateMotive {
        if c.is_zero() {
            return TateMotive::zero();
        }
        TateMotive {
            coeffs: self.coeffs.iter().map(|(&k, a)| (k, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> TateMotive {
        let mut acc = TateMotive::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `f(1)`, the sum of the coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Exact `m`-th derivative at `x = 1`:
    /// `sum_k a(k) k (k-1) ... (k-m+1)` (`m = 0` gives `f(1)`).
    pub fn derivative_at_one(&self, m: u32) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&k, a)| {
                let mut c = a.clone();
                for i in 0..i64::from(m) {
                    c *= BigInt::from(k - i);
                }
                c
            })
            .sum()
    }

    /// Tests `f(x^{-1}) = C x^{-D} f(x)` by mirroring the support around its
    /// midpoint; `D` is forced, and each mirrored pair must agree up to one
    /// global sign.
    pub fn detect_automorphy(&self) -> AutomorphyStatus {
        if self.is_zero() {
            return AutomorphyStatus::Degenerate;
        }
        let degree = self.min_deg().unwrap() + self.max_deg().unwrap();
        let mut sign: Option<Sign> = None;
        for (k, a) in self.terms() {
            let mirrored = self.coeff(degree - k);
            let here = if *a == mirrored {
                Sign::Plus
            } else if *a == -&mirrored {
                Sign::Minus
            } else {
                return AutomorphyStatus::NotAutomorphic;
            };
            match sign {
                None => sign = Some(here),
                Some(s) if s != here => return AutomorphyStatus::NotAutomorphic,
                Some(_) => {}
            }
        }
        AutomorphyStatus::Automorphic(Automorphy {
            sign: sign.unwrap(),
            degree,
        })
    }

    /// Quotient by `x - 1`, valid only when `f(1) = 0`; the quotient
    /// coefficients are the negated prefix sums. Runs over the full degree
    /// span, dense.
    fn divided_by_x_minus_one(&self) -> TateMotive {
        debug_assert!(self.eval_one().is_zero());
        let (lo, hi) = (self.min_deg().unwrap(), self.max_deg().unwrap());
        let mut acc = BigInt::zero();
        let mut coeffs = BTreeMap::new();
        for m in lo..hi {
            if let Some(a) = self.coeffs.get(&m) {
                acc -= a;
            }
            if !acc.is_zero() {
                coeffs.insert(m, acc.clone());
            }
        }
        TateMotive { coeffs }
    }

    /// Multiplicity of the zero at `x = 1`, by repeated exact division by
    /// `x - 1`.
    pub fn vanishing_order_at_one(&self) -> VanishingOrder {
        if self.is_zero() {
            return VanishingOrder::Infinite;
        }
        let mut g = self.clone();
        let mut order = 0u32;
        while g.eval_one().is_zero() {
            g = g.divided_by_x_minus_one();
            order += 1;
        }
        VanishingOrder::Finite(order)
    }

    /// Exact quotient `self / g` over the integers, or `None` when `g` does
    /// not divide `self` (including any non-integer intermediate quotient).
    ///
    /// Panics when `g` is zero.
    pub fn divide_exact(&self, g: &TateMotive) -> Option<TateMotive> {
        assert!(!g.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(TateMotive::zero());
        }
        // Shift both to ordinary polynomials; an exact Laurent quotient then
        // has min degree 0, so classic descending long division applies.
        let (flo, glo) = (self.min_deg().unwrap(), g.min_deg().unwrap());
        let mut rem = self.shift(-flo);
        let gp = g.shift(-glo);
        let gdeg = gp.max_deg().unwrap();
        let glead = gp.coeff(gdeg);
        let mut q = TateMotive::zero();
        while !rem.is_zero() {
            let rdeg = rem.max_deg().unwrap();
            if rdeg < gdeg {
                return None;
            }
            let (c, r) = rem.coeff(rdeg).div_rem(&glead);
            if !r.is_zero() {
                return None;
            }
            let term = TateMotive::monomial(rdeg - gdeg, c);
            rem = &rem - &(&gp * &term);
            q = &q + &term;
        }
        Some(q.shift(flo - glo))
    }

    /// The unique `(Q, c)` with `f = (1 - x^{-1}) Q + c`; necessarily
    /// `c = f(1)`, and `Q` is the suffix-sum transform of `f - c`.
    pub fn split_one(&self) -> (TateMotive, BigInt) {
        let c = self.eval_one();
        let mut t = self.clone();
        t.add_term(0, &(-&c));
        let mut coeffs = BTreeMap::new();
        if let (Some(lo), Some(hi)) = (t.min_deg(), t.max_deg()) {
            let mut acc = BigInt::zero();
            for m in (lo..=hi).rev() {
                if let Some(a) = t.coeffs.get(&m) {
                    acc += a;
                }
                if !acc.is_zero() {
                    coeffs.insert(m, acc.clone());
                }
            }
        }
        (TateMotive { coeffs }, c)
    }

    /// `(x-1)^r h(x) + (-1)^r (x^{-1}-1)^r h(x^{-1})`.
    ///
    /// A nonzero result is automorphic with sign `(-1)^r` and degree 0, and
    /// vanishes at `x = 1` to order at least `r`.
    pub fn symmetrize(h: &TateMotive, r: u32) -> TateMotive {
        let x_minus_one = &TateMotive::monomial(1, 1) - &TateMotive::one();
        let a = &x_minus_one.pow(r) * h;
        let b = a.reverse();
        if r.is_multiple_of(2) {
            &a + &b
        } else {
            &a - &b
        }
    }
}

impl std::ops::Add for &TateMotive {
    type Output = TateMotive;
    fn add(self, rhs: &TateMotive) -> TateMotive {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl std::ops::Sub for &TateMotive {
    type Output = TateMotive;
    fn sub(self, rhs: &TateMotive) -> TateMotive {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, &-c);
        }
        out
    }
}

impl std::ops::Neg for &TateMotive {
    type Output = TateMotive;
    fn neg(self) -> TateMotive {
        TateMotive {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl std::ops::Mul for &TateMotive {
    type Output = TateMotive;
    fn mul(self, rhs: &TateMotive) -> TateMotive {
        let mut out = TateMotive::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i.checked_add(j).expect("exponent overflow"), &(a * b));
            }
        }
        out
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl std::ops::$trait for TateMotive {
            type Output = TateMotive;
            fn $method(self, rhs: TateMotive) -> TateMotive {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_owned_ops!(Add::add, Sub::sub, Mul::mul);

impl std::fmt::Display for TateMotive {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        use num_traits::Signed;
        for (i, (&k, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Parse failure with a 1-based character position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct MotiveParseError {
    pub column: usize,
    pub message: String,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    len: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Cursor<'a> {
        Cursor {
            chars: s.char_indices().peekable(),
            len: s.chars().count(),
            col: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next().map(|(_, c)| c);
        if c.is_some() {
            self.col += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err<T>(&mut self, message: impl Into<String>) -> Result<T, MotiveParseError> {
        let column = if self.peek().is_some() {
            self.col
        } else {
            self.len + 1
        };
        Err(MotiveParseError {
            column,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().unwrap());
        }
        s
    }
}

impl FromStr for TateMotive {
    type Err = MotiveParseError;

    /// Accepts sums of terms `c`, `x`, `c x^k`, `c*x^k` with optional
    /// whitespace; exponents are signed integers. Duplicate exponents sum.
    fn from_str(s: &str) -> Result<TateMotive, MotiveParseError> {
        let mut cur = Cursor::new(s);
        let mut out = TateMotive::zero();
        cur.skip_ws();
        if cur.peek().is_none() {
            return cur.err("empty input");
        }
        let mut first = true;
        loop {
            let negative = match cur.peek() {
                Some('+') => {
                    cur.bump();
                    false
                }
                Some('-') => {
                    cur.bump();
                    true
                }
                Some(_) if first => false,
                Some(_) => return cur.err("expected '+', '-', or end of input"),
                None => break,
            };
            cur.skip_ws();
            let (k, c) = parse_term(&mut cur)?;
            out.add_term(k, &if negative { -c } else { c });
            first = false;
            cur.skip_ws();
            if cur.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }
}

fn parse_term(cur: &mut Cursor) -> Result<(i64, BigInt), MotiveParseError> {
    let coeff = match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let c: BigInt = cur.digits().parse().unwrap();
            cur.skip_ws();
            if cur.peek() == Some('*') {
                cur.bump();
                cur.skip_ws();
                if cur.peek() != Some('x') {
                    return cur.err("expected 'x' after '*'");
                }
            }
            Some(c)
        }
        Some('x') => None,
        Some(_) => return cur.err("expected a coefficient or 'x'"),
        None => return cur.err("expected a term"),
    };
    if cur.peek() != Some('x') {
        // Bare integer constant.
        return Ok((0, coeff.unwrap()));
    }
    cur.bump();
    let k = if cur.peek() == Some('^') {
        cur.bump();
        let negative = if cur.peek() == Some('-') {
            cur.bump();
            true
        } else {
            false
        };
        let digits = cur.digits();
        if digits.is_empty() {
            return cur.err("expected an integer exponent after '^'");
        }
        let Ok(mag) = digits.parse::<i64>() else {
            return cur.err("exponent out of range");
        };
        if negative {
            -mag
        } else {
            mag
        }
    } else {
        1
    };
    Ok((k, coeff.unwrap_or_else(BigInt::one)))
}

/// Full-precision JSON number for an integer of any size.
pub(crate) fn bigint_number(c: &BigInt) -> serde_json::Number {
    serde_json::from_str(&c.to_string()).expect("a decimal integer is a valid JSON number")
}

impl serde::Serialize for TateMotive {
    /// A JSON object keyed by exponent, e.g. `{"-1": 3, "2": -12}`, with
    /// full-precision integer values.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (k, c) in &self.coeffs {
            map.serialize_entry(&k.to_string(), &bigint_number(c))?;
        }
        map.end()
    }
}

impl<'de> serde::Deserialize<'de> for TateMotive {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<TateMotive, D::Error> {
        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = TateMotive;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut access: A,
            ) -> Result<TateMotive, A::Error> {
                use serde::de::Error;
                let mut out = TateMotive::zero();
                while let Some((k, n)) = access.next_entry::<String, serde_json::Number>()? {
                    let k: i64 = k
                        .parse()
                        .map_err(|_| A::Error::custom(format!("invalid exponent {k:?}")))?;
                    let c: BigInt = n.to_string().parse().map_err(|_| {
                        A::Error::custom(format!("coefficient {n} is not an integer"))
                    })?;
                    out.add_term(k, &c);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(terms: &[(i64, i64)]) -> TateMotive {
        TateMotive::from_coeffs(terms.iter().copied())
    }

    #[test]
    fn convolution_by_hand() {
        // (x - 1)(x^-1 + 2) = 1 + 2x - x^-1 - 2 = 2x - 1 - x^-1.
        let p = &m(&[(1, 1), (0, -1)]) * &m(&[(-1, 1), (0, 2)]);
        assert_eq!(p, m(&[(1, 2), (0, -1), (-1, -1)]));
        assert_eq!(p.eval_one(), BigInt::zero());
        assert_eq!(p.derivative_at_one(0), BigInt::zero());
        assert_eq!(p.derivative_at_one(1), BigInt::from(3));
        // f''(1) = sum a(k) k(k-1): 2*1*0 - 0 - 1*(-1)(-2) = -2.
        assert_eq!(p.derivative_at_one(2), BigInt::from(-2));
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let p = m(&[(2, 3), (2, -3), (0, 1)]);
        assert_eq!(p, TateMotive::one());
        assert_eq!(p.term_count(), 1);
        assert!(m(&[(5, 0)]).is_zero());
    }

    #[test]
    fn automorphy_of_small_cases() {
        // Palindromic around degree 2: x^2 + 3x + 1.
        let p = m(&[(2, 1), (1, 3), (0, 1)]);
        assert_eq!(
            p.detect_automorphy(),
            AutomorphyStatus::Automorphic(Automorphy {
                sign: Sign::Plus,
                degree: 2
            })
        );
        // Antisymmetric: x - x^-1.
        let p = m(&[(1, 1), (-1, -1)]);
        assert_eq!(
            p.detect_automorphy(),
            AutomorphyStatus::Automorphic(Automorphy {
                sign: Sign::Minus,
                degree: 0
            })
        );
        assert_eq!(TateMotive::zero().detect_automorphy(), AutomorphyStatus::Degenerate);
        assert_eq!(
            m(&[(1, 1), (0, 2)]).detect_automorphy(),
            AutomorphyStatus::NotAutomorphic
        );
        // Mirror exponent missing entirely.
        assert_eq!(
            m(&[(3, 1), (0, 1), (-3, -1)]).detect_automorphy(),
            AutomorphyStatus::NotAutomorphic
        );
    }

    #[test]
    fn vanishing_order_examples() {
        let x_minus_one = m(&[(1, 1), (0, -1)]);
        let f = &x_minus_one.pow(3) * &m(&[(0, 2), (1, 1)]);
        assert_eq!(f.vanishing_order_at_one(), VanishingOrder::Finite(3));
        assert_eq!(
            m(&[(4, 7)]).vanishing_order_at_one(),
            VanishingOrder::Finite(0)
        );
        assert_eq!(
            TateMotive::zero().vanishing_order_at_one(),
            VanishingOrder::Infinite
        );
        assert!(VanishingOrder::Infinite.at_least(1_000_000));
    }

    #[test]
    fn divide_exact_rejects_non_divisors() {
        let f = m(&[(2, 1), (0, -1)]); // x^2 - 1
        assert_eq!(
            f.divide_exact(&m(&[(1, 1), (0, -1)])),
            Some(m(&[(1, 1), (0, 1)]))
        );
        assert_eq!(f.divide_exact(&m(&[(1, 1), (0, -2)])), None);
        // Leading coefficient divides but a later step fails.
        assert_eq!(m(&[(2, 1), (0, 1)]).divide_exact(&m(&[(1, 2), (0, 1)])), None);
        // Integer-content failure: 2x / 3.
        assert_eq!(m(&[(1, 2)]).divide_exact(&m(&[(0, 3)])), None);
        // Laurent shifts are handled.
        let g = m(&[(-2, 3), (0, 6)]);
        let q = m(&[(5, -4), (3, 1)]);
        assert_eq!((&g * &q).divide_exact(&g), Some(q));
        // (x - 1) and (1 - x^-1) differ by a unit: division by either must
        // succeed on the same inputs.
        let f = m(&[(2, 1), (0, -1)]);
        let by_xm1 = f.divide_exact(&m(&[(1, 1), (0, -1)])).unwrap();
        let by_unit = f.divide_exact(&m(&[(0, 1), (-1, -1)])).unwrap();
        assert_eq!(by_unit, by_xm1.shift(1));
    }

    #[test]
    #[should_panic(expected = "zero polynomial")]
    fn divide_by_zero_panics() {
        let _ = TateMotive::one().divide_exact(&TateMotive::zero());
    }

    #[test]
    fn split_one_by_hand() {
        // f = 3x^2 - 1: c = 2, Q = 3x^2 + 3x (check (1 - x^-1)Q = 3x^2 - 3).
        let f = m(&[(2, 3), (0, -1)]);
        let (q, c) = f.split_one();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(q, m(&[(2, 3), (1, 3)]));
        let one_minus = m(&[(0, 1), (-1, -1)]);
        assert_eq!(&(&one_minus * &q) + &TateMotive::monomial(0, c), f);
    }

    #[test]
    fn display_formatting() {
        assert_eq!(TateMotive::zero().to_string(), "0");
        assert_eq!(m(&[(0, -1)]).to_string(), "-1");
        assert_eq!(
            m(&[(3, 1), (1, -3), (0, 2), (-2, -1)]).to_string(),
            "x^3 - 3x + 2 - x^-2"
        );
        assert_eq!(m(&[(1, -1), (-1, 12)]).to_string(), "-x + 12x^-1");
    }

    #[test]
    fn parser_accepts_common_forms() {
        let want = m(&[(2, 3), (0, -1)]);
        for s in ["3x^2 - 1", "3*x^2-1", " + 3 * x^2 - 1 ", "-1 + x^2 + 2x^2"] {
            assert_eq!(s.parse::<TateMotive>().unwrap(), want, "input {s:?}");
        }
        assert_eq!("0".parse::<TateMotive>().unwrap(), TateMotive::zero());
        assert_eq!("x".parse::<TateMotive>().unwrap(), m(&[(1, 1)]));
        assert_eq!("-x^-3".parse::<TateMotive>().unwrap(), m(&[(-3, -1)]));
        assert_eq!(
            "12345678901234567890x^-1".parse::<TateMotive>().unwrap(),
            TateMotive::monomial(-1, "12345678901234567890".parse::<BigInt>().unwrap())
        );
    }

    #[test]
    fn parser_errors_carry_columns() {
        let e = "3x^".parse::<TateMotive>().unwrap_err();
        assert_eq!(e.column, 4);
        let e = "2 + * 5".parse::<TateMotive>().unwrap_err();
        assert_eq!(e.column, 5);
        let e = "".parse::<TateMotive>().unwrap_err();
        assert_eq!(e.column, 1);
        let e = "x^1y".parse::<TateMotive>().unwrap_err();
        assert_eq!(e.column, 4);
        assert!(e.to_string().starts_with("column 4:"));
    }

    #[test]
    fn json_round_trip_and_shape() {
        let f = m(&[(2, 1), (0, -3), (-1, 2)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"-1":2,"0":-3,"2":1}"#);
        assert_eq!(serde_json::from_str::<TateMotive>(&s).unwrap(), f);
        // Coefficients beyond u64/i64 survive the trip.
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let f = TateMotive::monomial(7, big);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"7":123456789012345678901234567890}"#);
        assert_eq!(serde_json::from_str::<TateMotive>(&s).unwrap(), f);
        assert!(serde_json::from_str::<TateMotive>(r#"{"0":1.5}"#).is_err());
        assert!(serde_json::from_str::<TateMotive>(r#"{"a":1}"#).is_err());
    }

    fn arb_motive() -> impl Strategy<Value = TateMotive> {
        proptest::collection::vec(((-6i64..=6), (-9i64..=9)), 0..6)
            .prop_map(TateMotive::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_motive(), b in arb_motive(), c in arb_motive()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn reverse_is_an_involutive_homomorphism(a in arb_motive(), b in arb_motive()) {
            prop_assert_eq!(a.reverse().reverse(), a.clone());
            prop_assert_eq!((&a * &b).reverse(), &a.reverse() * &b.reverse());
            prop_assert_eq!(a.reverse().eval_one(), a.eval_one());
        }

        #[test]
        fn detected_automorphy_satisfies_the_identity(f in arb_motive(), t in -3i64..=3) {
            // Random inputs are rarely automorphic, so also exercise
            // constructed symmetric and antisymmetric shifts.
            let plus = (&f + &f.reverse()).shift(t);
            let minus = (&f - &f.reverse()).shift(t);
            for g in [f, plus, minus] {
                if let AutomorphyStatus::Automorphic(a) = g.detect_automorphy() {
                    let rhs = g.shift(-a.degree).scale(&a.sign.as_i8().into());
                    prop_assert_eq!(g.reverse(), rhs);
                }
            }
        }

        #[test]
        fn exact_division_round_trips(f in arb_motive(), g in arb_motive()) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&f * &g).divide_exact(&g), Some(f));
        }

        #[test]
        fn vanishing_order_matches_derivative_criterion(f in arb_motive()) {
            // Repeated exact division against the falling-factorial sums:
            // two independent characterizations of the order at 1.
            prop_assume!(!f.is_zero());
            let VanishingOrder::Finite(ord) = f.vanishing_order_at_one() else {
                unreachable!("nonzero polynomial")
            };
            for j in 0..ord {
                prop_assert_eq!(f.derivative_at_one(j), BigInt::zero());
            }
            prop_assert_ne!(f.derivative_at_one(ord), BigInt::zero());
        }

        #[test]
        fn split_one_reconstructs(f in arb_motive()) {
            let (q, c) = f.split_one();
            let one_minus = TateMotive::from_coeffs([(0i64, 1i64), (-1, -1)]);
            prop_assert_eq!(&(&one_minus * &q) + &TateMotive::monomial(0, c), f);
        }

        #[test]
        fn symmetrize_postconditions(h in arb_motive(), r in 0u32..6) {
            let f = TateMotive::symmetrize(&h, r);
            if f.is_zero() {
                prop_assert_eq!(f.detect_automorphy(), AutomorphyStatus::Degenerate);
            } else {
                let sign = if r % 2 == 0 { Sign::Plus } else { Sign::Minus };
                prop_assert_eq!(
                    f.detect_automorphy(),
                    AutomorphyStatus::Automorphic(Automorphy { sign, degree: 0 })
                );
                prop_assert!(f.vanishing_order_at_one().at_least(r));
            }
        }

        #[test]
        fn display_parse_round_trip(f in arb_motive()) {
            prop_assert_eq!(f.to_string().parse::<TateMotive>().unwrap(), f);
        }
    }
}
