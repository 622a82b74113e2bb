//! The four families of rank-one spaces and their sine and gamma factors.
//!
//! Each space carries an exact integer exponent table; the sine side is a
//! [`FormalSineProduct`] at the space's level, the gamma side a
//! [`GammaProduct`] over the multiple gamma function at the same level. The
//! reflection length `rho2` (the integer `2 rho`) is derived from the
//! table's symmetry rather than stored per family.

use crate::motive::TateMotive;
use crate::numerics::{log_multiple_gamma, AccuracyRequest, EvalResult, NumericsError};
use crate::sine::FormalSineProduct;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// The classification families admitting a sine-product gamma factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// SO(1, 2n): real hyperbolic, even dimension 2n.
    So,
    /// SU(1, n): complex hyperbolic, dimension 2n.
    Su,
    /// Sp(1, n): quaternionic hyperbolic, dimension 4n.
    Sp,
    /// The exceptional rank-one space of dimension 16.
    F4,
}

impl Family {
    /// Whether the family takes a rank parameter `n`.
    pub fn parametric(self) -> bool {
        self != Family::F4
    }

    /// Short lowercase tag, as accepted and printed by the CLI.
    pub fn tag(self) -> &'static str {
        match self {
            Family::So => "so",
            Family::Su => "su",
            Family::Sp => "sp",
            Family::F4 => "f4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SpaceError {
    #[error("{family} requires a parameter n >= 1")]
    MissingParameter { family: Family },
    #[error("{family} takes no parameter n")]
    UnexpectedParameter { family: Family },
    #[error("parameter n must be at least 1, got {n}")]
    InvalidParameter { n: u32 },
    #[error("volume must be a positive integer, got {vol}")]
    InvalidVolume { vol: u32 },
}

/// A compact rank-one space: family, rank parameter, and integer volume.
///
/// `dim`, `level`, and `rho2` are derived in the constructor and immutable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    family: Family,
    n: Option<u32>,
    vol: u32,
    dim: u32,
    level: u32,
    rho2: u32,
}

/// Builds a space, deriving dimension, sine level, and `2 rho`.
pub fn make_space(family: Family, n: Option<u32>, vol: u32) -> Result<Space, SpaceError> {
    if vol < 1 {
        return Err(SpaceError::InvalidVolume { vol });
    }
    let n = match (family.parametric(), n) {
        (true, None) => return Err(SpaceError::MissingParameter { family }),
        (true, Some(0)) => return Err(SpaceError::InvalidParameter { n: 0 }),
        (false, Some(_)) => return Err(SpaceError::UnexpectedParameter { family }),
        (_, n) => n,
    };
    let dim = match family {
        Family::So | Family::Su => 2 * n.unwrap(),
        Family::Sp => 4 * n.unwrap(),
        Family::F4 => 16,
    };
    let mut space = Space {
        family,
        n,
        vol,
        dim,
        level: dim,
        rho2: 0,
    };
    space.rho2 = space.rho_sum();
    Ok(space)
}

impl Space {
    pub fn family(&self) -> Family {
        self.family
    }

    /// Rank parameter; `None` exactly for the exceptional family.
    pub fn n(&self) -> Option<u32> {
        self.n
    }

    pub fn vol(&self) -> u32 {
        self.vol
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// The sine index of the gamma factor; equals `dim` for every family.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// The integer `2 rho`, the reflection length of the functional equation.
    pub fn rho2(&self) -> u32 {
        self.rho2
    }

    /// The exact exponent table `e_k` with its signed outer exponent.
    pub fn sine_exponents(&self) -> ExponentTable {
        let n = self.n.unwrap_or(0) as i64;
        let entries: Vec<BigInt> = match self.family {
            Family::So => vec![BigInt::from(1), BigInt::from(1)],
            Family::Su => (0..=n)
                .map(|k| {
                    let b = num_integer::binomial(BigInt::from(n), BigInt::from(k));
                    &b * &b
                })
                .collect(),
            Family::Sp => (0..2 * n)
                .map(|k| {
                    let prod = num_integer::binomial(BigInt::from(2 * n), BigInt::from(k))
                        * num_integer::binomial(BigInt::from(2 * n), BigInt::from(k + 1));
                    let (q, rem) = prod.div_rem(&BigInt::from(2 * n));
                    assert!(rem.is_zero(), "exponent formula must divide exactly");
                    q
                })
                .collect(),
            Family::F4 => [1, 10, 28, 28, 10, 1].map(BigInt::from).to_vec(),
        };
        let outer = match self.family {
            // The sign (-1)^{dim/2} enters only through these two rows.
            Family::So | Family::Su => {
                if self.dim / 2 % 2 == 1 {
                    -(self.vol as i64)
                } else {
                    self.vol as i64
                }
            }
            Family::Sp | Family::F4 => self.vol as i64,
        };
        debug_assert!(entries.iter().all(|e| e.is_positive()));
        ExponentTable { entries, outer }
    }

    /// The sine factor: `prod_k S_level(s + k)^{outer e_k}` as a formal
    /// product (shift `+k` is exponent `-k` in the `x`-convention).
    pub fn gamma_factor(&self) -> FormalSineProduct {
        let table = self.sine_exponents();
        FormalSineProduct::from_level_poly(self.level, &table.to_motive())
    }

    /// The gamma-function side of the reflection formula: the same table
    /// read against the multiple gamma function, with the outer exponent
    /// negated.
    pub fn gamma_function_product(&self) -> GammaProduct {
        let table = self.sine_exponents();
        let negated = ExponentTable {
            entries: table.entries,
            outer: -table.outer,
        };
        GammaProduct {
            level: self.level,
            motive: negated.to_motive(),
        }
    }

    /// The integer `2 rho`, derived as `level - K` from the exponent table
    /// (position `K` is the top shift). Requires the table's palindrome
    /// symmetry, which is what lets the gamma-side reflection match up.
    pub fn rho_sum(&self) -> u32 {
        let table = self.sine_exponents();
        assert!(
            table.is_symmetric(),
            "exponent table of {self} must be palindromic"
        );
        self.level - table.top() as u32
    }

    /// Parity of the total exponent `outer * sum_k e_k`.
    pub fn exponent_parity(&self) -> Parity {
        let table = self.sine_exponents();
        let total: BigInt = table.entries.iter().sum::<BigInt>() * table.outer;
        if total.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Relative residual of the reflection formula
    /// `S_M(s) = Gamma_M(s) / Gamma_M(2 rho - s)` at one point.
    ///
    /// Both sides are computed by independent code paths; the residual is
    /// compared after exponentiation, so log branches drop out.
    pub fn check_gamma_relation(
        &self,
        s: num_complex::Complex64,
        acc: &AccuracyRequest,
    ) -> Result<f64, NumericsError> {
        let sine_side = self.gamma_factor().eval_log(s, acc)?.value;
        let gp = self.gamma_function_product();
        let left = gp.eval_log(s, acc)?.value;
        let reflected = num_complex::Complex64::new(self.rho2 as f64, 0.0) - s;
        let right = gp.eval_log(reflected, acc)?.value;
        Ok(((left - right - sine_side).exp() - 1.0).norm())
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::So => write!(f, "SO(1,{})", 2 * self.n.unwrap()),
            Family::Su => write!(f, "SU(1,{})", self.n.unwrap()),
            Family::Sp => write!(f, "Sp(1,{})", self.n.unwrap()),
            Family::F4 => f.write_str("F4"),
        }
    }
}

/// Exact exponents `e_0..e_K` (contiguous, positive) with a signed outer
/// multiplier applying to all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentTable {
    pub entries: Vec<BigInt>,
    pub outer: i64,
}

impl ExponentTable {
    /// The top shift `K`.
    pub fn top(&self) -> usize {
        self.entries.len() - 1
    }

    /// Palindrome test `e_k = e_{K-k}`.
    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .zip(self.entries.iter().rev())
            .all(|(a, b)| a == b)
    }

    /// The table as an exponent polynomial `outer * sum_k e_k x^{-k}`.
    pub fn to_motive(&self) -> TateMotive {
        TateMotive::from_coeffs(
            self.entries
                .iter()
                .enumerate()
                .map(|(k, e)| (-(k as i64), e * self.outer)),
        )
    }
}

/// Even/odd flag for the total exponent of a gamma factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A product `prod_j Gamma_level(s - j)^{a_j}` over the multiple gamma
/// function, with the exponents stored in the same `x`-convention as
/// [`FormalSineProduct`].
#[derive(Clone, Debug, PartialEq)]
pub struct GammaProduct {
    level: u32,
    motive: TateMotive,
}

impl GammaProduct {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn motive(&self) -> &TateMotive {
        &self.motive
    }

    /// `log` of the product at `s`; every shifted argument must satisfy
    /// `Re > 0` (no reflection-based continuation on the gamma side).
    pub fn eval_log(
        &self,
        s: num_complex::Complex64,
        acc: &AccuracyRequest,
    ) -> Result<EvalResult, NumericsError> {
        let mut value = num_complex::Complex64::new(0.0, 0.0);
        let mut error_estimate = 0.0f64;
        for (k, a) in self.motive.terms() {
            let a = a.to_i64().ok_or(NumericsError::ExponentOverflow)?;
            let w = s - num_complex::Complex64::new(k as f64, 0.0);
            let factor = log_multiple_gamma(self.level, w, acc)?;
            value += factor.value * a as f64;
            error_estimate += a.unsigned_abs() as f64 * factor.error_estimate;
        }
        Ok(EvalResult {
            value,
            error_estimate,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn space(family: Family, n: impl Into<Option<u32>>, vol: u32) -> Space {
        make_space(family, n.into(), vol).unwrap()
    }

    fn entries_i64(t: &ExponentTable) -> Vec<i64> {
        t.entries.iter().map(|e| e.to_i64().unwrap()).collect()
    }

    #[test]
    fn construction_validates_parameters() {
        assert!(matches!(
            make_space(Family::Su, Some(0), 1),
            Err(SpaceError::InvalidParameter { n: 0 })
        ));
        assert!(matches!(
            make_space(Family::So, None, 1),
            Err(SpaceError::MissingParameter { .. })
        ));
        assert!(matches!(
            make_space(Family::F4, Some(2), 1),
            Err(SpaceError::UnexpectedParameter { .. })
        ));
        assert!(matches!(
            make_space(Family::F4, None, 0),
            Err(SpaceError::InvalidVolume { vol: 0 })
        ));
    }

    #[test]
    fn dimensions_and_levels() {
        let cases = [
            (space(Family::So, 1, 2), 2, 1),
            (space(Family::So, 3, 1), 6, 5),
            (space(Family::Su, 2, 1), 4, 2),
            (space(Family::Sp, 2, 1), 8, 5),
            (space(Family::F4, None, 1), 16, 11),
        ];
        for (m, dim, rho2) in cases {
            assert_eq!(m.dim(), dim, "{m}");
            assert_eq!(m.level(), dim, "{m}");
            assert_eq!(m.rho2(), rho2, "{m}");
            assert_eq!(m.dim() % 2, 0, "{m}");
        }
    }

    #[test]
    fn exponent_tables_match_known_rows() {
        let t = space(Family::So, 2, 3).sine_exponents();
        assert_eq!(entries_i64(&t), [1, 1]);
        assert_eq!(t.outer, 3); // dim/2 = 2 even

        let t = space(Family::So, 1, 2).sine_exponents();
        assert_eq!(entries_i64(&t), [1, 1]);
        assert_eq!(t.outer, -2); // dim/2 = 1 odd

        let t = space(Family::Su, 2, 1).sine_exponents();
        assert_eq!(entries_i64(&t), [1, 4, 1]);
        assert_eq!(t.outer, 1);

        let t = space(Family::Su, 1, 1).sine_exponents();
        assert_eq!(entries_i64(&t), [1, 1]);
        assert_eq!(t.outer, -1);

        let t = space(Family::Sp, 2, 1).sine_exponents();
        assert_eq!(entries_i64(&t), [1, 6, 6, 1]);
        assert_eq!(t.outer, 1);

        let t = space(Family::F4, None, 1).sine_exponents();
        assert_eq!(entries_i64(&t), [1, 10, 28, 28, 10, 1]);
        assert_eq!(t.outer, 1);
    }

    #[test]
    fn sine_factor_polynomials() {
        // Genus-2 surface: (S_2(s) S_2(s+1))^{-2}.
        let p = space(Family::So, 1, 2).gamma_factor();
        let want: TateMotive = "-2 - 2x^-1".parse().unwrap();
        assert_eq!(p.level_motive(2), want);
        assert_eq!(p.sign(), crate::sign::Sign::Plus);

        let p = space(Family::F4, None, 1).gamma_factor();
        let want: TateMotive =
            "1 + 10x^-1 + 28x^-2 + 28x^-3 + 10x^-4 + x^-5".parse().unwrap();
        assert_eq!(p.level_motive(16), want);

        // SU(1,1) coincides with SO(1,2) at equal volume.
        assert_eq!(
            space(Family::Su, 1, 1).gamma_factor(),
            space(Family::So, 1, 1).gamma_factor()
        );
    }

    #[test]
    fn gamma_side_negates_outer() {
        for m in [
            space(Family::So, 1, 2),
            space(Family::So, 2, 1),
            space(Family::Su, 3, 2),
            space(Family::Sp, 1, 1),
            space(Family::F4, None, 1),
        ] {
            let t = m.sine_exponents();
            let g = m.gamma_function_product();
            assert_eq!(g.level(), m.level());
            let negated = ExponentTable {
                entries: t.entries.clone(),
                outer: -t.outer,
            };
            assert_eq!(g.motive(), &negated.to_motive(), "{m}");
        }
    }

    #[test]
    fn tables_are_symmetric_exact_and_even_up_to_eight() {
        for n in 1..=8 {
            for m in [
                space(Family::So, n, 1),
                space(Family::Su, n, 1),
                space(Family::Sp, n, 1), // construction asserts exact division
            ] {
                let t = m.sine_exponents();
                assert!(t.is_symmetric(), "{m}");
                assert!(t.entries.iter().all(|e| e.is_positive()), "{m}");
                assert_eq!(m.exponent_parity(), Parity::Even, "{m}");
            }
        }
        let f4 = space(Family::F4, None, 1);
        assert!(f4.sine_exponents().is_symmetric());
        assert_eq!(f4.exponent_parity(), Parity::Even);
    }

    #[test]
    fn rho_values_by_family() {
        for n in 1..=8 {
            assert_eq!(space(Family::So, n, 1).rho2(), 2 * n - 1);
            assert_eq!(space(Family::Su, n, 1).rho2(), n);
            assert_eq!(space(Family::Sp, n, 1).rho2(), 2 * n + 1);
        }
        assert_eq!(space(Family::F4, None, 1).rho2(), 11);
    }

    #[test]
    fn gamma_relation_holds_numerically() {
        let acc = AccuracyRequest::default();
        let spaces = [
            space(Family::So, 1, 2),
            space(Family::So, 3, 1),
            space(Family::Su, 2, 1),
            space(Family::Sp, 1, 2),
            space(Family::F4, None, 1),
        ];
        for m in spaces {
            let rho2 = m.rho2() as f64;
            for (i, frac) in [0.3, 0.45, 0.6, 0.75, 0.52].into_iter().enumerate() {
                let s = Complex64::new(rho2 * frac, 0.1 * i as f64);
                let res = m.check_gamma_relation(s, &acc).unwrap();
                assert!(res <= 1e-8, "{m} at {s}: residual {res:.2e}");
            }
        }
    }

    #[test]
    fn gamma_relation_propagates_domain_errors() {
        let acc = AccuracyRequest::default();
        let f4 = space(Family::F4, None, 1);
        // Re(2 rho - s) < 0 puts the reflected gamma argument past the wall.
        assert!(matches!(
            f4.check_gamma_relation(Complex64::new(11.5, 0.0), &acc),
            Err(NumericsError::HalfPlane { .. })
        ));
    }
}
