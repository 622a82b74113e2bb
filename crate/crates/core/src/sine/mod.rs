//! Formal products of multiple sine functions with Laurent-twisted
//! exponents, and their reduction to normal form.
//!
//! A [`FormalSineProduct`] represents
//! `sign * prod_r prod_k S_r(w - k)^{P_r(k)}`,
//! one integer Laurent polynomial `P_r` per level `r >= 1`. The exponent
//! `x^k` shifts the argument by `-k`, matching the twist convention for
//! zeta functions.
//!
//! Reduction rests on two exact identities: the ladder
//! `S_r(w) / S_r(w+1) = S_{r-1}(w)` turns a factor `(1 - x^{-1})` in the
//! exponent into a drop of one level, and the degenerate case `S_0 = -1`
//! turns level-zero leftovers into a bare sign.

mod eval;

pub(crate) use eval::{eval_log_dispatch, EvalSession};

use crate::motive::TateMotive;
use crate::sign::Sign;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// `sign * prod_r S_r^{[P_r]}` with nonzero `P_r` at each stored level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSineProduct {
    levels: BTreeMap<u32, TateMotive>,
    sign: Sign,
}

impl Default for FormalSineProduct {
    fn default() -> FormalSineProduct {
        FormalSineProduct::one()
    }
}

impl FormalSineProduct {
    /// The empty product.
    pub fn one() -> FormalSineProduct {
        FormalSineProduct {
            levels: BTreeMap::new(),
            sign: Sign::Plus,
        }
    }

    pub fn constant(sign: Sign) -> FormalSineProduct {
        FormalSineProduct {
            levels: BTreeMap::new(),
            sign,
        }
    }

    /// The single factor `S_r(w)`.
    pub fn sine(r: u32) -> FormalSineProduct {
        FormalSineProduct::from_level_poly(r, &TateMotive::one())
    }

    /// The product `S_r^{[p]}`, sign `+1`.
    pub fn from_level_poly(r: u32, p: &TateMotive) -> FormalSineProduct {
        FormalSineProduct::one().with_level(r, p)
    }

    /// Multiplies `S_r^{[f]}` into the product.
    pub fn with_level(mut self, r: u32, f: &TateMotive) -> FormalSineProduct {
        self.mul_level(r, f);
        self
    }

    fn mul_level(&mut self, r: u32, f: &TateMotive) {
        assert!(r >= 1, "sine levels start at 1");
        if f.is_zero() {
            return;
        }
        let entry = self.levels.entry(r).or_insert_with(TateMotive::zero);
        *entry = &*entry + f;
        if entry.is_zero() {
            self.levels.remove(&r);
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Levels with nonzero exponent, ascending.
    pub fn levels(&self) -> impl Iterator<Item = (u32, &TateMotive)> {
        self.levels.iter().map(|(&r, f)| (r, f))
    }

    /// The exponent at level `r` (zero when absent).
    pub fn level_motive(&self, r: u32) -> TateMotive {
        self.levels.get(&r).cloned().unwrap_or_else(TateMotive::zero)
    }

    /// Highest level carrying a nonzero exponent.
    pub fn max_level(&self) -> Option<u32> {
        self.levels.keys().next_back().copied()
    }

    /// True when no sine factor remains, so the product is `sign` itself.
    pub fn is_constant(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn constant_value(&self) -> Option<Sign> {
        self.is_constant().then_some(self.sign)
    }

    /// The twist action: every exponent is multiplied by `f`, and the sign
    /// (a constant factor) is raised to `f(1)`.
    pub fn apply_motive(&self, f: &TateMotive) -> FormalSineProduct {
        let mut out = FormalSineProduct {
            levels: BTreeMap::new(),
            sign: self.sign.pow(&f.eval_one()),
        };
        for (r, p) in self.levels() {
            out.mul_level(r, &(p * f));
        }
        out
    }

    /// Eliminates every sine factor from the top level down, leaving
    /// unshifted residues `S_r(w)^{c_r}` and a sign.
    ///
    /// Each step splits the level-`r` exponent as `(1 - x^{-1}) Q + c`; the
    /// ladder sends `Q` to level `r-1` (to the sign when `r = 1`, via
    /// `S_0 = -1`) and `c` stays as the level's residue.
    pub fn normal_form(&self) -> NormalForm {
        let mut levels = self.levels.clone();
        let mut sign = self.sign;
        let mut residues = BTreeMap::new();
        let mut trace = Vec::new();
        while let Some((&r, _)) = levels.last_key_value() {
            let p = levels.remove(&r).unwrap();
            let (quotient, residue) = p.split_one();
            let mut step_sign = Sign::Plus;
            if r == 1 {
                step_sign = Sign::neg_one_pow(&quotient.eval_one());
                sign *= step_sign;
            } else if !quotient.is_zero() {
                let entry = levels.entry(r - 1).or_insert_with(TateMotive::zero);
                *entry = &*entry + &quotient;
                if entry.is_zero() {
                    levels.remove(&(r - 1));
                }
            }
            if !residue.is_zero() {
                residues.insert(r, residue.clone());
            }
            trace.push(ReductionStep {
                level: r,
                quotient,
                residue,
                sign: step_sign,
            });
        }
        NormalForm {
            sign,
            residues,
            trace,
        }
    }

    /// log of the product at `w`. The imaginary part carries an arbitrary
    /// integer multiple of 2*pi (each factor takes a principal branch), so
    /// only `exp` of (differences of) returned logs is meaningful.
    pub fn eval_log(
        &self,
        w: num_complex::Complex64,
        acc: &crate::numerics::AccuracyRequest,
    ) -> Result<crate::numerics::EvalResult, crate::numerics::NumericsError> {
        eval_log_dispatch(self, w, acc)
    }

    /// `exp` of [`FormalSineProduct::eval_log`]; may overflow to infinity
    /// for large exponents.
    pub fn eval(
        &self,
        w: num_complex::Complex64,
        acc: &crate::numerics::AccuracyRequest,
    ) -> Result<crate::numerics::EvalResult, crate::numerics::NumericsError> {
        let log = self.eval_log(w, acc)?;
        let value = log.value.exp();
        Ok(crate::numerics::EvalResult {
            value,
            error_estimate: log.error_estimate * value.norm(),
        })
    }
}

impl std::ops::Mul for &FormalSineProduct {
    type Output = FormalSineProduct;
    fn mul(self, rhs: &FormalSineProduct) -> FormalSineProduct {
        let mut out = self.clone();
        out.sign *= rhs.sign;
        for (r, f) in rhs.levels() {
            out.mul_level(r, f);
        }
        out
    }
}

impl std::ops::Mul for FormalSineProduct {
    type Output = FormalSineProduct;
    fn mul(self, rhs: FormalSineProduct) -> FormalSineProduct {
        &self * &rhs
    }
}

/// One ladder step of the reduction at `level`: the exponent there was
/// exactly `(1 - x^{-1}) * quotient + residue`, and `sign` is the factor
/// contributed through `S_0 = -1` (always `+1` above level 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub level: u32,
    pub quotient: TateMotive,
    pub residue: BigInt,
    pub sign: Sign,
}

/// Result of [`FormalSineProduct::normal_form`]: the product equals
/// `sign * prod_r S_r(w)^{residues[r]}`, and `trace` records every step for
/// independent replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub sign: Sign,
    pub residues: BTreeMap<u32, BigInt>,
    pub trace: Vec<ReductionStep>,
}

impl NormalForm {
    /// The reduced product itself.
    pub fn as_product(&self) -> FormalSineProduct {
        let mut out = FormalSineProduct::constant(self.sign);
        for (&r, c) in &self.residues {
            out.mul_level(r, &TateMotive::monomial(0, c.clone()));
        }
        out
    }

    /// True when the product reduced to a bare sign.
    pub fn is_sign(&self) -> bool {
        self.residues.is_empty()
    }

    /// `Some(sign)` when the normal form is the constant `sign`, `None`
    /// when sine factors remain.
    pub fn constant_value(&self) -> Option<Sign> {
        self.is_sign().then_some(self.sign)
    }

    /// Replays the trace against `original` with exact arithmetic: every
    /// step's split must reconstruct the level it consumed, the level-1
    /// signs must match `S_0 = -1` bookkeeping, and the final sign and
    /// residues must be the stored ones.
    pub fn verify(&self, original: &FormalSineProduct) -> bool {
        let one_minus_xinv =
            &TateMotive::one() - &TateMotive::monomial(-1, 1);
        let mut levels = original.levels.clone();
        let mut sign = original.sign;
        let mut residues = BTreeMap::new();
        for step in &self.trace {
            let p = levels.remove(&step.level).unwrap_or_else(TateMotive::zero);
            let rebuilt = &(&one_minus_xinv * &step.quotient)
                + &TateMotive::monomial(0, step.residue.clone());
            if p != rebuilt {
                return false;
            }
            if step.level == 1 {
                if step.sign != Sign::neg_one_pow(&step.quotient.eval_one()) {
                    return false;
                }
                sign *= step.sign;
            } else {
                if step.sign != Sign::Plus {
                    return false;
                }
                if !step.quotient.is_zero() {
                    let entry = levels
                        .entry(step.level - 1)
                        .or_insert_with(TateMotive::zero);
                    *entry = &*entry + &step.quotient;
                    if entry.is_zero() {
                        levels.remove(&(step.level - 1));
                    }
                }
            }
            if !step.residue.is_zero() {
                residues.insert(step.level, step.residue.clone());
            }
        }
        levels.is_empty() && sign == self.sign && residues == self.residues
    }
}

impl serde::Serialize for FormalSineProduct {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FormalSineProduct", 2)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("levels", &self.levels)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for FormalSineProduct {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<FormalSineProduct, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            sign: Sign,
            levels: BTreeMap<u32, TateMotive>,
        }
        let raw = Raw::deserialize(d)?;
        let mut out = FormalSineProduct::constant(raw.sign);
        for (r, f) in raw.levels {
            if r == 0 {
                return Err(serde::de::Error::custom("sine levels start at 1"));
            }
            out.mul_level(r, &f);
        }
        Ok(out)
    }
}

impl serde::Serialize for ReductionStep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ReductionStep", 4)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("quotient", &self.quotient)?;
        st.serialize_field("residue", &crate::motive::bigint_number(&self.residue))?;
        st.serialize_field("sign", &self.sign)?;
        st.end()
    }
}

impl serde::Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let residues: BTreeMap<String, serde_json::Number> = self
            .residues
            .iter()
            .map(|(r, c)| (r.to_string(), crate::motive::bigint_number(c)))
            .collect();
        let mut st = s.serialize_struct("NormalForm", 3)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("residues", &residues)?;
        st.serialize_field("trace", &self.trace)?;
        st.end()
    }
}
