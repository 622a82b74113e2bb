//! Numeric evaluation of formal sine products at a fixed base point.
//!
//! All shifts appearing in one product are integers, so every needed value
//! is `log S_r(w0 + shift)` for a small set of `(r, shift)` pairs; the
//! evaluator memoizes on that key. Arguments outside the level strip are
//! reached by the exact ladder `S_r(w) = S_{r-1}(w) S_r(w+1)`, taken in log
//! form. Each memoized log carries principal-branch content only up to
//! `2 pi i`, which cancels once integer exponents are exponentiated.

use crate::numerics::cplx::Cx;
use crate::numerics::dd::Dd;
use crate::numerics::kernel::{self, EmParams};
use crate::numerics::real::Real;
use crate::numerics::{AccuracyRequest, EvalResult, NumericsError, SINGULARITY_GUARD};
use crate::sign::Sign;
use crate::sine::FormalSineProduct;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::collections::HashMap;

pub(crate) struct LogSineEvaluator<T: Real> {
    base: Cx<T>,
    params: EmParams,
    memo: HashMap<(u32, i64), (Cx<T>, f64)>,
}

impl<T: Real> LogSineEvaluator<T> {
    pub(crate) fn new(base: Complex64, params: EmParams) -> LogSineEvaluator<T> {
        LogSineEvaluator {
            base: Cx::from_c64(base),
            params,
            memo: HashMap::new(),
        }
    }

    /// `(log S_r(base + shift), error estimate)`, memoized.
    pub(crate) fn log_sine(
        &mut self,
        r: u32,
        shift: i64,
    ) -> Result<(Cx<T>, f64), NumericsError> {
        assert!(r >= 1, "sine levels start at 1");
        if let Some(&hit) = self.memo.get(&(r, shift)) {
            return Ok(hit);
        }
        let w = self.base + Cx::from_i64(shift);
        let z = w.to_c64();
        // Zeros and poles of every extended level sit on the integers.
        let nearest = z.re.round();
        let dist = (z - Complex64::new(nearest, 0.0)).norm();
        if dist < SINGULARITY_GUARD {
            return Err(NumericsError::NearSingular {
                point: nearest as i64,
                dist,
            });
        }
        let out = if r == 1 {
            // S_1(w) = 2 sin(pi w), entire, valid for every argument.
            let s = w.scale(T::pi()).sin();
            ((s + s).ln(), 0.0)
        } else if z.re > 0.0 && z.re < r as f64 {
            kernel::log_sine_strip(r, w, &self.params)
        } else if z.re <= 0.0 {
            // Move right: log S_r(w) = log S_{r-1}(w) + log S_r(w+1).
            let (a, ea) = self.log_sine(r - 1, shift)?;
            let (b, eb) = self.log_sine(r, shift + 1)?;
            (a + b, ea + eb)
        } else {
            // Move left: log S_r(w) = log S_r(w-1) - log S_{r-1}(w-1).
            let (a, ea) = self.log_sine(r, shift - 1)?;
            let (b, eb) = self.log_sine(r - 1, shift - 1)?;
            (a - b, ea + eb)
        };
        self.memo.insert((r, shift), out);
        Ok(out)
    }
}

fn accumulate<T: Real>(
    ev: &mut LogSineEvaluator<T>,
    p: &FormalSineProduct,
) -> Result<EvalResult, NumericsError> {
    let mut total = Cx::<T>::zero();
    let mut error = 0.0f64;
    for (r, motive) in p.levels() {
        for (k, a) in motive.terms() {
            let a = a.to_i64().ok_or(NumericsError::ExponentOverflow)?;
            let (log, err) = ev.log_sine(r, k.checked_neg().expect("exponent overflow"))?;
            total = total + log.scale(T::from_i64(a));
            error += a.unsigned_abs() as f64 * err;
        }
    }
    if p.sign() == Sign::Minus {
        total = total + Cx::new(T::zero(), T::pi());
    }
    Ok(EvalResult {
        value: total.to_c64(),
        error_estimate: error,
    })
}

/// A memoized evaluation session pinned to one base point and accuracy.
///
/// Reuse one session for every product evaluated at the same point: all
/// ladder intermediates are shared through the memo.
pub(crate) enum EvalSession {
    Fast(LogSineEvaluator<f64>),
    Extended(LogSineEvaluator<Dd>),
}

impl EvalSession {
    pub(crate) fn new(w: Complex64, acc: &AccuracyRequest) -> EvalSession {
        let params = acc.em_params();
        if acc.extended() {
            EvalSession::Extended(LogSineEvaluator::new(w, params))
        } else {
            EvalSession::Fast(LogSineEvaluator::new(w, params))
        }
    }

    /// `log` of the product at the session's base point.
    pub(crate) fn eval_log(
        &mut self,
        p: &FormalSineProduct,
    ) -> Result<EvalResult, NumericsError> {
        match self {
            EvalSession::Fast(ev) => accumulate(ev, p),
            EvalSession::Extended(ev) => accumulate(ev, p),
        }
    }
}

pub(crate) fn eval_log_dispatch(
    p: &FormalSineProduct,
    w: Complex64,
    acc: &AccuracyRequest,
) -> Result<EvalResult, NumericsError> {
    EvalSession::new(w, acc).eval_log(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motive::TateMotive;
    use crate::numerics::multiple_sine;
    use std::f64::consts::PI;

    const ACC: AccuracyRequest = AccuracyRequest {
        rel_tol: 1e-10,
        digits: 30,
        head_terms: 60,
        bernoulli_order: 30,
    };

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn level_one_closed_form_everywhere() {
        let mut ev = LogSineEvaluator::<Dd>::new(c(0.4, 0.1), EmParams::new(60, 30));
        for shift in [-7i64, -1, 0, 3, 12] {
            let (log, _) = ev.log_sine(1, shift).unwrap();
            let w = c(0.4 + shift as f64, 0.1);
            let want = 2.0 * (PI * w).sin();
            assert!((log.to_c64().exp() - want).norm() < 1e-13 * want.norm());
        }
    }

    #[test]
    fn ladder_extension_agrees_with_strip_values() {
        let sine = |r: u32, re: f64| multiple_sine(r, c(re, 0.0), &ACC).unwrap().value;
        // Right of the strip: S_3(3.7) = S_3(2.7) S_1(1.7) / S_2(1.7),
        // unfolding the ladder twice by hand.
        let mut ev = LogSineEvaluator::<Dd>::new(c(3.7, 0.0), EmParams::new(60, 30));
        let got = ev.log_sine(3, 0).unwrap().0.to_c64().exp();
        let want = sine(3, 2.7) * 2.0 * (PI * 1.7).sin() / sine(2, 1.7);
        assert!((got - want).norm() < 1e-11 * want.norm(), "right extension");
        // Left of the strip: S_3(-0.3) = S_1(-0.3) S_2(0.7) S_3(0.7).
        let mut ev = LogSineEvaluator::<Dd>::new(c(-0.3, 0.0), EmParams::new(60, 30));
        let got = ev.log_sine(3, 0).unwrap().0.to_c64().exp();
        let want = 2.0 * (PI * -0.3).sin() * sine(2, 0.7) * sine(3, 0.7);
        assert!((got - want).norm() < 1e-11 * want.norm(), "left extension");
    }

    #[test]
    fn ladder_identity_numerically() {
        // S_r(w) / S_r(w+1) = S_{r-1}(w) with every argument out of strip.
        let mut ev = LogSineEvaluator::<Dd>::new(c(-2.6, 0.4), EmParams::new(60, 30));
        for r in 2..=5u32 {
            let (a, _) = ev.log_sine(r, 0).unwrap();
            let (b, _) = ev.log_sine(r, 1).unwrap();
            let (lower, _) = ev.log_sine(r - 1, 0).unwrap();
            let residual = ((a - b - lower).to_c64().exp() - 1.0).norm();
            assert!(residual < 1e-12, "r={r}: {residual:.2e}");
        }
    }

    #[test]
    fn product_eval_matches_factorwise() {
        let f2 = TateMotive::from_coeffs([(0i64, 2i64), (-1, 1)]);
        let f1 = TateMotive::from_coeffs([(1i64, -1i64)]);
        let p = FormalSineProduct::constant(Sign::Minus)
            .with_level(2, &f2)
            .with_level(1, &f1);
        let w = c(0.55, 0.0);
        let got = p.eval(w, &ACC).unwrap().value;
        let s2 = multiple_sine(2, w, &ACC).unwrap().value;
        let s2s = multiple_sine(2, w + 1.0, &ACC).unwrap().value; // x^{-1}: shift +1
        let s1s = 2.0 * (PI * (w - 1.0)).sin(); // x^1: shift -1
        let want = -s2.powi(2) * s2s / s1s;
        assert!((got - want).norm() < 1e-11 * want.norm());
    }

    #[test]
    fn singular_arguments_are_rejected() {
        let p = FormalSineProduct::sine(2);
        assert!(matches!(
            p.eval_log(c(1.0 + 1e-8, 0.0), &ACC),
            Err(NumericsError::NearSingular { point: 1, .. })
        ));
        // Out-of-strip singularities are caught during ladder recursion.
        assert!(matches!(
            p.eval_log(c(-3.0, 0.0), &ACC),
            Err(NumericsError::NearSingular { .. })
        ));
    }

    #[test]
    fn f64_path_is_wired() {
        let fast = AccuracyRequest::with_digits(12);
        let p = FormalSineProduct::sine(2);
        let a = p.eval(c(0.8, 0.0), &fast).unwrap().value;
        let b = p.eval(c(0.8, 0.0), &ACC).unwrap().value;
        assert!((a - b).norm() < 1e-9 * b.norm());
    }
}
