//! Numeric evaluation of the zeta-regularized gamma and sine functions.
//!
//! Public entry points take [`Complex64`] arguments and return an
//! [`EvalResult`] whose `error_estimate` is heuristic (first omitted
//! Euler-Maclaurin term), not a rigorous bound. Internally everything runs
//! at a precision chosen by [`AccuracyRequest::digits`]: requests up to 15
//! digits use plain `f64`, anything above runs in double-double arithmetic
//! (~31 digits, the ceiling honored by this build).
//!
//! Domain contracts: the zeta sums require `Re(w) > 0`; the sine functions
//! are evaluated in the strip `0 < Re(w) < r` (shift reduction beyond the
//! strip belongs to callers, who own ladder-based extension).

mod bernoulli;
pub(crate) mod cplx;
pub(crate) mod dd;
mod dd_tables;
pub(crate) mod kernel;
pub(crate) mod quad;
pub(crate) mod real;

use cplx::Cx;
use dd::Dd;
use kernel::EmParams;
use num_complex::Complex64;

/// Minimum allowed distance from a sine-function argument to the integer
/// lattice points of its level.
pub const SINGULARITY_GUARD: f64 = 1e-6;

/// How hard to work: target relative accuracy plus working-precision hints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccuracyRequest {
    /// Requested relative accuracy of the returned value.
    pub rel_tol: f64,
    /// Working precision in decimal digits; <= 15 selects plain `f64`,
    /// anything larger the double-double path (capped at ~31).
    pub digits: u32,
    /// Budget for directly summed Euler-Maclaurin head terms. The kernel
    /// uses the shorter of this and the length the correction order calls
    /// for: a longer head sum does not sharpen the result, it only adds
    /// round-off (the summands grow polynomially in the term index while
    /// the result stays bounded), which large integer exponents amplify.
    pub head_terms: usize,
    /// Euler-Maclaurin correction order (2K); capped by the stored
    /// Bernoulli table at 30.
    pub bernoulli_order: usize,
}

impl Default for AccuracyRequest {
    fn default() -> AccuracyRequest {
        AccuracyRequest {
            rel_tol: 1e-10,
            digits: 30,
            head_terms: 60,
            bernoulli_order: 30,
        }
    }
}

impl AccuracyRequest {
    /// Default parameters at an explicit digit count.
    pub fn with_digits(digits: u32) -> AccuracyRequest {
        AccuracyRequest {
            digits,
            ..AccuracyRequest::default()
        }
    }

    pub(crate) fn em_params(&self) -> EmParams {
        EmParams::new(self.head_terms, self.bernoulli_order)
    }

    pub(crate) fn extended(&self) -> bool {
        self.digits > 15
    }
}

/// A computed value with a heuristic error estimate.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct EvalResult {
    pub value: Complex64,
    /// First omitted tail term of the underlying expansion; heuristic.
    pub error_estimate: f64,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("s = 1 is a pole of the zeta sum")]
    PoleAtOne,
    #[error("argument must satisfy Re(w) > 0, got Re(w) = {re}")]
    HalfPlane { re: f64 },
    #[error("Re(w) = {re} is outside the level-{level} strip (0, {level})")]
    OutsideStrip { re: f64, level: u32 },
    #[error("argument is {dist:.1e} from the singular point {point} (guard {SINGULARITY_GUARD:.0e})")]
    NearSingular { point: i64, dist: f64 },
    #[error("exponent does not fit a 64-bit integer; refusing lossy numeric evaluation")]
    ExponentOverflow,
}

fn check_half_plane(w: Complex64) -> Result<(), NumericsError> {
    if w.re <= 0.0 {
        return Err(NumericsError::HalfPlane { re: w.re });
    }
    Ok(())
}

/// Reject arguments within the guard distance of an integer in `[lo, hi]`.
pub(crate) fn check_lattice(w: Complex64, lo: i64, hi: i64) -> Result<(), NumericsError> {
    let m = w.re.round() as i64;
    if m < lo || m > hi {
        return Ok(());
    }
    let dist = (w - Complex64::new(m as f64, 0.0)).norm();
    if dist < SINGULARITY_GUARD {
        return Err(NumericsError::NearSingular { point: m, dist });
    }
    Ok(())
}

/// Analytic continuation of `sum_n (w+n)^{-s}` (Euler-Maclaurin).
///
/// Requires `Re(w) > 0` and `s != 1`.
pub fn hurwitz_zeta(
    s: Complex64,
    w: Complex64,
    acc: &AccuracyRequest,
) -> Result<EvalResult, NumericsError> {
    hurwitz_slot(s, w, acc, false)
}

/// The s-derivative of [`hurwitz_zeta`], differentiated term by term in the
/// same expansion (no finite differences).
pub fn hurwitz_zeta_ds(
    s: Complex64,
    w: Complex64,
    acc: &AccuracyRequest,
) -> Result<EvalResult, NumericsError> {
    hurwitz_slot(s, w, acc, true)
}

fn hurwitz_slot(
    s: Complex64,
    w: Complex64,
    acc: &AccuracyRequest,
    derivative: bool,
) -> Result<EvalResult, NumericsError> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(NumericsError::PoleAtOne);
    }
    check_half_plane(w)?;
    let p = acc.em_params();
    let (value, error_estimate) = if acc.extended() {
        let (v, d, e) = kernel::hurwitz_pair(Cx::<Dd>::from_c64(s), Cx::from_c64(w), &p);
        (if derivative { d } else { v }.to_c64(), e)
    } else {
        let (v, d, e) = kernel::hurwitz_pair(Cx::<f64>::from_c64(s), Cx::from_c64(w), &p);
        (if derivative { d } else { v }.to_c64(), e)
    };
    Ok(EvalResult {
        value,
        error_estimate,
    })
}

/// Coefficients `beta_j(w)` expanding the level-r binomial weight in powers
/// of `n + w`:  `binom(n+r-1, r-1) = sum_{j<r} beta_j(w) (n+w)^j`.
///
/// The identity is exact (a polynomial identity in `n`); this evaluation
/// rounds only at the end. Requires `r >= 1`.
pub fn binom_shift_coeffs(r: u32, w: Complex64) -> Vec<Complex64> {
    assert!(r >= 1, "level must be at least 1");
    kernel::binom_shift(r, Cx::<Dd>::from_c64(w))
        .into_iter()
        .map(Cx::to_c64)
        .collect()
}

/// log Gamma_r(w), the s-derivative at 0 of the level-r zeta sum.
///
/// Requires `r >= 1` and `Re(w) > 0`.
pub fn log_multiple_gamma(
    r: u32,
    w: Complex64,
    acc: &AccuracyRequest,
) -> Result<EvalResult, NumericsError> {
    assert!(r >= 1, "level must be at least 1");
    check_half_plane(w)?;
    let p = acc.em_params();
    let (value, error_estimate) = if acc.extended() {
        let (v, e) = kernel::log_gamma_r(r, Cx::<Dd>::from_c64(w), &p);
        (v.to_c64(), e)
    } else {
        let (v, e) = kernel::log_gamma_r(r, Cx::<f64>::from_c64(w), &p);
        (v.to_c64(), e)
    };
    Ok(EvalResult {
        value,
        error_estimate,
    })
}

/// The level-r sine function S_r(w), for `0 < Re(w) < r` and away from the
/// integer lattice of the strip.
///
/// For real `w` the value is real; imaginary rounding dust is asserted small
/// and discarded.
pub fn multiple_sine(
    r: u32,
    w: Complex64,
    acc: &AccuracyRequest,
) -> Result<EvalResult, NumericsError> {
    assert!(r >= 1, "level must be at least 1");
    if w.re <= 0.0 || w.re >= r as f64 {
        return Err(NumericsError::OutsideStrip {
            re: w.re,
            level: r,
        });
    }
    check_lattice(w, 0, r as i64)?;
    let p = acc.em_params();
    let (log, err) = if acc.extended() {
        let (v, e) = kernel::log_sine_strip(r, Cx::<Dd>::from_c64(w), &p);
        (v.to_c64(), e)
    } else {
        let (v, e) = kernel::log_sine_strip(r, Cx::<f64>::from_c64(w), &p);
        (v.to_c64(), e)
    };
    let mut value = log.exp();
    let error_estimate = err * value.norm();
    if w.im == 0.0 {
        let bound = (acc.rel_tol * value.norm()).max(1e-12) + error_estimate;
        debug_assert!(
            value.im.abs() <= bound,
            "imaginary dust {:.2e} above tolerance {:.2e} at r={r}, w={w}",
            value.im.abs(),
            bound,
        );
        value.im = 0.0;
    }
    Ok(EvalResult {
        value,
        error_estimate,
    })
}
