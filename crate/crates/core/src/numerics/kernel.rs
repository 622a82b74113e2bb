//! Generic evaluation kernels shared by both working precisions.
//!
//! The zeta sum with shifted argument is computed by Euler-Maclaurin:
//!
//! ```text
//! zeta(s, w) = sum_{n<N} (w+n)^{-s}
//!            + A^{1-s}/(s-1) + A^{-s}/2
//!            + sum_{k=1}^{K} B_{2k}/(2k)! (s)_{2k-1} A^{-s-2k+1},   A = w + N
//! ```
//!
//! with `(s)_m = s(s+1)...(s+m-1)`. The s-derivative is differentiated term
//! by term; in particular the Pochhammer derivative is carried incrementally
//! through the product rule, which stays finite at the non-positive integer
//! values of `s` where the product itself vanishes. (A centered finite
//! difference of the value kernel appears in the tests as an independent
//! oracle, never in this shipped path.)
//!
//! Callers guarantee `Re(w) > 0` and `s != 1`; the public wrappers in
//! [`super`] enforce that.

use super::bernoulli::{bernoulli, MAX_BERNOULLI_ORDER};
use super::cplx::Cx;
use super::real::Real;

#[derive(Clone, Copy, Debug)]
pub(crate) struct EmParams {
    /// Number of directly summed head terms (N above).
    pub head: usize,
    /// Correction order 2K; clamped to the stored Bernoulli table.
    pub bern_order: usize,
}

impl EmParams {
    pub fn new(head: usize, bern_order: usize) -> EmParams {
        EmParams {
            head: head.max(4),
            bern_order: bern_order.clamp(2, MAX_BERNOULLI_ORDER),
        }
    }
}

/// Head length the correction order asks for: enough that the asymptotic
/// tail at `A = w + N` converges (`|s| + 2K` below roughly `pi A`), and no
/// more. Head terms beyond that do not sharpen the result; they only add
/// round-off that grows polynomially in `N`, which integer exponents in the
/// megaunit range then amplify. The requested head is a budget, never a
/// target.
fn effective_head(s_abs: f64, w_re: f64, p: &EmParams) -> usize {
    let kmax = p.bern_order / 2;
    let need = ((s_abs + p.bern_order as f64) / std::f64::consts::PI - w_re).ceil();
    let adaptive = (kmax + 1).max(if need > 0.0 { need as usize } else { 0 });
    p.head.min(adaptive.max(4))
}

/// Value and s-derivative of the zeta sum, plus a heuristic error estimate
/// (the magnitude of the first omitted correction term; not a rigorous
/// bound).
pub(crate) fn hurwitz_pair<T: Real>(
    s: Cx<T>,
    w: Cx<T>,
    p: &EmParams,
) -> (Cx<T>, Cx<T>, f64) {
    let head = effective_head(s.abs().to_f64(), w.re.to_f64(), p);
    let mut val = Cx::zero();
    let mut der = Cx::zero();
    for n in 0..head {
        let t = w + Cx::from_i64(n as i64);
        let l = t.ln();
        let e = (-(s * l)).exp();
        val = val + e;
        der = der - l * e;
    }

    let a = w + Cx::from_i64(head as i64);
    let la = a.ln();
    let ams = (-(s * la)).exp(); // A^{-s}

    let sm1 = s - Cx::one();
    let vint = a * ams / sm1; // A^{1-s}/(s-1)
    val = val + vint;
    der = der + vint * (-la - Cx::one() / sm1);

    let vhalf = ams.scale(T::from_f64(0.5));
    val = val + vhalf;
    der = der - la * vhalf;

    // Correction terms. `apow` walks A^{-s-(2k-1)}; `poch`/`dpoch` carry
    // (s)_{2k-1} and its derivative.
    let ainv = Cx::one() / a;
    let ainv2 = ainv * ainv;
    let mut apow = ams * ainv;
    let mut poch = s;
    let mut dpoch = Cx::one();
    let mut fact = T::from_i64(2); // (2k)!
    let kmax = p.bern_order / 2;
    for k in 1..=kmax {
        if k > 1 {
            let u = s + Cx::from_i64(2 * k as i64 - 3);
            let v = s + Cx::from_i64(2 * k as i64 - 2);
            dpoch = dpoch * u * v + poch * (u + v);
            poch = poch * u * v;
            fact = fact * T::from_i64((2 * k as i64 - 1) * 2 * k as i64);
        }
        let bfac = bernoulli::<T>(k) / fact;
        let base = apow.scale(bfac);
        val = val + base * poch;
        der = der + base * (dpoch - la * poch);
        apow = apow * ainv2;
    }

    // First omitted term as the error estimate.
    let k = kmax + 1;
    let u = s + Cx::from_i64(2 * k as i64 - 3);
    let v = s + Cx::from_i64(2 * k as i64 - 2);
    let dpoch_n = dpoch * u * v + poch * (u + v);
    let poch_n = poch * u * v;
    let fact_n = fact * T::from_i64((2 * k as i64 - 1) * 2 * k as i64);
    let bfac = bernoulli::<T>(k) / fact_n;
    let base = apow.scale(bfac);
    let est_v = (base * poch_n).abs().to_f64();
    let est_d = (base * (dpoch_n - la * poch_n)).abs().to_f64();

    (val, der, est_v.max(est_d))
}

/// Coefficients `beta_j(w)` of the weight expansion
/// `binom(n+r-1, r-1) = sum_{j<r} beta_j(w) (n+w)^j`,
/// obtained by expanding `prod_{i=1}^{r-1} (m + i - w) / (r-1)!` in `m = n+w`.
pub(crate) fn binom_shift<T: Real>(r: u32, w: Cx<T>) -> Vec<Cx<T>> {
    let mut coeffs = vec![Cx::<T>::one()];
    for i in 1..r as i64 {
        let c = Cx::from_i64(i) - w;
        let mut next = vec![Cx::<T>::zero(); coeffs.len() + 1];
        for (j, &a) in coeffs.iter().enumerate() {
            next[j] = next[j] + a * c;
            next[j + 1] = next[j + 1] + a;
        }
        coeffs = next;
    }
    let mut fact = T::one();
    for i in 2..r as i64 {
        fact = fact * T::from_i64(i);
    }
    let inv = T::one() / fact;
    coeffs.into_iter().map(|c| c.scale(inv)).collect()
}

/// log Gamma_r(w): the s-derivative at 0 of the level-r zeta sum, assembled
/// as `sum_j beta_j(w) zeta'(-j, w)`.
pub(crate) fn log_gamma_r<T: Real>(r: u32, w: Cx<T>, p: &EmParams) -> (Cx<T>, f64) {
    let betas = binom_shift(r, w);
    let mut acc = Cx::zero();
    let mut err = 0.0f64;
    for (j, beta) in betas.into_iter().enumerate() {
        let (_, ds, e) = hurwitz_pair(Cx::from_i64(-(j as i64)), w, p);
        acc = acc + beta * ds;
        err += beta.abs().to_f64() * e;
    }
    (acc, err)
}

/// log S_r(w) = -log Gamma_r(w) + (-1)^r log Gamma_r(r - w), for w inside the
/// strip 0 < Re(w) < r (both gamma arguments then sit in Re > 0).
pub(crate) fn log_sine_strip<T: Real>(r: u32, w: Cx<T>, p: &EmParams) -> (Cx<T>, f64) {
    let (g1, e1) = log_gamma_r(r, w, p);
    let (g2, e2) = log_gamma_r(r, Cx::from_i64(r as i64) - w, p);
    let v = if r.is_multiple_of(2) { g2 - g1 } else { -g1 - g2 };
    (v, e1 + e2)
}
