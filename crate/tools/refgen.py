#!/usr/bin/env python3
"""Regenerate frozen reference tables for the numeric test suites.

Writes crates/core/src/numerics/dd_tables.rs (double-double constants and
transcendental-function test vectors) and prints reference values for the
special-function tests to stdout. Everything is computed with mpmath at
240-bit precision, far beyond the double-double target of ~31 digits, so
the frozen tables are trustworthy to the last printed digit.

Run from the repository root:  python3 tools/refgen.py
"""

from mpmath import mp, mpf, mpc, pi, ln, exp, sin, cos, atan2, sqrt, zeta, quad, tan

mp.prec = 240


def split(v):
    """Round v to the nearest f64 pair (hi, lo) with hi = fl(v), lo = fl(v - hi)."""
    hi = float(v)
    lo = float(v - mpf(hi))
    return hi, lo


def lit(x):
    """Format a float as a Rust f64 literal (repr round-trips exactly)."""
    s = repr(float(x))
    return s if ("." in s or "e" in s or "E" in s or "inf" in s or "nan" in s) else s + ".0"


def pair(v):
    hi, lo = split(v)
    return f"({lit(hi)}, {lit(lo)})"


def gen_dd_tables(path):
    lines = []
    w = lines.append
    w("// Generated by tools/refgen.py; do not edit by hand.")
    w("#![allow(clippy::approx_constant)] // (hi, lo) pairs; hi alone is the f64 constant")
    w("//")
    w("// Double-double constants are stored as (hi, lo) pairs with hi = fl(v)")
    w("// and lo = fl(v - hi); the pair carries ~107 bits of the true value.")
    w("")
    w(f"pub(crate) const PI: (f64, f64) = {pair(pi)};")
    w(f"pub(crate) const FRAC_PI_2: (f64, f64) = {pair(pi / 2)};")
    w(f"pub(crate) const LN_2: (f64, f64) = {pair(ln(2))};")
    w("")
    w("// INV_FACT[k] = 1/(k+2)!  for the exp and sin/cos Taylor tails.")
    kmax = 33
    w(f"pub(crate) const INV_FACT: [(f64, f64); {kmax - 1}] = [")
    fact = 2
    for k in range(2, kmax + 1):
        if k > 2:
            fact *= k
        else:
            fact = 2
        w(f"    {pair(mpf(1) / fact)}, // 1/{k}!")
    w("];")
    w("")
    w("#[cfg(test)]")
    w("pub(crate) mod vectors {")
    w("    // (input, expected_hi, expected_lo); inputs are exact f64 values.")

    exp_pts = [-35.5, -10.25, -1.1, -0.001, 0.0, 0.37, 2.5, 10.5, 30.75, 41.0]
    w(f"    pub(crate) const EXP: [(f64, f64, f64); {len(exp_pts)}] = [")
    for x in exp_pts:
        hi, lo = split(exp(mpf(x)))
        w(f"        ({lit(x)}, {lit(hi)}, {lit(lo)}),")
    w("    ];")

    ln_pts = [1e-6, 0.37, 1.0000001, 2.0, 76.0, 1e8, 3.5e15]
    w(f"    pub(crate) const LN: [(f64, f64, f64); {len(ln_pts)}] = [")
    for x in ln_pts:
        hi, lo = split(ln(mpf(x)))
        w(f"        ({lit(x)}, {lit(hi)}, {lit(lo)}),")
    w("    ];")

    trig_pts = [0.1, 0.37, 1.0, 2.2, 3.3, -7.7, 15.5, 31.4, 61.26]
    w(f"    pub(crate) const SIN: [(f64, f64, f64); {len(trig_pts)}] = [")
    for x in trig_pts:
        hi, lo = split(sin(mpf(x)))
        w(f"        ({lit(x)}, {lit(hi)}, {lit(lo)}),")
    w("    ];")
    w(f"    pub(crate) const COS: [(f64, f64, f64); {len(trig_pts)}] = [")
    for x in trig_pts:
        hi, lo = split(cos(mpf(x)))
        w(f"        ({lit(x)}, {lit(hi)}, {lit(lo)}),")
    w("    ];")

    at_pts = [(0.3, 0.9), (-0.5, 0.2), (1.0, -1.0), (-0.7, -0.1), (1e-8, 1.0), (5.0, 3.0)]
    w(f"    pub(crate) const ATAN2: [(f64, f64, f64, f64); {len(at_pts)}] = [")
    for y, x in at_pts:
        hi, lo = split(atan2(mpf(y), mpf(x)))
        w(f"        ({lit(y)}, {lit(x)}, {lit(hi)}, {lit(lo)}),")
    w("    ];")

    sq_pts = [2.0, 0.001, 12345.678, 1e14]
    w(f"    pub(crate) const SQRT: [(f64, f64, f64); {len(sq_pts)}] = [")
    for x in sq_pts:
        hi, lo = split(sqrt(mpf(x)))
        w(f"        ({lit(x)}, {lit(hi)}, {lit(lo)}),")
    w("    ];")
    w("}")
    w("")
    with open(path, "w") as f:
        f.write("\n".join(lines))
    print(f"wrote {path}")


# ---------------------------------------------------------------------------
# Independent implementation of the special functions under test.
# ---------------------------------------------------------------------------

def binom_shift_coeffs(r, w):
    """Coefficients beta_j with binom(n+r-1, r-1) = sum_j beta_j(w) (n+w)^j.

    Expands prod_{i=1}^{r-1} (m + (i - w)) / (r-1)!  in powers of m = n + w.
    """
    coeffs = [mpc(1)]
    for i in range(1, r):
        c = mpc(i) - w
        nxt = [mpc(0)] * (len(coeffs) + 1)
        for j, a in enumerate(coeffs):
            nxt[j] += a * c
            nxt[j + 1] += a
        coeffs = nxt
    fact = 1
    for i in range(2, r):
        fact *= i
    return [c / fact for c in coeffs]


def log_multiple_gamma(r, w):
    return sum(b * zeta(-j, w, 1) for j, b in enumerate(binom_shift_coeffs(r, w)))


def log_multiple_sine(r, w):
    return -log_multiple_gamma(r, w) + (-1) ** r * log_multiple_gamma(r, mpf(r) - w)


def cfmt(z, digits=40):
    z = mpc(z)
    return f"({mp.nstr(z.real, digits)}, {mp.nstr(z.imag, digits)})"


def print_reference_values():
    print("\n// ---- hurwitz zeta (value, then d/ds) ----")
    pts = [
        (mpc(2.5, 1.25), mpc(1.75, -0.5)),
        (mpc(-3, 0.7), mpc(0.85, 0.3)),
        (mpc(-15, 0), mpc(12.25, 0.7)),
        (mpc(0, 0), mpc(5.5, 0)),
        (mpc(-7, 0), mpc(0.31, 2.0)),
        (mpc(3.5, 0), mpc(0.02, 0)),
    ]
    for s, w in pts:
        v = zeta(s, w)
        d = zeta(s, w, 1)
        print(f"//   s={cfmt(s,6)} w={cfmt(w,6)}")
        print(f"        {cfmt(v)},")
        print(f"        {cfmt(d)},")

    print("\n// ---- log multiple gamma ----")
    for r, w in [(1, mpc(0.75)), (2, mpc(1.0)), (2, mpc(2.6, 0.3)), (3, mpc(1.2)),
                 (8, mpc(5.5, 0.7)), (16, mpc(12.4, 0.7)), (16, mpc(3.3, 0))]:
        print(f"//   r={r} w={cfmt(w,6)}")
        print(f"        {cfmt(log_multiple_gamma(r, w))},")

    print("\n// ---- log multiple sine ----")
    for r, w in [(1, mpc(0.3)), (2, mpc(0.7)), (2, mpc(1.3, 0.4)), (3, mpc(1.2)),
                 (4, mpc(3.1, -0.2)), (16, mpc(8.5, 0.3))]:
        print(f"//   r={r} w={cfmt(w,6)}")
        print(f"        {cfmt(log_multiple_sine(r, w))},")

    print("\n// ---- sanity: S_1(w) vs 2 sin(pi w) ----")
    for w in [mpc(0.3), mpc(0.71, 0.9)]:
        lhs = exp(log_multiple_sine(1, w))
        rhs = 2 * sin(pi * w)
        print(f"//   w={cfmt(w,6)}  |lhs-rhs|/|rhs| = {mp.nstr(abs(lhs-rhs)/abs(rhs), 3)}")

    print("\n// ---- sanity: ladder S_r(w)/S_r(w+1) = S_{r-1}(w) ----")
    for r, w in [(2, mpc(0.4, 0.2)), (3, mpc(1.1, -0.5)), (6, mpc(2.3, 1.0))]:
        lhs = exp(log_multiple_sine(r, w) - log_multiple_sine(r, w + 1))
        rhs = exp(log_multiple_sine(r - 1, w))
        print(f"//   r={r} w={cfmt(w,6)}  rel = {mp.nstr(abs(lhs-rhs)/abs(rhs), 3)}")

    print("\n// ---- plancherel integral int_0^(s-1/2) pi t tan(pi t) dt ----")
    for s in [mpf(0.6), mpf(0.75), mpf(0.9)]:
        q = quad(lambda t: pi * t * tan(pi * t), [0, s - mpf(0.5)])
        print(f"//   s={mp.nstr(s,4)}")
        print(f"        {mp.nstr(q, 40)},")

    print("\n// ---- surface gamma-factor identity at genus 2, s=0.75 ----")
    g = 2
    s = mpf(0.75)
    q = quad(lambda t: pi * t * tan(pi * t), [0, s - mpf(0.5)])
    lhs = exp((4 - 4 * g) * q)
    rhs = exp((2 - 2 * g) * (log_multiple_sine(2, s) + log_multiple_sine(2, s + 1)))
    print(f"//   rel diff = {mp.nstr(abs(lhs-rhs)/abs(rhs), 3)}")


if __name__ == "__main__":
    import os
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    gen_dd_tables(os.path.join(root, "crates/core/src/numerics/dd_tables.rs"))
    print_reference_values()
