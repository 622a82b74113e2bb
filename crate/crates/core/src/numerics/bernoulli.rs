//! Exact Bernoulli numbers B_2 .. B_32 as integer fractions.
//!
//! Stored exactly so both scalar instantiations convert at their own
//! precision. B_32 exists only to price the first omitted tail term; the
//! correction sum itself stops at B_30.

use super::real::Real;

/// `BERNOULLI[k-1] = (num, den)` with `B_{2k} = num / den`, k = 1..=16.
pub(crate) const BERNOULLI: [(i64, i64); 16] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
];

/// Largest correction order `2K` the table supports (the K+1 tail estimate
/// needs one extra entry).
pub(crate) const MAX_BERNOULLI_ORDER: usize = 30;

pub(crate) fn bernoulli<T: Real>(k: usize) -> T {
    let (num, den) = BERNOULLI[k - 1];
    T::from_i64(num) / T::from_i64(den)
}
