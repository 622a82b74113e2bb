// Generated by tools/refgen.py; do not edit by hand.
#![allow(clippy::approx_constant)] // (hi, lo) pairs; hi alone is the f64 constant
//
// Double-double constants are stored as (hi, lo) pairs with hi = fl(v)
// and lo = fl(v - hi); the pair carries ~107 bits of the true value.

pub(crate) const PI: (f64, f64) = (3.141592653589793, 1.2246467991473532e-16);
pub(crate) const FRAC_PI_2: (f64, f64) = (1.5707963267948966, 6.123233995736766e-17);
pub(crate) const LN_2: (f64, f64) = (0.6931471805599453, 2.3190468138462996e-17);

// INV_FACT[k] = 1/(k+2)!  for the exp and sin/cos Taylor tails.
pub(crate) const INV_FACT: [(f64, f64); 32] = [
    (0.5, 0.0), // 1/2!
    (0.16666666666666666, 9.25185853854297e-18), // 1/3!
    (0.041666666666666664, 2.3129646346357427e-18), // 1/4!
    (0.008333333333333333, 1.1564823173178714e-19), // 1/5!
    (0.001388888888888889, -5.300543954373577e-20), // 1/6!
    (0.0001984126984126984, 1.7209558293420705e-22), // 1/7!
    (2.48015873015873e-05, 2.1511947866775882e-23), // 1/8!
    (2.7557319223985893e-06, -1.858393274046472e-22), // 1/9!
    (2.755731922398589e-07, 2.3767714622250297e-23), // 1/10!
    (2.505210838544172e-08, -1.448814070935912e-24), // 1/11!
    (2.08767569878681e-09, -1.20734505911326e-25), // 1/12!
    (1.6059043836821613e-10, 1.2585294588752098e-26), // 1/13!
    (1.1470745597729725e-11, 2.0655512752830745e-28), // 1/14!
    (7.647163731819816e-13, 7.03872877733453e-30), // 1/15!
    (4.779477332387385e-14, 4.399205485834081e-31), // 1/16!
    (2.8114572543455206e-15, 1.6508842730861433e-31), // 1/17!
    (1.5619206968586225e-16, 1.1910679660273754e-32), // 1/18!
    (8.22063524662433e-18, 2.2141894119604265e-34), // 1/19!
    (4.110317623312165e-19, 1.4412973378659527e-36), // 1/20!
    (1.9572941063391263e-20, -1.3643503830087908e-36), // 1/21!
    (8.896791392450574e-22, -7.911402614872376e-38), // 1/22!
    (3.868170170630684e-23, -8.843177655482344e-40), // 1/23!
    (1.6117375710961184e-24, -3.6846573564509766e-41), // 1/24!
    (6.446950284384474e-26, -1.9330404233703465e-42), // 1/25!
    (2.4795962632247976e-27, -1.2953730964765229e-43), // 1/26!
    (9.183689863795546e-29, 1.4303150396787322e-45), // 1/27!
    (3.279889237069838e-30, 1.5117542744029879e-46), // 1/28!
    (1.1309962886447716e-31, 1.0498015412959506e-47), // 1/29!
    (3.7699876288159054e-33, 2.5870347832750324e-49), // 1/30!
    (1.216125041553518e-34, 5.586290567888806e-51), // 1/31!
    (3.8003907548547434e-36, 1.7457158024652518e-52), // 1/32!
    (1.151633562077195e-37, -6.09957445788454e-54), // 1/33!
];
