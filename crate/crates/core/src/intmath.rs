//! Exact integer helpers for fractional-power thresholds.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::Rational;

/// `floor(value^(1/k))` by binary search.
pub fn floor_root(value: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root index must be positive");
    if value.is_zero() || k == 1 {
        return value.clone();
    }
    // 2^(ceil(bits/k)) is an upper bound for the root.
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << (value.bits().div_ceil(k as u64) as usize);
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if Pow::pow(&mid, k) <= *value {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if Pow::pow(&hi, k) <= *value {
        hi
    } else {
        lo
    }
}

/// `floor(c * t^(1/k))` for a positive rational `c` and integer `t >= 0`.
///
/// `m <= c t^(1/k)` iff `m^k <= c^k t`, so this is the integer `k`-th root of
/// `floor(c^k t)`.
pub fn floor_scaled_root(c: &Rational, t: u64, k: u32) -> u64 {
    if !c.is_positive() {
        return 0;
    }
    let scaled = c.pow(k) * Rational::from(t);
    let floor = scaled.floor();
    let root = floor_root(&floor.to_biguint().unwrap_or_default(), k);
    root.to_u64().unwrap_or(u64::MAX)
}

/// `base^e1 <= other^e2` exactly.
pub fn pow_le(base: u64, e1: u32, other: u64, e2: u32) -> bool {
    Pow::pow(BigUint::from(base), e1) <= Pow::pow(BigUint::from(other), e2)
}

/// `ceil(log2(n))` for `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Truncated decimal rendering of a nonnegative rational with `places` digits.
pub fn decimal_string(value: &Rational, places: u32) -> String {
    let scale = Pow::pow(BigInt::from(10u32), places);
    let scaled = (value * Rational::from(scale.clone())).floor();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let scaled = scaled.abs();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = places as usize
    )
}
