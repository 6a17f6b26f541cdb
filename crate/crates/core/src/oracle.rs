//! Brute-force ground truth for `|(A+A)/(A+A)|`.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::intmath::{ceil_log2, decimal_string, floor_root};
use crate::ratcore::{ratio_set, require_positive, RatSet, Rational};
use crate::{exec, Result};

/// Digits of the fixed-point 25th root used for `main1_ratio`.
const ROOT_DIGITS: u32 = 18;

/// `A + A` after scaling `A` by the lcm of its denominators. Scaling leaves
/// every ratio of sums unchanged and keeps the arithmetic in integers.
fn integer_sums(a: &RatSet) -> Vec<BigInt> {
    let scale = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = a.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
    let mut sums = HashSet::new();
    for (i, x) in scaled.iter().enumerate() {
        for y in &scaled[i..] {
            sums.insert(x + y);
        }
    }
    let mut sums: Vec<BigInt> = sums.into_iter().collect();
    sums.sort();
    sums
}

/// Exact `(A+A)/(A+A)`.
///
/// Enumerates ratios `s/t` over the sumset `S = A+A` with `t != 0`, which is
/// the same set as enumerating all quadruples but costs `|S|^2` divisions.
pub fn quotient_of_sums_exact(a: &RatSet) -> RatSet {
    let sums = integer_sums(a);
    let ratios = exec::collect_set(0..sums.len(), |i, acc| {
        let den = &sums[i];
        if den.is_zero() {
            return;
        }
        for num in &sums {
            acc.insert(Rational::new(num.clone(), den.clone()).expect("nonzero"));
        }
    });
    RatSet::from_vec(ratios.into_iter().collect())
}

/// Whether `w` lies in `(A+A)/(A+A)`, i.e. `w * t` is a sum for some nonzero sum `t`.
pub fn in_quotient_set(sums: &RatSet, w: &Rational) -> bool {
    sums.iter()
        .filter(|t| !t.is_zero())
        .any(|t| sums.contains(&(w * t)))
}

/// Repeated membership tests against one `(A+A)/(A+A)`.
///
/// `A` is first scaled by the lcm of its denominators, which leaves the
/// quotient set unchanged and makes every sum an integer. Then `u/v` (in
/// lowest terms) is a quotient iff some nonzero sum `t` has `v | t` and
/// `u t / v` is again a sum.
#[derive(Clone, Debug)]
pub struct QuotientMembership {
    sums: Vec<BigInt>,
    lookup: HashSet<BigInt>,
}

impl QuotientMembership {
    pub fn new(a: &RatSet) -> Self {
        let all = integer_sums(a);
        let lookup = all.iter().cloned().collect();
        let sums = all.into_iter().filter(|t| !t.is_zero()).collect();
        QuotientMembership { sums, lookup }
    }

    pub fn contains(&self, w: &Rational) -> bool {
        let (u, v) = (w.numer(), w.denom());
        self.sums
            .iter()
            .any(|t| t.is_multiple_of(v) && self.lookup.contains(&(u * (t / v))))
    }
}

/// Measured comparison of the exact quotient size with the known bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub n: usize,
    pub quotient_size: usize,
    pub ratio_set_size: usize,
    /// `quotient_size >= 2n^2 - 1`.
    pub antal_lhs_ok: bool,
    /// `quotient_size * |A:A|^(1/25) * ceil(log2 n) / n^(2 + 2/25)`, six
    /// truncated decimals.
    pub main1_ratio: String,
}

/// Requires a nonempty set of strictly positive rationals.
pub fn bound_report(a: &RatSet) -> Result<QuotientReport> {
    require_positive(a)?;
    let n = a.len();
    let quotient_size = quotient_of_sums_exact(a).len();
    let ratio_set_size = ratio_set(a).len();
    Ok(QuotientReport {
        n,
        quotient_size,
        ratio_set_size,
        antal_lhs_ok: quotient_size as u128 >= 2 * (n as u128).pow(2) - 1,
        main1_ratio: main1_ratio(quotient_size, ratio_set_size, n),
    })
}

/// `Q * R^(1/25) * L / n^(2+2/25) = (Q L / n^2) * (R / n^2)^(1/25)` with
/// `L = ceil(log2 n)`; the root is taken in fixed point with `ROOT_DIGITS`
/// decimals by integer binary search.
fn main1_ratio(quotient_size: usize, ratio_set_size: usize, n: usize) -> String {
    let log = ceil_log2(n as u64);
    let n_sq = BigUint::from(n) * BigUint::from(n);
    let scale = Pow::pow(BigUint::from(10u32), ROOT_DIGITS);
    let radicand = BigUint::from(ratio_set_size) * Pow::pow(&scale, 25u32) / &n_sq;
    let root = floor_root(&radicand, 25);
    let num = BigUint::from(quotient_size) * BigUint::from(log) * root;
    let den = n_sq * scale;
    let value = Rational::new(num, den).expect("n >= 1");
    decimal_string(&value, 6)
}
