//! Exact scalars, finite rational sets and the slope decomposition of `A x A`.

mod rational;
mod set;
mod slopes;

pub use rational::{rat, Rational};
pub use set::{ratio_set, sumset, RatSet};
pub use slopes::{slope_of_sum, Point, SlopeDecomposition};

use crate::{Error, Result};

/// Build a rational from integer parts, rejecting a zero denominator.
pub fn make_rational(num: i64, den: i64) -> Result<Rational> {
    Rational::new(num, den)
}

/// `A_λ` for every slope of the grid `A x A`.
pub fn slope_decomposition(a: &RatSet) -> Result<SlopeDecomposition> {
    SlopeDecomposition::new(a)
}

/// Reject empty sets and sets with a nonpositive element.
pub fn require_positive(a: &RatSet) -> Result<()> {
    match a.min() {
        None => Err(Error::EmptySet),
        Some(m) if !m.is_positive() => Err(Error::NonPositive(m.clone())),
        Some(_) => Ok(()),
    }
}
