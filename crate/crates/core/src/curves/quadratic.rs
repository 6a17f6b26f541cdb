use std::fmt;

use num_bigint::BigInt;

use crate::ratcore::Rational;
use crate::{Error, Result};

/// Symbolic irrational root `(-b + sign * sqrt(b^2 - 4ac)) / 2a` of a rational
/// quadratic. Only the coefficients are kept, so no real arithmetic is needed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticRoot {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl QuadraticRoot {
    pub fn discriminant(&self) -> Rational {
        discriminant(&self.a, &self.b, &self.c)
    }

    /// Floating-point value, for display only.
    pub fn approx(&self) -> f64 {
        let disc = self.discriminant().to_f64();
        (-self.b.to_f64() + f64::from(self.sign) * disc.sqrt()) / (2.0 * self.a.to_f64())
    }
}

impl fmt::Debug for QuadraticRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { '+' } else { '-' };
        write!(
            f,
            "root{s}[{}, {}, {}]≈{:.6}",
            self.a,
            self.b,
            self.c,
            self.approx()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Root {
    Rational(Rational),
    Irrational(QuadraticRoot),
}

fn discriminant(a: &Rational, b: &Rational, c: &Rational) -> Rational {
    b * b - Rational::from(4) * a * c
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let root = |v: &BigInt| {
        let r = v.sqrt();
        (&r * &r == *v).then_some(r)
    };
    let num = root(value.numer())?;
    let den = root(value.denom())?;
    Some(Rational::new(num, den).expect("positive denominator"))
}

/// Real roots of `a t^2 + b t + c = 0`, ascending where rational.
///
/// A double root is reported once; complex roots are dropped. All-zero
/// coefficients are an error because every `t` would be a root.
pub fn solve_quadratic(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<Root>> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                Err(Error::Degenerate("quadratic vanishes identically"))
            } else {
                Ok(Vec::new())
            };
        }
        return Ok(vec![Root::Rational(-(c / b))]);
    }
    let disc = discriminant(a, b, c);
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let two_a = Rational::from(2) * a;
    if disc.is_zero() {
        return Ok(vec![Root::Rational(-(b / &two_a))]);
    }
    match rational_sqrt(&disc) {
        Some(s) => {
            let mut roots = [(-b - &s) / &two_a, (-b + &s) / &two_a];
            roots.sort();
            Ok(roots.into_iter().map(Root::Rational).collect())
        }
        None => Ok([-1i8, 1]
            .into_iter()
            .map(|sign| {
                Root::Irrational(QuadraticRoot {
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    sign,
                })
            })
            .collect()),
    }
}
