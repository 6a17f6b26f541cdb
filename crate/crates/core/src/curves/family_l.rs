use crate::curves::{Curve, Intersection};
use crate::ratcore::{Point, Rational};
use crate::{Error, Result};

/// Curve `(λa + λ₁x)(a + y) = (λa + λ₂y)(a + x)` attached to the grid point
/// `(a, λa)`.
///
/// A point `(x, y)` lies on it exactly when `(a, λa) + (x, λ₁x)` and
/// `(a, λa) + (y, λ₂y)` have the same slope (for positive coordinates).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveL {
    a: Rational,
    lam: Rational,
    lam1: Rational,
    lam2: Rational,
}

impl CurveL {
    pub fn new(a: Rational, lam: Rational, lam1: Rational, lam2: Rational) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::InvalidCurve("a must be positive"));
        }
        if lam1 == lam2 {
            return Err(Error::InvalidCurve("λ₁ and λ₂ must differ"));
        }
        Ok(CurveL { a, lam, lam1, lam2 })
    }

    /// The curve of grid point `p = (a, λa)`.
    pub fn through(p: &Point, lam1: &Rational, lam2: &Rational) -> Result<Self> {
        CurveL::new(p.x.clone(), p.slope()?, lam1.clone(), lam2.clone())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn lam(&self) -> &Rational {
        &self.lam
    }

    pub fn lam1(&self) -> &Rational {
        &self.lam1
    }

    pub fn lam2(&self) -> &Rational {
        &self.lam2
    }

    /// The conic splits into two lines when `λ ∈ {λ₁, λ₂}`.
    pub fn is_reducible(&self) -> bool {
        self.lam == self.lam1 || self.lam == self.lam2
    }

    /// The `y` with `(x, y)` on the curve, when unique.
    ///
    /// Rearranged: `y (x(λ₁-λ₂) - a(λ₂-λ)) = -x a (λ₁-λ)`.
    pub fn solve_y(&self, x: &Rational) -> Option<Rational> {
        let den = x * (&self.lam1 - &self.lam2) - &self.a * (&self.lam2 - &self.lam);
        if den.is_zero() {
            return None;
        }
        Some(-(x * &self.a * (&self.lam1 - &self.lam)) / den)
    }
}

impl Curve for CurveL {
    const PAIR_BOUND: usize = 1;

    fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let lam_a = &self.lam * &self.a;
        (&lam_a + &self.lam1 * x) * (&self.a + y) == (&lam_a + &self.lam2 * y) * (&self.a + x)
    }
}

/// All common points of two distinct curves of one `(λ₁, λ₂)` family.
///
/// Both curves pass through the origin. Eliminating `x` leaves
/// `(λ₁-λ₂) y {y(a(λ₂-λ) - b(λ₂-λ')) + ab(λ'-λ)} = 0`, so apart from `y = 0`
/// there is at most one more `y`. A root where the denominator of
/// `x = a y (λ₂-λ) / (y(λ₁-λ₂) + a(λ₁-λ))` vanishes is not on the curve.
pub fn intersect_l(c1: &CurveL, c2: &CurveL) -> Result<Vec<Intersection>> {
    if c1.lam1 != c2.lam1 || c1.lam2 != c2.lam2 {
        return Err(Error::MismatchedFamily);
    }
    if c1 == c2 {
        return Err(Error::IdenticalCurves);
    }
    if c1.is_reducible() || c2.is_reducible() {
        return Err(Error::ReducibleCurve("λ coincides with λ₁ or λ₂"));
    }
    let (a, lam) = (&c1.a, &c1.lam);
    let (b, lam_p) = (&c2.a, &c2.lam);
    let (l1, l2) = (&c1.lam1, &c1.lam2);

    // y = 0 forces x a (λ₁-λ) = 0, and λ ≠ λ₁, so x = 0.
    let mut out = vec![Intersection::Point(Point::origin())];

    let coeff = a * (l2 - lam) - b * (l2 - lam_p);
    let constant = a * b * (lam_p - lam);
    if coeff.is_zero() {
        if constant.is_zero() {
            // λ = λ' and then a = b: the same curve, excluded above.
            return Err(Error::Degenerate(
                "linear factor vanishes for distinct curves",
            ));
        }
        return Ok(out);
    }
    let y = -(constant / coeff);
    if y.is_zero() {
        return Ok(out);
    }
    let den1 = &y * (l1 - l2) + a * (l1 - lam);
    let den2 = &y * (l1 - l2) + b * (l1 - lam_p);
    if den1.is_zero() || den2.is_zero() {
        return Ok(out);
    }
    let x = a * &y * (l2 - lam) / den1;
    let x_other = b * &y * (l2 - lam_p) / den2;
    if x != x_other {
        return Err(Error::Invariant(format!(
            "intersection x-coordinates disagree: {x} vs {x_other}"
        )));
    }
    out.push(Intersection::Point(Point::new(x, y)));
    Ok(out)
}
