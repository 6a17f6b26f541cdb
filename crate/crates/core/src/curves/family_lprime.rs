use crate::curves::quadratic::{solve_quadratic, QuadraticRoot, Root};
use crate::curves::{Curve, Intersection};
use crate::ratcore::{Point, Rational};
use crate::{Error, Result};

/// Curve `(λ₃a + λ₁x)(b + y) = (λ₄b + λ₂y)(a + x)`.
///
/// For representatives `(a, λ₃a)` and `(b, λ₄b)` a grid point `(x, y)` lies on
/// it exactly when `(a, λ₃a) + (x, λ₁x)` and `(b, λ₄b) + (y, λ₂y)` have the
/// same slope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveLPrime {
    a: Rational,
    b: Rational,
    lams: [Rational; 4],
}

impl CurveLPrime {
    /// `lams = [λ₁, λ₂, λ₃, λ₄]`; requires `λ₃ != λ₄`.
    pub fn new(a: Rational, b: Rational, lams: [Rational; 4]) -> Result<Self> {
        if lams[2] == lams[3] {
            return Err(Error::InvalidCurve("λ₃ and λ₄ must differ"));
        }
        Ok(CurveLPrime { a, b, lams })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn lams(&self) -> &[Rational; 4] {
        &self.lams
    }

    /// Written as `αxy + βx + γy + δ = 0` the curve splits into lines iff
    /// `αδ - βγ = ab(λ₁-λ₃)(λ₂-λ₄)` vanishes.
    pub fn is_reducible(&self) -> bool {
        let [l1, l2, l3, l4] = &self.lams;
        self.a.is_zero() || self.b.is_zero() || l1 == l3 || l2 == l4
    }

    /// The `y` with `(x, y)` on the curve, when unique.
    ///
    /// Rearranged: `y (x(λ₁-λ₂) + a(λ₃-λ₂)) = -(x b(λ₁-λ₄) + ab(λ₃-λ₄))`.
    pub fn solve_y(&self, x: &Rational) -> Option<Rational> {
        let [l1, l2, l3, l4] = &self.lams;
        let den = x * (l1 - l2) + &self.a * (l3 - l2);
        if den.is_zero() {
            return None;
        }
        Some(-(x * &self.b * (l1 - l4) + &self.a * &self.b * (l3 - l4)) / den)
    }
}

impl Curve for CurveLPrime {
    const PAIR_BOUND: usize = 2;

    fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let [l1, l2, l3, l4] = &self.lams;
        (l3 * &self.a + l1 * x) * (&self.b + y) == (l4 * &self.b + l2 * y) * (&self.a + x)
    }
}

/// Parameters of a curve through two given points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSolution {
    Params {
        a: Rational,
        b: Rational,
    },
    /// The two irrational roots in `b` come as a pair of markers.
    Irrational(QuadraticRoot),
}

/// All common points of two distinct curves sharing `(λ₁, λ₂, λ₃, λ₄)`.
///
/// Rearranging each curve as `x {y(λ₁-λ₂) + b(λ₁-λ₄)} = a {y(λ₂-λ₃) + b(λ₄-λ₃)}`
/// and equating the two expressions for `x` gives a quadratic in `y`. For
/// distinct irreducible curves it never vanishes identically, which is
/// checked rather than assumed.
pub fn intersect_lprime(c1: &CurveLPrime, c2: &CurveLPrime) -> Result<Vec<Intersection>> {
    if c1.lams != c2.lams {
        return Err(Error::MismatchedFamily);
    }
    if c1 == c2 {
        return Err(Error::IdenticalCurves);
    }
    if c1.is_reducible() || c2.is_reducible() {
        return Err(Error::ReducibleCurve("need ab(λ₁-λ₃)(λ₂-λ₄) != 0"));
    }
    let [l1, l2, l3, l4] = &c1.lams;
    let (a, b) = (&c1.a, &c1.b);
    let (a2, b2) = (&c2.a, &c2.b);
    let d12 = l1 - l2;
    let d23 = l2 - l3;
    let d14 = l1 - l4;
    let d43 = l4 - l3;

    let quad = (a - a2) * &d12 * &d23;
    let lin =
        a * b2 * &d14 * &d23 + a * b * &d12 * &d43 - a2 * b * &d23 * &d14 - a2 * b2 * &d43 * &d12;
    let constant = (a - a2) * b * b2 * &d43 * &d14;

    let roots = solve_quadratic(&quad, &lin, &constant)
        .map_err(|_| Error::Degenerate("intersection quadratic vanishes for distinct curves"))?;

    let x_on = |a: &Rational, b: &Rational, y: &Rational| -> Option<Rational> {
        let den = y * &d12 + b * &d14;
        if den.is_zero() {
            return None;
        }
        Some(a * (y * &d23 + b * &d43) / den)
    };

    let mut out = Vec::with_capacity(2);
    for root in roots {
        match root {
            Root::Rational(y) => {
                // A vanishing denominator means the curve misses this y entirely.
                let (Some(x), Some(x2)) = (x_on(a, b, &y), x_on(a2, b2, &y)) else {
                    continue;
                };
                if x != x2 {
                    return Err(Error::Invariant(format!(
                        "intersection x-coordinates disagree: {x} vs {x2}"
                    )));
                }
                out.push(Intersection::Point(Point::new(x, y)));
            }
            Root::Irrational(q) => out.push(Intersection::Irrational(q)),
        }
    }
    Ok(out)
}

/// All `(a, b)` whose curve (with slopes `lams`) passes through both `p` and `q`.
///
/// Each incidence reads `a {b(λ₃-λ₄) + y(λ₃-λ₂)} = b x(λ₄-λ₁) + xy(λ₂-λ₁)`;
/// equating the two expressions for `a` gives a quadratic in `b`.
pub fn curves_through_pair_lprime(
    p: &Point,
    q: &Point,
    lams: &[Rational; 4],
) -> Result<Vec<PairSolution>> {
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    for c in [&p.x, &p.y, &q.x, &q.y] {
        if !c.is_positive() {
            return Err(Error::NonPositive(c.clone()));
        }
    }
    let [l1, l2, l3, l4] = lams;
    if l3 == l4 {
        return Err(Error::InvalidCurve("λ₃ and λ₄ must differ"));
    }
    let (x0, y0, x1, y1) = (&p.x, &p.y, &q.x, &q.y);
    let d34 = l3 - l4;
    let d41 = l4 - l1;
    let d21 = l2 - l1;
    let d32 = l3 - l2;

    let quad = (x0 - x1) * &d34 * &d41;
    let lin = (x0 * y0 - x1 * y1) * &d21 * &d34 - (x1 * y0 - x0 * y1) * &d41 * &d32;
    let constant = y0 * y1 * &d32 * &d21 * (x0 - x1);

    let roots = solve_quadratic(&quad, &lin, &constant)
        .map_err(|_| Error::Degenerate("pair quadratic vanishes for distinct points"))?;

    // a = (b x(λ₄-λ₁) + xy(λ₂-λ₁)) / (b(λ₃-λ₄) + y(λ₃-λ₂))
    let a_for = |x: &Rational, y: &Rational, b: &Rational| -> Result<Option<Rational>> {
        let den = b * &d34 + y * &d32;
        let num = b * x * &d41 + x * y * &d21;
        if den.is_zero() {
            if num.is_zero() {
                return Err(Error::Degenerate("every a fits: λ₁ = λ₃ or λ₂ = λ₄"));
            }
            return Ok(None);
        }
        Ok(Some(num / den))
    };

    let mut out = Vec::with_capacity(2);
    for root in roots {
        match root {
            Root::Rational(b) => {
                let (Some(a0), Some(a1)) = (a_for(x0, y0, &b)?, a_for(x1, y1, &b)?) else {
                    continue;
                };
                if a0 != a1 {
                    return Err(Error::Invariant(format!(
                        "pair solutions disagree: a = {a0} vs {a1}"
                    )));
                }
                out.push(PairSolution::Params { a: a0, b });
            }
            Root::Irrational(r) => out.push(PairSolution::Irrational(r)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rat;

    fn lams(v: [i64; 4]) -> [Rational; 4] {
        v.map(Rational::from)
    }

    fn curve(a: i64, b: i64, l: [i64; 4]) -> CurveLPrime {
        CurveLPrime::new(a.into(), b.into(), lams(l)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let c = curve(1, 1, [1, 2, 3, 4]);
        assert!(!c.contains(&rat(0, 1), &rat(0, 1)));
        // x = 1 is the vertical asymptote of this curve.
        assert_eq!(c.solve_y(&rat(1, 1)), None);
        let y = c.solve_y(&rat(2, 1)).unwrap();
        assert!(c.contains(&rat(2, 1), &y));
    }

    #[test]
    fn equal_inner_slopes_rejected() {
        assert!(CurveLPrime::new(rat(1, 1), rat(1, 1), lams([1, 2, 3, 3])).is_err());
    }

    #[test]
    fn identical_rejected() {
        let c = curve(1, 1, [1, 2, 3, 4]);
        assert_eq!(
            intersect_lprime(&c, &c.clone()),
            Err(Error::IdenticalCurves)
        );
    }

    #[test]
    fn swapped_parameters_meet_in_at_most_two_points() {
        let c1 = curve(1, 2, [1, 2, 3, 4]);
        let c2 = curve(2, 1, [1, 2, 3, 4]);
        let pts = intersect_lprime(&c1, &c2).unwrap();
        assert!(pts.len() <= 2);
        for p in pts {
            if let Intersection::Point(p) = p {
                assert!(c1.contains(&p.x, &p.y) && c2.contains(&p.x, &p.y));
            }
        }
    }

    #[test]
    fn pair_solutions_pass_through_both_points() {
        let p = Point::new(rat(1, 1), rat(2, 1));
        let q = Point::new(rat(2, 1), rat(1, 1));
        let l = lams([1, 2, 3, 4]);
        let sols = curves_through_pair_lprime(&p, &q, &l).unwrap();
        assert!(!sols.is_empty() && sols.len() <= 2);
        for s in sols {
            if let PairSolution::Params { a, b } = s {
                let c = CurveLPrime::new(a, b, l.clone()).unwrap();
                assert!(c.contains(&p.x, &p.y) && c.contains(&q.x, &q.y));
            }
        }
    }

    #[test]
    fn pair_rejects_equal_points() {
        let p = Point::new(rat(1, 1), rat(1, 1));
        assert_eq!(
            curves_through_pair_lprime(&p, &p.clone(), &lams([1, 2, 3, 4])),
            Err(Error::IdenticalPoints)
        );
    }

    #[test]
    fn vertical_pair_keeps_quadratic_nonzero() {
        // x₀ = x₁ kills the b² coefficient; the linear one must survive for y₀ != y₁.
        let p = Point::new(rat(3, 1), rat(1, 1));
        let q = Point::new(rat(3, 1), rat(5, 2));
        let sols = curves_through_pair_lprime(&p, &q, &lams([1, 2, 3, 4])).unwrap();
        assert!(sols.len() <= 2);
    }
}
