use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use crate::ratcore::{RatSet, Rational};
use crate::{Error, Result};

/// A point of the plane with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(Rational::zero(), Rational::zero())
    }

    /// The point `(x, slope * x)` on the line of the given slope.
    pub fn on_line(slope: &Rational, x: &Rational) -> Self {
        Point::new(x.clone(), slope * x)
    }

    /// Slope of the line joining the point to the origin, `y / x`.
    pub fn slope(&self) -> Result<Rational> {
        self.y
            .checked_div(&self.x)
            .map_err(|_| Error::UndefinedSlope)
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Slope of `p + q` seen from the origin.
pub fn slope_of_sum(p: &Point, q: &Point) -> Result<Rational> {
    (p + q).slope()
}

/// Partition of the grid `A x A` into lines through the origin.
///
/// Each slope `λ` maps to `A_λ`, the x-coordinates of grid points on the line
/// `y = λx`, in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeDecomposition {
    lines: BTreeMap<Rational, RatSet>,
    n: usize,
}

impl SlopeDecomposition {
    /// Requires `0 ∉ A`.
    pub fn new(a: &RatSet) -> Result<Self> {
        if a.contains(&Rational::zero()) {
            return Err(Error::ContainsZero);
        }
        let mut buckets: BTreeMap<Rational, Vec<Rational>> = BTreeMap::new();
        for x in a {
            for y in a {
                buckets.entry(y / x).or_default().push(x.clone());
            }
        }
        let lines = buckets
            .into_iter()
            .map(|(slope, xs)| (slope, RatSet::from_vec(xs)))
            .collect();
        Ok(SlopeDecomposition { lines, n: a.len() })
    }

    /// `|A|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `|A:A|`.
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Slopes in ascending order.
    pub fn slopes(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.lines.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &RatSet)> + '_ {
        self.lines.iter()
    }

    /// `A_λ`, if `λ` is a slope of the grid.
    pub fn line(&self, slope: &Rational) -> Option<&RatSet> {
        self.lines.get(slope)
    }

    pub fn multiplicity(&self, slope: &Rational) -> usize {
        self.lines.get(slope).map_or(0, RatSet::len)
    }

    /// Grid points on the line, ordered by distance from the origin.
    pub fn points(&self, slope: &Rational) -> Vec<Point> {
        self.lines
            .get(slope)
            .map(|xs| xs.iter().map(|x| Point::on_line(slope, x)).collect())
            .unwrap_or_default()
    }

    pub fn total_points(&self) -> usize {
        self.lines.values().map(RatSet::len).sum()
    }
}
