//! The two curve families that turn overcounting into an incidence problem,
//! with exact membership, intersection algebra and exhaustive checks of the
//! incidence-bound preconditions.
//!
//! Both families are conics of the shape `αxy + βx + γy + δ = 0`, so two of
//! them meet in at most two points unless they coincide. The checks here
//! confirm that on concrete grids by direct counting, independently of the
//! algebra in [`intersect_l`] and [`intersect_lprime`].

mod family_l;
mod family_lprime;
pub mod quadratic;

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

pub use family_l::{intersect_l, CurveL};
pub use family_lprime::{curves_through_pair_lprime, intersect_lprime, CurveLPrime, PairSolution};
pub use quadratic::QuadraticRoot;

use crate::ratcore::{Point, RatSet, Rational};
use crate::{exec, Error, Result};

/// A plane curve with exact membership.
pub trait Curve: Clone + Debug + Eq + Hash + Send + Sync {
    /// Maximum number of grid points two distinct curves may share, and of
    /// distinct curves through two grid points.
    const PAIR_BOUND: usize;

    fn contains(&self, x: &Rational, y: &Rational) -> bool;

    fn contains_point(&self, p: &Point) -> bool {
        self.contains(&p.x, &p.y)
    }
}

/// One common point of two curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Point(Point),
    /// A real point with irrational coordinates; its `y` is the marked root.
    /// Never a grid point.
    Irrational(QuadraticRoot),
}

impl Intersection {
    pub fn as_point(&self) -> Option<&Point> {
        match self {
            Intersection::Point(p) => Some(p),
            Intersection::Irrational(_) => None,
        }
    }
}

/// Product grid `xs x ys` of strictly positive coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGrid {
    xs: RatSet,
    ys: RatSet,
}

impl PointGrid {
    pub fn new(xs: RatSet, ys: RatSet) -> Result<Self> {
        for c in xs.min().into_iter().chain(ys.min()) {
            if !c.is_positive() {
                return Err(Error::NonPositive(c.clone()));
            }
        }
        Ok(PointGrid { xs, ys })
    }

    pub fn xs(&self) -> &RatSet {
        &self.xs
    }

    pub fn ys(&self) -> &RatSet {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len() * self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major: `x` outer, `y` inner.
    pub fn points(&self) -> Vec<Point> {
        self.xs
            .iter()
            .flat_map(|x| {
                self.ys
                    .iter()
                    .map(move |y| Point::new(x.clone(), y.clone()))
            })
            .collect()
    }
}

/// Indices of grid points on each curve.
fn incidence_lists<C: Curve>(family: &[C], points: &[Point]) -> Vec<Vec<usize>> {
    exec::map(family, |c| {
        points
            .iter()
            .enumerate()
            .filter(|(_, p)| c.contains_point(p))
            .map(|(i, _)| i)
            .collect()
    })
}

/// Number of grid points on each curve.
pub fn incidence_counts<C: Curve>(family: &[C], grid: &PointGrid) -> Vec<usize> {
    let points = grid.points();
    exec::map(family, |c| {
        points.iter().filter(|p| c.contains_point(p)).count()
    })
}

/// Curves of `family` containing at least `k` grid points, in family order.
pub fn rich_curves<C: Curve>(family: &[C], grid: &PointGrid, k: usize) -> Result<Vec<C>> {
    if k < 2 {
        return Err(Error::RichnessTooSmall(k));
    }
    let counts = incidence_counts(family, grid);
    Ok(family
        .iter()
        .zip(counts)
        .filter(|(_, n)| *n >= k)
        .map(|(c, _)| c.clone())
        .collect())
}

/// Measured rich-curve counts against the shape `|P|²/k³ + |P|/k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RichProfile {
    pub grid_points: usize,
    /// `(k, |L_k|)` for `k = 2 ..= max incidence`.
    pub rows: Vec<(usize, usize)>,
    /// Smallest `c` with `|L_k| <= c (|P|²/k³ + |P|/k)` for every row.
    pub fitted_c: f64,
}

pub fn rich_profile<C: Curve>(family: &[C], grid: &PointGrid) -> RichProfile {
    let counts = incidence_counts(family, grid);
    let max = counts.iter().copied().max().unwrap_or(0);
    let p = grid.len() as f64;
    let rows: Vec<(usize, usize)> = (2..=max)
        .map(|k| (k, counts.iter().filter(|&&c| c >= k).count()))
        .collect();
    let fitted_c = rows
        .iter()
        .map(|&(k, n)| {
            let k = k as f64;
            n as f64 / (p * p / (k * k * k) + p / k)
        })
        .fold(0.0, f64::max);
    RichProfile {
        grid_points: grid.len(),
        rows,
        fitted_c,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsViolation {
    /// Two curves sharing more grid points than allowed.
    CurvePair {
        first: usize,
        second: usize,
        shared: Vec<Point>,
    },
    /// Two grid points covered by more curves than allowed.
    PointPair {
        p: Point,
        q: Point,
        curves: Vec<usize>,
    },
}

/// Outcome of the exhaustive precondition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsReport {
    pub curves: usize,
    pub grid_points: usize,
    pub bound: usize,
    pub max_shared_points: usize,
    pub max_curves_through_pair: usize,
    pub violation_count: usize,
    /// The first few violations, with witnesses.
    pub violations: Vec<PsViolation>,
}

impl PsReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const MAX_REPORTED_VIOLATIONS: usize = 16;

fn shared(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Check both incidence conditions on a concrete grid by counting:
/// every pair of curves shares at most `C::PAIR_BOUND` grid points, and
/// every pair of grid points lies on at most `C::PAIR_BOUND` curves.
pub fn verify_ps_conditions<C: Curve>(family: &[C], grid: &PointGrid) -> Result<PsReport> {
    let mut seen: HashMap<&C, usize> = HashMap::with_capacity(family.len());
    for (i, c) in family.iter().enumerate() {
        if let Some(&j) = seen.get(c) {
            return Err(Error::DuplicateCurve(j, i));
        }
        seen.insert(c, i);
    }
    let bound = C::PAIR_BOUND;
    let points = grid.points();
    let on_curve = incidence_lists(family, &points);

    let mut through_point: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for (ci, list) in on_curve.iter().enumerate() {
        for &pi in list {
            through_point[pi].push(ci);
        }
    }

    let curve_pairs: Vec<(usize, Option<PsViolation>)> =
        exec::flat_map_range(0..family.len(), |i| {
            ((i + 1)..family.len())
                .map(|j| {
                    let common = shared(&on_curve[i], &on_curve[j]);
                    let v = (common.len() > bound).then(|| PsViolation::CurvePair {
                        first: i,
                        second: j,
                        shared: common.iter().map(|&k| points[k].clone()).collect(),
                    });
                    (common.len(), v)
                })
                .collect()
        });
    let point_pairs: Vec<(usize, Option<PsViolation>)> =
        exec::flat_map_range(0..points.len(), |i| {
            ((i + 1)..points.len())
                .map(|j| {
                    let common = shared(&through_point[i], &through_point[j]);
                    let v = (common.len() > bound).then(|| PsViolation::PointPair {
                        p: points[i].clone(),
                        q: points[j].clone(),
                        curves: common.clone(),
                    });
                    (common.len(), v)
                })
                .collect()
        });

    let max_shared_points = curve_pairs.iter().map(|(n, _)| *n).max().unwrap_or(0);
    let max_curves_through_pair = point_pairs.iter().map(|(n, _)| *n).max().unwrap_or(0);
    let all: Vec<PsViolation> = curve_pairs
        .into_iter()
        .chain(point_pairs)
        .filter_map(|(_, v)| v)
        .collect();
    Ok(PsReport {
        curves: family.len(),
        grid_points: points.len(),
        bound,
        max_shared_points,
        max_curves_through_pair,
        violation_count: all.len(),
        violations: all.into_iter().take(MAX_REPORTED_VIOLATIONS).collect(),
    })
}

/// Family `𝓛` for slopes `(λ₁, λ₂)`: one curve per given point `(a, λa)`.
pub fn family_l(points: &[Point], lam1: &Rational, lam2: &Rational) -> Result<Vec<CurveL>> {
    points
        .iter()
        .map(|p| CurveL::through(p, lam1, lam2))
        .collect()
}

/// Family `𝓛'`: one curve per `(a, b) ∈ A_λ₃ x A_λ₄`.
pub fn family_lprime(
    a_set: &RatSet,
    b_set: &RatSet,
    lams: &[Rational; 4],
) -> Result<Vec<CurveLPrime>> {
    let mut out = Vec::with_capacity(a_set.len() * b_set.len());
    for a in a_set {
        for b in b_set {
            out.push(CurveLPrime::new(a.clone(), b.clone(), lams.clone())?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rat;

    fn grid(xs: &[i64], ys: &[i64]) -> PointGrid {
        PointGrid::new(
            RatSet::from_ints(xs.iter().copied()),
            RatSet::from_ints(ys.iter().copied()),
        )
        .unwrap()
    }

    #[test]
    fn grid_rejects_nonpositive() {
        assert!(PointGrid::new(RatSet::from_ints([0, 1]), RatSet::from_ints([1])).is_err());
    }

    #[test]
    fn rich_curves_on_empty_grid() {
        let g = PointGrid::new(RatSet::new(), RatSet::new()).unwrap();
        let fam = vec![CurveL::new(rat(1, 1), rat(1, 1), rat(2, 1), rat(3, 1)).unwrap()];
        assert!(rich_curves(&fam, &g, 2).unwrap().is_empty());
        assert_eq!(rich_curves(&fam, &g, 1), Err(Error::RichnessTooSmall(1)));
    }

    #[test]
    fn rich_curve_through_constructed_points() {
        // y = (2 + x) / (1 + 2x), positive for positive x.
        let c = CurveLPrime::new(rat(1, 1), rat(1, 1), [3, 1, 2, 4].map(Rational::from)).unwrap();
        let (xs, ys): (Vec<_>, Vec<_>) = (1..=6)
            .map(Rational::from)
            .map(|x| {
                let y = c.solve_y(&x).unwrap();
                (x, y)
            })
            .unzip();
        let g = PointGrid::new(RatSet::from_vec(xs), RatSet::from_vec(ys)).unwrap();
        let other =
            CurveLPrime::new(rat(5, 1), rat(7, 1), [3, 1, 2, 4].map(Rational::from)).unwrap();
        let fam = vec![c.clone(), other];
        assert_eq!(incidence_counts(&fam[..1], &g)[0], 6);
        assert_eq!(rich_curves(&fam, &g, 6).unwrap(), vec![c]);
    }

    #[test]
    fn single_curve_passes_vacuously() {
        let fam = vec![CurveL::new(rat(1, 1), rat(1, 1), rat(2, 1), rat(3, 1)).unwrap()];
        let r = verify_ps_conditions(&fam, &grid(&[1, 2], &[1, 2])).unwrap();
        assert!(r.passed());
        assert_eq!(r.max_shared_points, 0);
    }

    #[test]
    fn duplicates_rejected() {
        let c = CurveL::new(rat(1, 1), rat(1, 1), rat(2, 1), rat(3, 1)).unwrap();
        let fam = vec![c.clone(), c];
        assert_eq!(
            verify_ps_conditions(&fam, &grid(&[1], &[1])),
            Err(Error::DuplicateCurve(0, 1))
        );
    }

    #[test]
    fn violations_are_reported_with_witnesses() {
        // Horizontal(0) covers the whole grid, so it shares a full row with Horizontal(1).
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        struct Horizontal(i64);
        impl Curve for Horizontal {
            const PAIR_BOUND: usize = 1;
            fn contains(&self, _x: &Rational, y: &Rational) -> bool {
                *y == Rational::from(self.0) || self.0 == 0
            }
        }
        let fam = vec![Horizontal(0), Horizontal(1)];
        let r = verify_ps_conditions(&fam, &grid(&[1, 2, 3], &[1, 2])).unwrap();
        assert!(!r.passed());
        assert_eq!(r.max_shared_points, 3);
        assert!(matches!(
            r.violations[0],
            PsViolation::CurvePair {
                first: 0,
                second: 1,
                ..
            }
        ));
    }
}
