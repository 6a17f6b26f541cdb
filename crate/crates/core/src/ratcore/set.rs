use std::fmt;

use crate::exec;
use crate::ratcore::Rational;

/// Finite set of rationals kept as a strictly increasing vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatSet {
    elements: Vec<Rational>,
}

impl RatSet {
    pub fn new() -> Self {
        RatSet::default()
    }

    /// Sorts and deduplicates.
    pub fn from_vec(mut elements: Vec<Rational>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        RatSet { elements }
    }

    pub fn from_ints(values: impl IntoIterator<Item = i64>) -> Self {
        values.into_iter().map(Rational::from).collect()
    }

    /// `{1, 2, ..., n}`.
    pub fn interval(n: u64) -> Self {
        RatSet {
            elements: (1..=n).map(Rational::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.elements.iter()
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.elements
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.elements.binary_search(value).is_ok()
    }

    /// Position of `value` in ascending order, if present.
    pub fn index_of(&self, value: &Rational) -> Option<usize> {
        self.elements.binary_search(value).ok()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.elements.first()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.elements.last()
    }

    pub fn is_subset(&self, other: &RatSet) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &RatSet) -> RatSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.elements);
        out.extend_from_slice(&other.elements);
        RatSet::from_vec(out)
    }

    pub fn intersection_len(&self, other: &RatSet) -> usize {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().filter(|x| large.contains(x)).count()
    }

    pub fn all_positive(&self) -> bool {
        self.min().is_none_or(Rational::is_positive)
    }
}

impl FromIterator<Rational> for RatSet {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RatSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a RatSet {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl fmt::Debug for RatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements.iter()).finish()
    }
}

/// `{a + b : a in A, b in B}`.
pub fn sumset(a: &RatSet, b: &RatSet) -> RatSet {
    let sums = exec::flat_map_range(0..a.len(), |i| {
        let x = &a.as_slice()[i];
        b.iter().map(|y| x + y).collect()
    });
    RatSet::from_vec(sums)
}

/// `{a / b : a, b in A, b != 0}`.
pub fn ratio_set(a: &RatSet) -> RatSet {
    let ratios = exec::flat_map_range(0..a.len(), |i| {
        let den = &a.as_slice()[i];
        if den.is_zero() {
            return Vec::new();
        }
        a.iter().map(|num| num / den).collect()
    });
    RatSet::from_vec(ratios)
}
