//! Seeded test sets and random curve instances.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumquot::curves::{family_lprime, CurveLPrime, PointGrid};
use sumquot::ratcore::rat;
use sumquot::{RatSet, Rational};

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn require_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(bad("corpus size must be at least 1"));
    }
    Ok(())
}

/// `{start, start + step, …}` with `n` terms.
pub fn ap(start: &Rational, step: &Rational, n: usize) -> Result<RatSet, CliError> {
    require_n(n)?;
    if !start.is_positive() || !step.is_positive() {
        return Err(bad("ap needs a positive start and step"));
    }
    Ok((0..n).map(|i| start + step * Rational::from(i)).collect())
}

/// `{start, start·ratio, …}` with `n` terms.
pub fn gp(start: &Rational, ratio: &Rational, n: usize) -> Result<RatSet, CliError> {
    require_n(n)?;
    if !start.is_positive() || !ratio.is_positive() {
        return Err(bad("gp needs a positive start and ratio"));
    }
    if *ratio == Rational::one() && n > 1 {
        return Err(bad("gp ratio 1 repeats the start"));
    }
    let mut term = start.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(term.clone());
        term = &term * ratio;
    }
    Ok(RatSet::from_vec(out))
}

/// `n` distinct integers drawn uniformly from `1..=range`.
pub fn random(n: usize, range: usize, seed: u64) -> Result<RatSet, CliError> {
    require_n(n)?;
    if n > range {
        return Err(bad(format!(
            "cannot draw {n} distinct values from 1..={range}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample(&mut rng, range, n)
        .into_iter()
        .map(|i| Rational::from(i + 1))
        .collect())
}

/// A random `𝓛'` family with its grid.
#[derive(Clone, Debug)]
pub struct LPrimeInstance {
    pub lams: [Rational; 4],
    pub family: Vec<CurveLPrime>,
    pub grid: PointGrid,
}

fn int_set(rng: &mut ChaCha8Rng, max_len: usize, range: usize) -> RatSet {
    let len = rng.random_range(1..=max_len);
    sample(rng, range, len)
        .into_iter()
        .map(|i| Rational::from(i + 1))
        .collect()
}

/// Four distinct positive slopes `p/q` (`p ≤ 12`, `q ≤ 4`), parameter sets
/// of up to 5 integers each and a grid of at most `side × side` points.
pub fn random_lprime_instance(seed: u64, side: usize) -> Result<LPrimeInstance, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lams: Vec<Rational> = Vec::with_capacity(4);
    while lams.len() < 4 {
        let l = rat(rng.random_range(1..=12), rng.random_range(1..=4));
        if !lams.contains(&l) {
            lams.push(l);
        }
    }
    let lams: [Rational; 4] = lams.try_into().expect("four slopes");
    let a_set = int_set(&mut rng, 5, 20);
    let b_set = int_set(&mut rng, 5, 20);
    let xs = int_set(&mut rng, side, 3 * side);
    let ys = int_set(&mut rng, side, 3 * side);
    let family = family_lprime(&a_set, &b_set, &lams).map_err(CliError::Core)?;
    let grid = PointGrid::new(xs, ys).map_err(CliError::Core)?;
    Ok(LPrimeInstance { lams, family, grid })
}
