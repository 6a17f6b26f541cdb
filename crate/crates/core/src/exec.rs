//! Thin switch between rayon and sequential iteration.
//!
//! Every helper preserves input order, so callers get the same output with
//! or without the `parallel` feature.

use std::collections::HashSet;
use std::hash::Hash;
use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True when the crate was built with the `parallel` feature.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Configure the global worker pool. No-op without the `parallel` feature.
///
/// Fails if the pool was already initialised.
pub fn set_threads(threads: usize) -> crate::Result<()> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| crate::Error::InvalidParameter(format!("thread pool: {e}")))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(())
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Order-preserving map over an index range.
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(f).collect()
    }
}

/// Map each index to a batch of items and concatenate the batches in index order.
pub fn flat_map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Vec<R> + Sync + Send,
{
    map_range(range, f).into_iter().flatten().collect()
}

/// Accumulate per-index contributions into one hash set.
pub fn collect_set<T, F>(range: Range<usize>, f: F) -> HashSet<T>
where
    T: Eq + Hash + Send,
    F: Fn(usize, &mut HashSet<T>) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range
            .into_par_iter()
            .fold(HashSet::new, |mut acc, i| {
                f(i, &mut acc);
                acc
            })
            .reduce(HashSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.extend(b);
                a
            })
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut acc = HashSet::new();
        for i in range {
            f(i, &mut acc);
        }
        acc
    }
}
