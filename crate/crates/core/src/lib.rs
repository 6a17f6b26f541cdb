//! Exact machinery for lower bounds on the quotient set of sumsets
//! `(A+A)/(A+A) = {(a+b)/(c+d) : a,b,c,d in A, c+d != 0}`.
//!
//! Everything runs over exact rationals:
//!
//! * [`ratcore`] holds the scalar type, finite sets, sumsets, ratio sets and
//!   the decomposition of `A x A` into lines through the origin.
//! * [`oracle`] enumerates `(A+A)/(A+A)` by brute force.
//! * [`curves`] implements the two curve families used to bound overcounting,
//!   with exact intersection algebra and incidence checks.
//! * [`egt`] covers multipartite graphs and transversal cliques.
//! * [`pipeline`] builds certified witness sets, either from neighbouring
//!   lines or from the full clustered construction.
//!
//! Data-parallel loops use rayon when the `parallel` feature is enabled (the
//! default) and fall back to plain iterators otherwise. Results are identical
//! either way.

pub mod curves;
pub mod egt;
mod error;
pub mod exec;
pub mod intmath;
pub mod oracle;
pub mod pipeline;
pub mod ratcore;

pub use error::{Error, Result};
pub use ratcore::{Point, RatSet, Rational, SlopeDecomposition};
