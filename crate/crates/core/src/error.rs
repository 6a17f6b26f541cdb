use thiserror::Error;

use crate::ratcore::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid rational literal {0:?}")]
    BadLiteral(String),
    #[error("set contains zero")]
    ContainsZero,
    #[error("element {0} is not strictly positive")]
    NonPositive(Rational),
    #[error("set is empty")]
    EmptySet,
    #[error("need at least {needed} elements, got {got}")]
    TooFewElements { needed: usize, got: usize },
    #[error("slope undefined: point has zero first coordinate")]
    UndefinedSlope,
    #[error("invalid curve parameters: {0}")]
    InvalidCurve(&'static str),
    #[error("curves are identical")]
    IdenticalCurves,
    #[error("curves belong to different families (slope parameters differ)")]
    MismatchedFamily,
    #[error("reducible curve: {0}")]
    ReducibleCurve(&'static str),
    #[error("degenerate algebra: {0}")]
    Degenerate(&'static str),
    #[error("points coincide")]
    IdenticalPoints,
    #[error("duplicate curve at positions {0} and {1}")]
    DuplicateCurve(usize, usize),
    #[error("richness threshold k must be at least 2, got {0}")]
    RichnessTooSmall(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("missing representative for slope {0}")]
    MissingRepresentative(Rational),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
