use thiserror::Error;

/// Errors raised by the evaluation, admissibility and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("m = {0} lies within 1e-12 of a branch point (m = -1 or m = 1)")]
    AmbiguousBranch(f64),
    #[error("F has no positive zero for m = {0} (F is increasing for m < 0)")]
    NoPositiveRoot(f64),
    #[error("no linear asymptotic slope for m = {0}; F grows faster than linearly for m >= 1")]
    UnsupportedAsymptoticBranch(f64),
    #[error("x = {x} is outside the domain of the {branch} branch")]
    Domain { x: f64, branch: &'static str },
    #[error("x = {0} is not strictly inside the chart (x1, x2)")]
    ChartDomain(f64),
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("B has no sign change on the search interval")]
    NoRoots,
    #[error("B has a (numerically) double root at x = {0}")]
    DoubleRoot(f64),
    #[error("parameters are not admissible: {0:?}")]
    Inadmissible(crate::admissibility::Verdict),
    #[error("numerical routine failed: {0}")]
    Numerical(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
