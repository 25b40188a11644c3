//! Sample grids.

use std::f64::consts::PI;

/// Chebyshev nodes of the first kind mapped into the open interval (a, b).
/// They cluster towards both ends and never touch them.
pub fn chebyshev(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (0..n).map(|k| mid - half * ((n as f64 - (2 * k + 1) as f64) * PI / (2 * n) as f64).sin()).collect()
}

/// `n ≥ 2` evenly spaced points including both ends; symmetric ranges with
/// odd `n` hit 0 exactly.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let d = (n - 1) as f64;
    (0..n).map(|i| (a * (d - i as f64) + b * i as f64) / d).collect()
}

/// `n ≥ 2` logarithmically spaced points between positive `a` and `b`.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    linspace(la, lb, n).into_iter().map(f64::exp).collect()
}
