//! Which parameters close up smoothly on S², where the poles sit, and the
//! threshold constant c₀ for m > 0, λ < 0.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{linspace, logspace};
use crate::numeric::{brent, golden_section};
use crate::profile::{ModelParams, Profile};
use crate::specfun::{HypParam, MClass};

const POSITIVITY_SAMPLES: usize = 512;
const MAX_DOUBLINGS: i32 = 30;
const C0_SCAN_POINTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    Ok,
    NonzeroB,
    CNotInRange,
    LambdaSignForbidden,
    MZero,
    NoRoots,
    DoubleRoot,
}

/// The set of admissible c for fixed (m, λ): empty or an open interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdmissibleRange {
    Empty,
    Open { lower: f64, upper: f64 },
}

impl AdmissibleRange {
    pub fn contains(&self, c: f64) -> bool {
        match *self {
            Self::Empty => false,
            Self::Open { lower, upper } => c > lower && c < upper,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }
}

impl fmt::Display for AdmissibleRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Empty => write!(f, "empty"),
            Self::Open { lower, upper } => write!(f, "({}, {})", fmt_bound(lower), fmt_bound(upper)),
        }
    }
}

fn fmt_bound(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub admissible: bool,
    pub reason: Reason,
    pub c_range: AdmissibleRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C0Result {
    pub x0: f64,
    pub xmin: f64,
    pub c0: f64,
}

/// Adjacent simple zeros x1 < x2 of B with B > 0 between them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootPair {
    pub x1: f64,
    pub x2: f64,
    pub db1: f64,
    pub db2: f64,
    pub period: f64,
}

impl RootPair {
    pub fn new(x1: f64, x2: f64, db1: f64, db2: f64) -> Self {
        Self { x1, x2, db1, db2, period: 4.0 * PI / db1.abs() }
    }

    /// |B′(x1) + B′(x2)|: zero exactly when both poles admit the same period.
    pub fn smoothness_defect(&self) -> f64 {
        (self.db1 + self.db2).abs()
    }
}

/// (x² + 1)^{m/2+1} / |F(x)|, the quantity minimised to obtain c₀.
pub fn c0_objective(hyp: &HypParam, x: f64) -> f64 {
    (1.0 + x * x).powf(0.5 * hyp.m() + 1.0) / hyp.f(x).abs()
}

/// c₀ = min over x > x₀ of (x² + 1)^{m/2+1}/|F(x)|, for m > 0.
pub fn compute_c0(m: f64) -> Result<C0Result> {
    if m.is_nan() || m <= 0.0 {
        return Err(Error::InvalidParameter(format!("c0 is defined for m > 0 only, got {m}")));
    }
    let hyp = HypParam::new(m)?;
    let x0 = hyp.positive_root()?;
    let objective = |x: f64| c0_objective(&hyp, x);

    let grid = logspace(x0 * (1.0 + 1e-6), x0 * 1e4, C0_SCAN_POINTS);
    let values: Vec<f64> = grid.iter().map(|&x| objective(x)).collect();
    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .ok_or(Error::Numerical("empty c0 scan"))?;
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let (mut xmin, _) = golden_section(objective, lo, hi, 1e-10 * hi);

    // polish on (1 + x²)F′ − (m + 2)xF = 0
    let stationarity = |x: f64| {
        let fv = hyp.eval(x);
        (1.0 + x * x) * fv.f_prime - (m + 2.0) * x * fv.f
    };
    if stationarity(lo) < 0.0 && stationarity(hi) > 0.0 {
        xmin = brent(stationarity, lo, hi, 0.0)?;
    }
    Ok(C0Result { x0, xmin, c0: objective(xmin) })
}

/// The open interval of admissible c for fixed (m, λ).
pub fn admissible_c_range(m: f64, lambda: f64) -> Result<AdmissibleRange> {
    if m == 0.0 || !m.is_finite() {
        return Err(Error::InvalidParameter(format!("m must be finite and nonzero, got {m}")));
    }
    let class = HypParam::new(m)?.class();
    let inf = f64::INFINITY;
    let range = match class {
        MClass::Positive => {
            if lambda == 0.0 {
                AdmissibleRange::Open { lower: 0.0, upper: inf }
            } else if lambda > 0.0 {
                AdmissibleRange::Open { lower: lambda / (m + 1.0), upper: inf }
            } else {
                let c0 = compute_c0(m)?.c0;
                AdmissibleRange::Open { lower: lambda.abs() * c0 / (m + 1.0), upper: inf }
            }
        }
        MClass::BetweenMinusOneAndZero if lambda > 0.0 => {
            AdmissibleRange::Open { lower: lambda / (m + 1.0), upper: inf }
        }
        MClass::MinusOne if lambda > 0.0 => AdmissibleRange::Open { lower: 0.0, upper: inf },
        MClass::BelowMinusOne if lambda > 0.0 => AdmissibleRange::Open { lower: lambda / (m + 1.0), upper: 0.0 },
        _ => AdmissibleRange::Empty,
    };
    Ok(range)
}

/// Decides whether (m, λ, c, b) gives a smooth metric on S².
pub fn classify(m: f64, lambda: f64, c: f64, b: f64) -> Result<Verdict> {
    if m == 0.0 {
        return Ok(Verdict { admissible: false, reason: Reason::MZero, c_range: AdmissibleRange::Empty });
    }
    let c_range = admissible_c_range(m, lambda)?;
    let reason = if b != 0.0 {
        Reason::NonzeroB
    } else if c_range.is_empty() {
        Reason::LambdaSignForbidden
    } else if !c_range.contains(c) {
        Reason::CNotInRange
    } else {
        Reason::Ok
    };
    Ok(Verdict { admissible: reason == Reason::Ok, reason, c_range })
}

/// Locates the symmetric pole pair ±x2 of an even, non-closed profile.
///
/// With P = B (1 + x²)^{m/2}/x one has P′ = −(1 + x²)^{m/2}(α + λx²)/x², so
/// for α = B(0) > 0 the function P has at most one critical point on x > 0,
/// at x² = α/|λ| when λ < 0. That fixes where the first positive zero can be.
pub fn find_roots(profile: &Profile) -> Result<RootPair> {
    if !profile.is_even_sphere_family() {
        return Err(Error::NotApplicable("find_roots needs b = 0 and beta = 1"));
    }
    let lambda = profile.params().lambda;
    let alpha = profile.alpha().0;
    if alpha <= 0.0 {
        return Err(Error::NoRoots);
    }
    let b = |x: f64| profile.value(x).expect("non-closed profiles are defined on all of R");

    let (lo, hi) = if lambda < 0.0 {
        let xstar = (alpha / lambda.abs()).sqrt();
        if b(xstar) >= 0.0 {
            return Err(Error::NoRoots);
        }
        (0.0, xstar)
    } else {
        let mut lo = 0.0;
        let mut hi = 1.0;
        let mut found = false;
        for _ in 0..=MAX_DOUBLINGS {
            if b(hi) < 0.0 {
                found = true;
                break;
            }
            lo = hi;
            hi *= 2.0;
        }
        if !found {
            return Err(Error::NoRoots);
        }
        (lo, hi)
    };
    let x2 = brent(b, lo, hi, 0.0)?;
    let e2 = profile.eval(x2)?;
    let e1 = profile.eval(-x2)?;
    if e2.b1.abs() <= 1e-8 * (e2.b2.abs() * x2).max(1.0) {
        return Err(Error::DoubleRoot(x2));
    }
    let interior = linspace(-x2, x2, POSITIVITY_SAMPLES + 2);
    if interior[1..=POSITIVITY_SAMPLES].iter().any(|&x| b(x) <= 0.0) {
        return Err(Error::NoRoots);
    }
    Ok(RootPair::new(-x2, x2, e1.b1, e2.b1))
}

/// Every pair of adjacent zeros of B with B > 0 in between, found by scanning a
/// symmetric geometric grid out to |x| = 10⁶. Works for any b; used to probe
/// profiles outside the even family.
pub fn positive_intervals(profile: &Profile) -> Result<Vec<RootPair>> {
    let b = |x: f64| profile.value(x);
    let mut xs: Vec<f64> = logspace(1e-3, 1e6, 600);
    let mut grid: Vec<f64> = xs.iter().rev().map(|x| -x).collect();
    grid.push(0.0);
    grid.append(&mut xs);

    let mut values = Vec::with_capacity(grid.len());
    for &x in &grid {
        values.push(b(x)?);
    }
    let mut zeros = Vec::new();
    for i in 0..grid.len() - 1 {
        let (fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 {
            zeros.push(grid[i]);
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            zeros.push(brent(|x| profile.value(x).unwrap_or(f64::NAN), grid[i], grid[i + 1], 0.0)?);
        }
    }
    let mut pairs = Vec::new();
    for w in zeros.windows(2) {
        let (x1, x2) = (w[0], w[1]);
        if b(0.5 * (x1 + x2))? > 0.0 {
            let db1 = profile.eval(x1)?.b1;
            let db2 = profile.eval(x2)?.b1;
            pairs.push(RootPair::new(x1, x2, db1, db2));
        }
    }
    Ok(pairs)
}

/// Convenience: profile for (m, λ, c) with b = 0, β = 1.
pub fn sphere_profile(m: f64, lambda: f64, c: f64) -> Result<Profile> {
    Profile::new(ModelParams::sphere(m, lambda, c))
}
