//! Closed-form profile functions B(x) for the axisymmetric family
//! g = B⁻¹dx² + B dφ², X♭ = −m/(x² + β²)·(x dx − β B dφ).
//!
//! Every branch solves the linear equation
//!
//! ```text
//! B″ + m ((β² + x²) x B′ + 2β² B)/(β² + x²)² + 2λ = 0
//! ```
//!
//! with β normalised to 1 (non-closed X♭) or β = 0 (closed X♭).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::HypParam;

const BRANCH_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaBranch {
    /// β = 1: X♭ not closed. The only branch with compact sphere solutions.
    NonClosed,
    /// β = 0: X♭ closed. Local evaluation only, x ≠ 0.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub m: f64,
    pub lambda: f64,
    pub b: f64,
    pub c: f64,
    pub beta: BetaBranch,
}

impl ModelParams {
    /// Even (b = 0), non-closed parameters: the family that can reach S².
    pub fn sphere(m: f64, lambda: f64, c: f64) -> Self {
        Self { m, lambda, b: 0.0, c, beta: BetaBranch::NonClosed }
    }

    pub fn with_b(self, b: f64) -> Self {
        Self { b, ..self }
    }
}

/// B(0) for the even family: c − λ/(m + 1), or c when m = −1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Alpha(pub f64);

impl Alpha {
    pub fn new(m: f64, lambda: f64, c: f64) -> Self {
        if m == -1.0 {
            Self(c)
        } else {
            Self(c - lambda / (m + 1.0))
        }
    }
}

/// B and its first two derivatives at x. `b2` is obtained from the linear ODE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileEval {
    pub x: f64,
    pub b: f64,
    pub b1: f64,
    pub b2: f64,
}

/// A residual together with the magnitude it should be judged against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub scale: f64,
}

impl Residual {
    pub fn new(value: f64, scale: f64) -> Self {
        Self { value, scale }
    }

    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.value.abs() / self.scale
        } else {
            self.value.abs()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Form {
    /// β = 1, m ≠ −1: (b x + c F) (1 + x²)^{−m/2} − λ(1 + x²)/(m + 1)
    Hypergeometric(HypParam),
    /// β = 1, m = −1: x (b − λ arsinh x) √(1 + x²) + c (1 + x²)
    MinusOne,
    /// β = 0, m ∉ {−1, 1}: b x^{1−m} + c − λx²/(m + 1)
    ClosedPower,
    /// β = 0, m = 1: b ln x + c − λx²/2
    ClosedLog,
    /// β = 0, m = −1: c x² + b − λ x² ln x
    ClosedMinusOne,
}

/// An immutable closed-form profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    params: ModelParams,
    form: Form,
}

fn check_branch(m: f64) -> Result<()> {
    if !m.is_finite() || m == 0.0 {
        return Err(Error::InvalidParameter(format!("m must be finite and nonzero, got {m}")));
    }
    for pole in [-1.0, 1.0] {
        let d = (m - pole).abs();
        if d > 0.0 && d < BRANCH_GUARD {
            return Err(Error::AmbiguousBranch(m));
        }
    }
    Ok(())
}

impl Profile {
    pub fn new(params: ModelParams) -> Result<Self> {
        let m = params.m;
        check_branch(m)?;
        for (name, v) in [("lambda", params.lambda), ("b", params.b), ("c", params.c)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        let form = match params.beta {
            BetaBranch::NonClosed if m == -1.0 => Form::MinusOne,
            BetaBranch::NonClosed => Form::Hypergeometric(HypParam::new(m)?),
            BetaBranch::Closed if m == 1.0 => Form::ClosedLog,
            BetaBranch::Closed if m == -1.0 => Form::ClosedMinusOne,
            BetaBranch::Closed => Form::ClosedPower,
        };
        Ok(Self { params, form })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn alpha(&self) -> Alpha {
        Alpha::new(self.params.m, self.params.lambda, self.params.c)
    }

    pub fn is_even_sphere_family(&self) -> bool {
        self.params.b == 0.0 && self.params.beta == BetaBranch::NonClosed
    }

    fn branch_name(&self) -> &'static str {
        match self.form {
            Form::Hypergeometric(_) => "hypergeometric",
            Form::MinusOne => "m = -1",
            Form::ClosedPower => "closed power-law",
            Form::ClosedLog => "closed m = 1",
            Form::ClosedMinusOne => "closed m = -1",
        }
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let bad = !x.is_finite()
            || match self.form {
                Form::Hypergeometric(_) | Form::MinusOne => false,
                Form::ClosedLog | Form::ClosedMinusOne => x <= 0.0,
                Form::ClosedPower => {
                    let e = 1.0 - self.params.m;
                    x == 0.0 || (x < 0.0 && e.fract() != 0.0)
                }
            };
        if bad {
            Err(Error::Domain { x, branch: self.branch_name() })
        } else {
            Ok(())
        }
    }

    /// B and B′ from the closed form.
    fn value_and_slope(&self, x: f64) -> (f64, f64) {
        let ModelParams { m, lambda, b, c, .. } = self.params;
        match self.form {
            Form::Hypergeometric(hyp) => {
                let fv = hyp.eval(x);
                let q = 1.0 + x * x;
                let w = q.powf(-0.5 * m);
                let dw = -m * x * w / q;
                let odd_even = b * x + c * fv.f;
                let val = odd_even * w - lambda * q / (m + 1.0);
                let slope = (b + c * fv.f_prime) * w + odd_even * dw - 2.0 * lambda * x / (m + 1.0);
                (val, slope)
            }
            Form::MinusOne => {
                let s = (1.0 + x * x).sqrt();
                let k = b - lambda * x.asinh();
                let val = x * k * s + c * (1.0 + x * x);
                let slope = k * (s + x * x / s) - lambda * x + 2.0 * c * x;
                (val, slope)
            }
            Form::ClosedPower => {
                let e = 1.0 - m;
                let (p, dp) = if e.fract() == 0.0 && e.abs() < 1e9 {
                    let n = e as i32;
                    (x.powi(n), e * x.powi(n - 1))
                } else {
                    (x.powf(e), e * x.powf(e - 1.0))
                };
                (b * p + c - lambda * x * x / (m + 1.0), b * dp - 2.0 * lambda * x / (m + 1.0))
            }
            Form::ClosedLog => (b * x.ln() + c - 0.5 * lambda * x * x, b / x - lambda * x),
            Form::ClosedMinusOne => {
                let l = x.ln();
                (c * x * x + b - lambda * x * x * l, 2.0 * c * x - 2.0 * lambda * x * l - lambda * x)
            }
        }
    }

    /// B(x) only.
    pub fn value(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.value_and_slope(x).0)
    }

    /// B, B′ from the closed form and B″ from the linear ODE.
    pub fn eval(&self, x: f64) -> Result<ProfileEval> {
        self.check_domain(x)?;
        let (b, b1) = self.value_and_slope(x);
        let b2 = self.second_from_ode(x, b, b1);
        Ok(ProfileEval { x, b, b1, b2 })
    }

    fn second_from_ode(&self, x: f64, b: f64, b1: f64) -> f64 {
        let ModelParams { m, lambda, beta, .. } = self.params;
        match beta {
            BetaBranch::NonClosed => {
                let q = 1.0 + x * x;
                -2.0 * lambda - m * (x * q * b1 + 2.0 * b) / (q * q)
            }
            BetaBranch::Closed => -2.0 * lambda - m * b1 / x,
        }
    }

    /// B‴ and B⁗, by differentiating the linear ODE (no finite differences).
    pub fn higher_derivatives(&self, x: f64) -> Result<(f64, f64)> {
        let e = self.eval(x)?;
        let m = self.params.m;
        let (b1, b2) = (e.b1, e.b2);
        match self.params.beta {
            BetaBranch::NonClosed => {
                // B″ = −2λ − m (a B′ + s B), a = x/(1+x²), s = 2/(1+x²)²
                let u = 1.0 / (1.0 + x * x);
                let a = x * u;
                let a1 = (1.0 - x * x) * u * u;
                let a2 = -2.0 * x * (3.0 - x * x) * u * u * u;
                let s = 2.0 * u * u;
                let s1 = -8.0 * x * u * u * u;
                let s2 = 2.0 * (20.0 * x * x - 4.0) * u * u * u * u;
                let b3 = -m * (a1 * b1 + a * b2 + s1 * e.b + s * b1);
                let b4 = -m * (a2 * b1 + 2.0 * a1 * b2 + a * b3 + s2 * e.b + 2.0 * s1 * b1 + s * b2);
                Ok((b3, b4))
            }
            BetaBranch::Closed => {
                let b3 = -m * (b2 / x - b1 / (x * x));
                let b4 = -m * (b3 / x - 2.0 * b2 / (x * x) + 2.0 * b1 / (x * x * x));
                Ok((b3, b4))
            }
        }
    }

    /// Left-hand side of the linear ODE with a numerically differentiated B″
    /// (five-point stencil on the closed-form B′).
    pub fn ode_residual(&self, x: f64) -> Result<Residual> {
        let e = self.eval(x)?;
        let mut h = 1e-3 * x.abs().max(1.0);
        if self.params.beta == BetaBranch::Closed {
            h = h.min(0.25 * x.abs());
        }
        let d = |t: f64| self.value_and_slope(t).1;
        let b2_fd = (-d(x + 2.0 * h) + 8.0 * d(x + h) - 8.0 * d(x - h) + d(x - 2.0 * h)) / (12.0 * h);
        let lhs = ode_lhs(&self.params, x, e.b, e.b1, b2_fd);
        Ok(Residual::new(lhs, 1.0 + b2_fd.abs()))
    }

    /// Residual of d/dx[B (1+x²)^{m/2}/x] = −(1+x²)^{m/2}(α + λx²)/x², with the
    /// left side differentiated numerically.
    pub fn first_order_residual(&self, x: f64) -> Result<Residual> {
        if !self.is_even_sphere_family() {
            return Err(Error::NotApplicable("first-order identity needs b = 0 and beta = 1"));
        }
        if x == 0.0 {
            return Err(Error::NotApplicable("first-order identity is singular at x = 0"));
        }
        self.check_domain(x)?;
        let ModelParams { m, lambda, .. } = self.params;
        let alpha = self.alpha().0;
        let q = |t: f64| self.value_and_slope(t).0 * (1.0 + t * t).powf(0.5 * m) / t;
        let h = 1e-3 * x.abs().min(1.0);
        let lhs = (-q(x + 2.0 * h) + 8.0 * q(x + h) - 8.0 * q(x - h) + q(x - 2.0 * h)) / (12.0 * h);
        let rhs = -(1.0 + x * x).powf(0.5 * m) * (alpha + lambda * x * x) / (x * x);
        Ok(Residual::new(lhs - rhs, lhs.abs().max(rhs.abs())))
    }
}

/// Left-hand side of the linear ODE for arbitrary (B, B′, B″).
pub fn ode_lhs(params: &ModelParams, x: f64, b: f64, b1: f64, b2: f64) -> f64 {
    let ModelParams { m, lambda, beta, .. } = *params;
    match beta {
        BetaBranch::NonClosed => {
            let q = 1.0 + x * x;
            b2 + m * (q * x * b1 + 2.0 * b) / (q * q) + 2.0 * lambda
        }
        BetaBranch::Closed => b2 + m * b1 / x + 2.0 * lambda,
    }
}

/// Builds a profile.
pub fn make_profile(params: ModelParams) -> Result<Profile> {
    Profile::new(params)
}

/// Evaluates B, B′, B″ at x.
pub fn eval_b(profile: &Profile, x: f64) -> Result<ProfileEval> {
    profile.eval(x)
}
