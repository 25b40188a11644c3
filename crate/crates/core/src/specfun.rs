//! The profile function F(x) = ₂F₁(−1/2, −m/2; 1/2; −x²).
//!
//! F is even with F(0) = 1 and satisfies
//!
//! ```text
//! F(x) = 1 − x ∫₀ˣ ((y² + 1)^{m/2} − 1) / y² dy,      d/dx (F/x) = −(1 + x²)^{m/2} / x².
//! ```
//!
//! Small arguments (|x| ≤ 1/2) are summed from the power series in z = −x²;
//! larger arguments use the integral representation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::{brent, gamma, integrate, Quadrature};

const SERIES_CUTOFF: f64 = 0.5;
const TAYLOR_CUTOFF: f64 = 1e-3;
const SERIES_MAX_TERMS: usize = 400;

// Hypergeometric parameters a = −1/2, c = 1/2; b = −m/2 varies.
const A: f64 = -0.5;
const C: f64 = 0.5;

/// Which row of the admissibility table an exponent m belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MClass {
    /// m > 0
    Positive,
    /// m ∈ (−1, 0)
    BetweenMinusOneAndZero,
    /// m = −1
    MinusOne,
    /// m < −1
    BelowMinusOne,
}

/// A validated exponent m ≠ 0 together with the cached head integral ∫₀¹ g.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParam {
    m: f64,
    head: f64,
}

/// F and F′ at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FValue {
    pub x: f64,
    pub f: f64,
    pub f_prime: f64,
}

impl HypParam {
    pub fn new(m: f64) -> Result<Self> {
        if !m.is_finite() || m == 0.0 {
            return Err(Error::InvalidParameter(format!("m must be finite and nonzero, got {m}")));
        }
        let mut p = Self { m, head: 0.0 };
        p.head = p.integral_direct(1.0);
        Ok(p)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn class(&self) -> MClass {
        let m = self.m;
        if m > 0.0 {
            MClass::Positive
        } else if m > -1.0 {
            MClass::BetweenMinusOneAndZero
        } else if m == -1.0 {
            MClass::MinusOne
        } else {
            MClass::BelowMinusOne
        }
    }

    /// The integrand ((y² + 1)^{m/2} − 1)/y², with its limit m/2 at y = 0.
    pub fn integrand(&self, y: f64) -> f64 {
        let m = self.m;
        let y = y.abs();
        if y < TAYLOR_CUTOFF {
            let y2 = y * y;
            let c1 = m * (m - 2.0) / 8.0;
            let c2 = m * (m - 2.0) * (m - 4.0) / 48.0;
            0.5 * m + y2 * (c1 + y2 * c2)
        } else {
            let y2 = y * y;
            (0.5 * m * y2.ln_1p()).exp_m1() / y2
        }
    }

    fn integral_direct(&self, x: f64) -> f64 {
        integrate(|y| self.integrand(y), 0.0, x, quad_opts()).0
    }

    /// ∫₀ˣ g(y) dy for x ≥ 0. Beyond x = 1 the integral is taken in the
    /// variable t = ln y.
    pub fn integral(&self, x: f64) -> f64 {
        let x = x.abs();
        if x <= 1.0 {
            return self.integral_direct(x);
        }
        let tail = integrate(
            |t: f64| {
                let y = t.exp();
                self.integrand(y) * y
            },
            0.0,
            x.ln(),
            quad_opts(),
        )
        .0;
        self.head + tail
    }

    /// Power series for F and F′ about x = 0. Converges for |x| < 1 and
    /// terminates for even positive m.
    pub fn series(&self, x: f64) -> FValue {
        let b = -0.5 * self.m;
        let z = -x * x;
        let mut f = 1.0;
        // u_k = c_k z^{k-1}; F′ = −2x Σ k u_k
        let mut u = A * b / C;
        let mut df = 0.0;
        for k in 1..SERIES_MAX_TERMS {
            let term_f = u * z;
            let term_d = k as f64 * u;
            f += term_f;
            df += term_d;
            let kf = k as f64;
            let ratio = (A + kf) * (b + kf) / ((C + kf) * (kf + 1.0));
            u *= ratio * z;
            if u == 0.0 {
                break;
            }
            let small = (u * z).abs() <= f64::EPSILON * 1e-2 * f.abs()
                && (kf * u).abs() <= f64::EPSILON * 1e-2 * df.abs().max(f64::MIN_POSITIVE);
            if small && (ratio * z).abs() < 1.0 {
                break;
            }
        }
        FValue { x, f, f_prime: -2.0 * x * df }
    }

    /// F and F′ from the integral representation.
    pub fn integral_form(&self, x: f64) -> FValue {
        let ax = x.abs();
        let i = self.integral(ax);
        let f = 1.0 - ax * i;
        let fp = -i - ax * self.integrand(ax);
        FValue { x, f, f_prime: if x < 0.0 { -fp } else { fp } }
    }

    /// F(x) and F′(x), evaluated on |x| so that F is exactly even and F′ exactly odd.
    pub fn eval(&self, x: f64) -> FValue {
        let ax = x.abs();
        let mut v = if ax <= SERIES_CUTOFF { self.series(ax) } else { self.integral_form(ax) };
        v.x = x;
        if x < 0.0 {
            v.f_prime = -v.f_prime;
        }
        v
    }

    pub fn f(&self, x: f64) -> f64 {
        self.eval(x).f
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        self.eval(x).f_prime
    }

    /// The unique positive zero x₀ of F (m > 0 only).
    pub fn positive_root(&self) -> Result<f64> {
        if self.m <= 0.0 {
            return Err(Error::NoPositiveRoot(self.m));
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        while self.f(hi) > 0.0 {
            lo = hi;
            hi *= 2.0;
            if hi > 2f64.powi(60) {
                return Err(Error::Numerical("positive root of F not bracketed"));
            }
        }
        brent(|x| self.f(x), lo, hi, 1e-14)
    }

    /// Coefficient s of the linear growth F(x) ~ s·x, for m < 1.
    pub fn asymptotic_slope(&self) -> Result<f64> {
        let m = self.m;
        if m >= 1.0 {
            return Err(Error::UnsupportedAsymptoticBranch(m));
        }
        Ok(PI.sqrt() * gamma(0.5 - 0.5 * m) / gamma(-0.5 * m))
    }
}

fn quad_opts() -> Quadrature {
    Quadrature { abs_tol: 1e-17, rel_tol: 2e-15, max_intervals: 4096 }
}

/// F(x) for exponent m.
pub fn hyp_f(m: f64, x: f64) -> Result<f64> {
    Ok(HypParam::new(m)?.f(x))
}

/// F′(x) for exponent m.
pub fn hyp_f_prime(m: f64, x: f64) -> Result<f64> {
    Ok(HypParam::new(m)?.f_prime(x))
}

/// The positive zero of F; exists only for m > 0.
pub fn f_positive_root(m: f64) -> Result<f64> {
    if m <= 0.0 {
        return Err(Error::NoPositiveRoot(m));
    }
    HypParam::new(m)?.positive_root()
}

/// √π Γ(1/2 − m/2)/Γ(−m/2), the slope of F at infinity for m ∈ (−∞, 0) ∪ (0, 1).
pub fn f_asymptotic_slope(m: f64) -> Result<f64> {
    HypParam::new(m)?.asymptotic_slope()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_f(m: i32, x: f64) -> f64 {
        let x2 = x * x;
        match m {
            2 => 1.0 - x2,
            4 => 1.0 - 2.0 * x2 - x2 * x2 / 3.0,
            6 => 1.0 - 3.0 * x2 - x2 * x2 - x2 * x2 * x2 / 5.0,
            _ => unreachable!(),
        }
    }

    #[test]
    fn examples() {
        assert!((hyp_f(2.0, 0.7).unwrap() - 0.51).abs() < 1e-14);
        assert_eq!(hyp_f(5.0, 0.0).unwrap(), 1.0);
        assert!((hyp_f(4.0, 1.0).unwrap() + 4.0 / 3.0).abs() < 1e-13);
        assert!((hyp_f_prime(2.0, 0.5).unwrap() + 1.0).abs() < 1e-14);
        assert_eq!(hyp_f_prime(3.3, 0.0).unwrap(), 0.0);
        assert!((hyp_f_prime(4.0, 1.0).unwrap() + 16.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn m_zero_rejected() {
        assert!(matches!(hyp_f(0.0, 1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(hyp_f_prime(0.0, 1.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn terminating_polynomials() {
        for m in [2, 4, 6] {
            let p = HypParam::new(m as f64).unwrap();
            for i in 0..1000 {
                let x = -10.0 + 20.0 * i as f64 / 999.0;
                let want = poly_f(m, x);
                let got = p.f(x);
                assert!(((got - want) / want).abs() < 1e-12, "m={m} x={x} got={got} want={want}");
            }
        }
    }

    #[test]
    fn series_matches_integral_on_overlap() {
        for m in [-3.0, -1.0, -0.5, 0.5, 3.0] {
            let p = HypParam::new(m).unwrap();
            for i in 0..=40 {
                let x = 0.3 + 0.4 * i as f64 / 40.0;
                let s = p.series(x);
                let q = p.integral_form(x);
                assert!((s.f - q.f).abs() <= 1e-11 * s.f.abs(), "m={m} x={x}");
                assert!((s.f_prime - q.f_prime).abs() <= 1e-11 * s.f_prime.abs().max(1.0), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn positive_root_examples() {
        assert!((f_positive_root(2.0).unwrap() - 1.0).abs() < 1e-14);
        let want = (12f64.sqrt() - 3.0).sqrt();
        assert!((f_positive_root(4.0).unwrap() - want).abs() < 1e-14);
        assert_eq!(f_positive_root(-1.0), Err(Error::NoPositiveRoot(-1.0)));
    }

    #[test]
    fn simple_zero_derivative() {
        for m in [0.3, 1.0, 2.0, 3.5, 7.0] {
            let p = HypParam::new(m).unwrap();
            let x0 = p.positive_root().unwrap();
            let want = -(1.0 + x0 * x0).powf(0.5 * m) / x0;
            assert!((p.f_prime(x0) - want).abs() < 1e-9 * want.abs(), "m={m}");
        }
    }

    #[test]
    fn asymptotic_slopes() {
        assert!((f_asymptotic_slope(-1.0).unwrap() - 1.0).abs() < 1e-13);
        assert!((f_asymptotic_slope(-3.0).unwrap() - 2.0).abs() < 1e-13);
        assert!(f_asymptotic_slope(0.5).unwrap() < 0.0);
        assert!(f_asymptotic_slope(-0.5).unwrap() > 0.0);
        assert_eq!(f_asymptotic_slope(1.0), Err(Error::UnsupportedAsymptoticBranch(1.0)));
        assert_eq!(f_asymptotic_slope(2.5), Err(Error::UnsupportedAsymptoticBranch(2.5)));
    }

    #[test]
    fn class_flags() {
        assert_eq!(HypParam::new(0.1).unwrap().class(), MClass::Positive);
        assert_eq!(HypParam::new(-0.1).unwrap().class(), MClass::BetweenMinusOneAndZero);
        assert_eq!(HypParam::new(-1.0).unwrap().class(), MClass::MinusOne);
        assert_eq!(HypParam::new(-1.5).unwrap().class(), MClass::BelowMinusOne);
    }
}
