//! The metric g = B⁻¹dx² + B dφ² and one-form X♭ = −m/(1+x²)·(x dx − B dφ)
//! on the chart (x, φ), and the global checks on a sphere solution.
//!
//! Orientation is vol = dx∧dφ (√det g = 1). Scalar curvature is R = −B″.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::admissibility::{classify, find_roots, RootPair};
use crate::error::{Error, Result};
use crate::numeric::{brent, integrate, Quadrature};
use crate::profile::{BetaBranch, ModelParams, Profile, ProfileEval, Residual};
use crate::tensor::{self, DiagMetric, Matrix};

/// Kähler residuals are only evaluated this far (relative to x2 − x1) from a pole.
const KAHLER_POLE_MARGIN: f64 = 1e-3;

/// Below this offset from a pole, B is replaced by its cubic Taylor polynomial.
const POLE_TAYLOR_OFFSET: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pole {
    /// x = x2
    North,
    /// x = x1
    South,
}

/// Metric and X♭ components at one point of the chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricPoint {
    pub x: f64,
    pub g_xx: f64,
    pub g_pp: f64,
    pub x_x: f64,
    pub x_p: f64,
    pub r: f64,
}

/// A symmetric or general 2×2 residual with per-component scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorResidual {
    pub components: Matrix,
    pub scales: Matrix,
}

impl TensorResidual {
    /// max over components of |residual|/scale.
    pub fn relative(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max(self.components[i][j].abs() / self.scales[i][j]);
            }
        }
        worst
    }
}

/// Builds a per-component scale `1 + max |term|` from a list of term tensors.
pub(crate) fn term_scales(terms: &[Matrix]) -> Matrix {
    let mut s = [[0.0f64; 2]; 2];
    for t in terms {
        for i in 0..2 {
            for j in 0..2 {
                s[i][j] = s[i][j].max(t[i][j].abs());
            }
        }
    }
    s.map(|row| row.map(|v| 1.0 + v))
}

/// The metric of the chart with derivatives, from one profile evaluation.
pub fn chart_metric(e: &ProfileEval) -> DiagMetric {
    let (b, b1, b2) = (e.b, e.b1, e.b2);
    DiagMetric { g: [1.0 / b, b], dg: [-b1 / (b * b), b1], d2g: [-b2 / (b * b) + 2.0 * b1 * b1 / (b * b * b), b2] }
}

/// X♭ components and their x-derivatives in the (dx, dφ) basis.
pub fn x_flat(m: f64, e: &ProfileEval) -> ([f64; 2], [f64; 2]) {
    let x = e.x;
    let q = 1.0 + x * x;
    let xx = -m * x / q;
    let xp = m * e.b / q;
    let dxx = -m * (1.0 - x * x) / (q * q);
    let dxp = m * (e.b1 * q - 2.0 * x * e.b) / (q * q);
    ([xx, xp], [dxx, dxp])
}

/// Quasi-Einstein residual `Ric − (1/m)X♭⊗X♭ + ½(∇X♭ + ∇X♭ᵀ) − λg` in any
/// diagonal chart, given that chart's Ricci tensor.
pub fn qe_tensor(
    metric: &DiagMetric,
    ricci: &Matrix,
    xf: [f64; 2],
    dxf: [f64; 2],
    m: f64,
    lambda: f64,
) -> TensorResidual {
    let nabla = tensor::covariant_derivative(&metric.christoffel(), xf, dxf);
    let g = metric.matrix();
    let mut quad = [[0.0; 2]; 2];
    let mut lie = [[0.0; 2]; 2];
    let mut cosmo = [[0.0; 2]; 2];
    let mut res = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            quad[i][j] = xf[i] * xf[j] / m;
            lie[i][j] = 0.5 * (nabla[i][j] + nabla[j][i]);
            cosmo[i][j] = lambda * g[i][j];
            res[i][j] = ricci[i][j] - quad[i][j] + lie[i][j] - cosmo[i][j];
        }
    }
    TensorResidual { components: res, scales: term_scales(&[*ricci, quad, lie, cosmo]) }
}

/// Quasi-Einstein residual at x for any non-closed profile with B(x) > 0.
pub fn qe_residual_local(profile: &Profile, x: f64, lambda: f64) -> Result<TensorResidual> {
    let e = positive_eval(profile, x)?;
    let metric = chart_metric(&e);
    let r = -e.b2;
    let g = metric.matrix();
    let ricci = g.map(|row| row.map(|v| 0.5 * r * v));
    let (xf, dxf) = x_flat(profile.params().m, &e);
    Ok(qe_tensor(&metric, &ricci, xf, dxf, profile.params().m, lambda))
}

/// Ricci tensor from the Christoffel symbols of the chart metric.
pub fn christoffel_ricci(profile: &Profile, x: f64) -> Result<Matrix> {
    let e = positive_eval(profile, x)?;
    let metric = chart_metric(&e);
    Ok(tensor::ricci(&metric.christoffel(), &metric.christoffel_dx()))
}

pub(crate) fn positive_eval(profile: &Profile, x: f64) -> Result<ProfileEval> {
    if profile.params().beta != BetaBranch::NonClosed {
        return Err(Error::NotApplicable("chart geometry is built for the beta = 1 branch"));
    }
    let e = profile.eval(x)?;
    if e.b <= 0.0 {
        return Err(Error::ChartDomain(x));
    }
    Ok(e)
}

/// The eight holomorphic derivatives of the Kähler potential entering the
/// fourth-order equation, with the common factor e^{−5(w+w̄)} removed.
#[derive(Debug, Clone, Copy)]
struct KahlerJets {
    z: Complex64,
    zb: Complex64,
    zz: Complex64,
    zbzb: Complex64,
    zzb: Complex64,
    zzzb: Complex64,
    zzbzb: Complex64,
    zzzbzb: Complex64,
}

/// A derivative e^{−a w − b w̄} h(s) of the potential, stored by the
/// s-derivatives of h. w = s + iφ, ζ = e^{w}.
#[derive(Debug, Clone)]
struct Term {
    a: f64,
    b: f64,
    jet: Vec<Complex64>,
}

impl Term {
    // ∂_ζ = e^{−w}·½(∂_s − i∂_φ)
    fn d_zeta(&self) -> Term {
        let jet = (0..self.jet.len() - 1).map(|k| 0.5 * self.jet[k + 1] - self.a * self.jet[k]).collect();
        Term { a: self.a + 1.0, b: self.b, jet }
    }

    // ∂_ζ̄ = e^{−w̄}·½(∂_s + i∂_φ)
    fn d_zeta_bar(&self) -> Term {
        let jet = (0..self.jet.len() - 1).map(|k| 0.5 * self.jet[k + 1] - self.b * self.jet[k]).collect();
        Term { a: self.a, b: self.b + 1.0, jet }
    }

    fn value(&self) -> Complex64 {
        self.jet[0]
    }
}

impl KahlerJets {
    /// Potential f = ρ(s) − φ with ρ′(s) = x and dx/ds = B.
    fn new(e: &ProfileEval) -> Self {
        let (x, b, b1, b2) = (e.x, e.b, e.b1, e.b2);
        let x_s = [x, b, b * b1, b * (b1 * b1 + b * b2)];
        let i = Complex64::i();
        let mut jz: Vec<Complex64> = x_s.iter().map(|&v| Complex64::new(0.5 * v, 0.0)).collect();
        let mut jzb = jz.clone();
        jz[0] += 0.5 * i;
        jzb[0] -= 0.5 * i;
        let fz = Term { a: 1.0, b: 0.0, jet: jz };
        let fzb = Term { a: 0.0, b: 1.0, jet: jzb };
        let fzz = fz.d_zeta();
        let fzbzb = fzb.d_zeta_bar();
        let fzzb = fz.d_zeta_bar();
        let fzzzb = fzzb.d_zeta();
        let fzzbzb = fzzb.d_zeta_bar();
        let fzzzbzb = fzzzb.d_zeta_bar();
        Self {
            z: fz.value(),
            zb: fzb.value(),
            zz: fzz.value(),
            zbzb: fzbzb.value(),
            zzb: fzzb.value(),
            zzzb: fzzzb.value(),
            zzbzb: fzzbzb.value(),
            zzzbzb: fzzzbzb.value(),
        }
    }

    /// The five groups of terms of the fourth-order Kähler-potential equation.
    fn terms(&self, m: f64, lambda: f64) -> [Complex64; 5] {
        let KahlerJets { z, zb, zz, zbzb, zzb, zzzb, zzbzb, zzzbzb } = *self;
        let zzb2 = zzb * zzb;
        let zzb3 = zzb2 * zzb;
        [
            (2.0 / m) * (z * zb).powi(2) * (zzzbzb * zzb - zzzb * zzbzb),
            (4.0 * lambda / m) * zzb3 * z * z * zb * zb,
            -zzb3 * (zbzb * z * z + zz * zb * zb),
            zzb2 * (z * zb * zb * zzzb + zb * z * z * zzbzb),
            2.0 * zzb2 * zzb2 * z * zb,
        ]
    }
}

/// Residual of the Kähler-potential equation at x for any non-closed profile,
/// with λ entering the equation supplied separately.
pub fn kahler_residual_local(profile: &Profile, x: f64, lambda: f64) -> Result<Residual> {
    let e = positive_eval(profile, x)?;
    let jets = KahlerJets::new(&e);
    let terms = jets.terms(profile.params().m, lambda);
    let total: Complex64 = terms.iter().sum();
    let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    Ok(Residual::new(total.norm(), scale))
}

/// An admissible solution on S²: the even non-closed profile, its poles and
/// the period of φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSolution {
    pub profile: Profile,
    pub roots: RootPair,
    pub period: f64,
}

/// Builds the sphere solution for (m, λ, c), or reports why it does not exist.
pub fn build_solution(m: f64, lambda: f64, c: f64) -> Result<SphereSolution> {
    let verdict = classify(m, lambda, c, 0.0)?;
    if !verdict.admissible {
        return Err(Error::Inadmissible(verdict));
    }
    let profile = Profile::new(ModelParams::sphere(m, lambda, c))?;
    let roots = find_roots(&profile)?;
    Ok(SphereSolution { profile, roots, period: roots.period })
}

impl SphereSolution {
    pub fn params(&self) -> &ModelParams {
        self.profile.params()
    }

    pub fn m(&self) -> f64 {
        self.params().m
    }

    pub fn lambda(&self) -> f64 {
        self.params().lambda
    }

    /// Same solution with φ identified with a different period.
    pub fn with_period(self, period: f64) -> Self {
        Self { period, ..self }
    }

    pub fn chart_check(&self, x: f64) -> Result<()> {
        if x > self.roots.x1 && x < self.roots.x2 {
            Ok(())
        } else {
            Err(Error::ChartDomain(x))
        }
    }

    pub fn eval(&self, x: f64) -> Result<ProfileEval> {
        self.chart_check(x)?;
        self.profile.eval(x)
    }

    pub fn metric_point(&self, x: f64) -> Result<MetricPoint> {
        let e = self.eval(x)?;
        let (xf, _) = x_flat(self.m(), &e);
        Ok(MetricPoint { x, g_xx: 1.0 / e.b, g_pp: e.b, x_x: xf[0], x_p: xf[1], r: -e.b2 })
    }

    /// Γ(x) = (1 + x²)/m, the potential of the Killing form K♭ = ΓX♭ + (m/2)dΓ.
    pub fn gamma_potential(&self, x: f64) -> f64 {
        (1.0 + x * x) / self.m()
    }

    /// |X|² = m² B/(1 + x²).
    pub fn x_norm_sq(&self, x: f64) -> Result<f64> {
        let e = self.eval(x)?;
        Ok(self.m() * self.m() * e.b / (1.0 + x * x))
    }

    pub fn qe_residual(&self, x: f64) -> Result<TensorResidual> {
        self.chart_check(x)?;
        qe_residual_local(&self.profile, x, self.lambda())
    }

    /// Returns `(chi_exact, chi_quadrature)`: the boundary-term form and the
    /// integral of the scalar curvature, both normalised by 4π.
    pub fn gauss_bonnet(&self) -> (f64, f64) {
        let RootPair { x1, x2, db1, db2, .. } = self.roots;
        let exact = -(self.period / (4.0 * PI)) * (db2 - db1);
        let (integral, _) =
            integrate(|x| -self.profile.eval(x).map(|e| e.b2).unwrap_or(f64::NAN), x1, x2, Quadrature::tight());
        (exact, self.period / (4.0 * PI) * integral)
    }

    /// ∫(|X|²/m + 2λ) vol over the sphere; equals 8π for genus zero.
    pub fn x_norm_constraint(&self) -> f64 {
        let (m, lambda) = (self.m(), self.lambda());
        let (integral, _) = integrate(
            |x| {
                let b = self.profile.value(x).unwrap_or(f64::NAN);
                m * b / (1.0 + x * x) + 2.0 * lambda
            },
            self.roots.x1,
            self.roots.x2,
            Quadrature::tight(),
        );
        self.period * integral
    }

    /// B(pole ∓ δ)/δ as a smooth function of the offset δ ≥ 0 into the chart.
    fn pole_ratio(&self, pole: Pole, delta: f64) -> f64 {
        let (xp, sign) = match pole {
            Pole::North => (self.roots.x2, -1.0),
            Pole::South => (self.roots.x1, 1.0),
        };
        if delta < POLE_TAYLOR_OFFSET {
            let e = self.profile.eval(xp).expect("pole lies in the profile domain");
            let (b3, _) = self.profile.higher_derivatives(xp).expect("pole lies in the profile domain");
            sign * e.b1 + 0.5 * e.b2 * delta + sign * b3 * delta * delta / 6.0
        } else {
            self.profile.value(xp + sign * delta).unwrap_or(f64::NAN) / delta
        }
    }

    /// Geodesic distance to the pole from the point at offset u² (u ≥ 0).
    fn distance_to_pole(&self, pole: Pole, u: f64) -> f64 {
        // x = pole ∓ t², dx = 2t dt, B = t² h(t²)
        integrate(|t| 2.0 / self.pole_ratio(pole, t * t).sqrt(), 0.0, u, Quadrature::tight()).0
    }

    /// Circumference over 2π·radius for geodesic circles about a pole,
    /// sampled at radius 10⁻², 10⁻³, 10⁻⁴ and extrapolated (in s²) to s = 0.
    /// Equals 1 exactly when there is no conical singularity.
    pub fn conical_check(&self, pole: Pole) -> Result<f64> {
        let slope = self.pole_ratio(pole, 0.0);
        if slope.is_nan() || slope <= 0.0 {
            return Err(Error::Numerical("pole is not a simple zero"));
        }
        let mut samples = Vec::new();
        for s in [1e-2, 1e-3, 1e-4] {
            let guess = 0.5 * s * slope.sqrt();
            let mut hi = 2.0 * guess;
            while self.distance_to_pole(pole, hi) < s {
                hi *= 2.0;
            }
            let u = brent(|u| self.distance_to_pole(pole, u) - s, 0.0, hi, 1e-16)?;
            let s_actual = self.distance_to_pole(pole, u);
            let circumference = self.period * u * self.pole_ratio(pole, u * u).sqrt();
            samples.push((s_actual, circumference / (2.0 * PI * s_actual)));
        }
        let (s2, r2) = samples[1];
        let (s3, r3) = samples[2];
        Ok((s2 * s2 * r3 - s3 * s3 * r2) / (s2 * s2 - s3 * s3))
    }

    /// max |components of ΓX♭ + (m/2)dΓ − K♭| with K♭ = B dφ.
    pub fn killing_identity_residual(&self, x: f64) -> Result<f64> {
        let m = self.m();
        self.killing_residual_with(x, |t| ((1.0 + t * t) / m, 2.0 * t / m))
    }

    /// Same as [`Self::killing_identity_residual`] for a caller-supplied
    /// potential returning (Γ, Γ′).
    pub fn killing_residual_with<G: Fn(f64) -> (f64, f64)>(&self, x: f64, potential: G) -> Result<f64> {
        let e = self.eval(x)?;
        let (xf, _) = x_flat(self.m(), &e);
        let (gam, dgam) = potential(x);
        let kx = gam * xf[0] + 0.5 * self.m() * dgam;
        let kp = gam * xf[1] - e.b;
        Ok(kx.abs().max(kp.abs()))
    }

    /// Residual of the fourth-order Kähler-potential equation, relative to
    /// the largest of its term groups.
    pub fn kahler_residual(&self, x: f64) -> Result<Residual> {
        self.kahler_residual_with_lambda(x, self.lambda())
    }

    pub fn kahler_residual_with_lambda(&self, x: f64, lambda: f64) -> Result<Residual> {
        let margin = KAHLER_POLE_MARGIN * (self.roots.x2 - self.roots.x1);
        if x <= self.roots.x1 + margin || x >= self.roots.x2 - margin {
            return Err(Error::ChartDomain(x));
        }
        kahler_residual_local(&self.profile, x, lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(m: f64, lambda: f64, c: f64) -> SphereSolution {
        build_solution(m, lambda, c).unwrap()
    }

    #[test]
    fn build_examples() {
        let s = sol(2.0, 0.0, 1.0);
        assert!((s.roots.x2 - 1.0).abs() < 1e-14);
        assert!((s.period - 4.0 * PI).abs() < 1e-12);
        assert!(build_solution(-1.0, 1.0, 1.0).is_ok());
        match build_solution(2.0, 1.0, 0.1) {
            Err(Error::Inadmissible(v)) => assert!(!v.admissible),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn metric_point_fields() {
        let s = sol(3.0, 1.0, 1.0);
        let p = s.metric_point(0.4).unwrap();
        assert!((p.g_xx * p.g_pp - 1.0).abs() < 1e-15);
        let e = s.eval(0.4).unwrap();
        assert_eq!(p.r, -e.b2);
        assert!(s.metric_point(s.roots.x2).is_err());
    }

    #[test]
    fn qe_residual_examples() {
        let r = sol(2.0, 0.0, 1.0).qe_residual(0.3).unwrap();
        assert!(r.relative() < 1e-9, "{r:?}");
        let s = sol(3.0, 1.0, 1.0);
        assert!(s.qe_residual(0.5).unwrap().relative() < 1e-8);
        assert!(matches!(s.qe_residual(5.0), Err(Error::ChartDomain(_))));
    }

    #[test]
    fn qe_linear_response_to_lambda() {
        let s = sol(3.0, 1.0, 1.0);
        let x = 0.5;
        let r = qe_residual_local(&s.profile, x, 1.0 + 1e-3).unwrap();
        let g_xx = 1.0 / s.eval(x).unwrap().b;
        assert!((r.components[0][0] + 1e-3 * g_xx).abs() < 1e-12);
    }

    #[test]
    fn christoffel_ricci_is_half_r_g() {
        let s = sol(-0.5, 1.0, 3.0);
        for x in [-1.0, -0.2, 0.0, 0.7] {
            let ric = christoffel_ricci(&s.profile, x).unwrap();
            let p = s.metric_point(x).unwrap();
            assert!((ric[0][0] - 0.5 * p.r * p.g_xx).abs() < 1e-9 * (1.0 + ric[0][0].abs()));
            assert!((ric[1][1] - 0.5 * p.r * p.g_pp).abs() < 1e-9 * (1.0 + ric[1][1].abs()));
            assert!(ric[0][1].abs() < 1e-12 && ric[1][0].abs() < 1e-12);
        }
    }

    #[test]
    fn christoffels_match_metric_differences() {
        let s = sol(3.0, -1.0, 3.0);
        let x = 0.35;
        let h = 1e-5;
        let g = |t: f64| chart_metric(&s.eval(t).unwrap()).g;
        let gm = chart_metric(&s.eval(x).unwrap());
        let (gp, gq) = (g(x + h), g(x - h));
        for i in 0..2 {
            let fd1 = (gp[i] - gq[i]) / (2.0 * h);
            let fd2 = (gp[i] - 2.0 * gm.g[i] + gq[i]) / (h * h);
            assert!((gm.dg[i] - fd1).abs() < 1e-7 * (1.0 + fd1.abs()));
            assert!((gm.d2g[i] - fd2).abs() < 1e-4 * (1.0 + fd2.abs()));
        }
        let gam = gm.christoffel();
        let b = s.eval(x).unwrap();
        assert!((gam[0][0][0] + b.b1 / (2.0 * b.b)).abs() < 1e-14);
        assert!((gam[0][1][1] + 0.5 * b.b * b.b1).abs() < 1e-14);
        assert!((gam[1][0][1] - b.b1 / (2.0 * b.b)).abs() < 1e-14);
    }

    #[test]
    fn geodesic_chart_gives_same_residual() {
        // s with ds = dx/√B: metric ds² + f dφ², f(s) = B(x(s)).
        let s = sol(3.0, 1.0, 1.0);
        let m = s.m();
        for x in [-0.4, 0.1, 0.45] {
            let e = s.eval(x).unwrap();
            let (b, b1, b2) = (e.b, e.b1, e.b2);
            let rb = b.sqrt();
            let metric = DiagMetric { g: [1.0, b], dg: [0.0, b1 * rb], d2g: [0.0, b * b2 + 0.5 * b1 * b1] };
            let ricci = tensor::ricci(&metric.christoffel(), &metric.christoffel_dx());
            let (xf, dxf) = x_flat(m, &e);
            let xs = [xf[0] * rb, xf[1]];
            let dxs = [b * dxf[0] + 0.5 * xf[0] * b1, rb * dxf[1]];
            let geo = qe_tensor(&metric, &ricci, xs, dxs, m, s.lambda());
            let chart = s.qe_residual(x).unwrap();
            assert!((geo.components[0][0] / b - chart.components[0][0]).abs() < 1e-6);
            assert!((geo.components[0][1] / rb - chart.components[0][1]).abs() < 1e-6);
            assert!((geo.components[1][1] - chart.components[1][1]).abs() < 1e-6);
            assert!(geo.relative() < 1e-9);
        }
    }

    #[test]
    fn gauss_bonnet_examples() {
        for (m, l, c) in [(2.0, 0.0, 1.0), (-3.0, 1.0, -0.2), (-1.0, 1.0, 1.0)] {
            let (exact, quad) = sol(m, l, c).gauss_bonnet();
            assert!((exact - 2.0).abs() < 1e-9, "{exact}");
            assert!((quad - 2.0).abs() < 1e-6, "{quad}");
        }
    }

    #[test]
    fn x_norm_integral() {
        for (m, l, c) in [(2.0, 0.0, 1.0), (3.0, 1.0, 1.0)] {
            let v = sol(m, l, c).x_norm_constraint();
            assert!((v - 8.0 * PI).abs() < 1e-6, "{v}");
        }
        // X = 0, λ = 0 integrates to zero.
        let s = sol(2.0, 0.0, 1.0);
        let (zero, _) = integrate(|_| 0.0, s.roots.x1, s.roots.x2, Quadrature::default());
        assert_ne!(zero * s.period, 8.0 * PI);
    }

    #[test]
    fn conical_examples() {
        let s = sol(2.0, 0.0, 1.0);
        assert!((s.conical_check(Pole::North).unwrap() - 1.0).abs() < 1e-5);
        assert!((s.conical_check(Pole::South).unwrap() - 1.0).abs() < 1e-5);
        let bad = s.with_period(0.9 * s.period);
        assert!((bad.conical_check(Pole::North).unwrap() - 0.9).abs() < 1e-5);
    }

    #[test]
    fn killing_identity() {
        assert!(sol(3.0, 1.0, 1.0).killing_identity_residual(0.4).unwrap() < 1e-12);
        let s = sol(-1.0, 1.0, 1.0);
        assert!(s.killing_identity_residual(-0.7).unwrap() < 1e-12);
        let m = s.m();
        let halved = s.killing_residual_with(-0.7, |t| ((1.0 + t * t) / (2.0 * m), t / m)).unwrap();
        assert!(halved > 0.1);
    }

    #[test]
    fn kahler_examples() {
        let r = sol(2.0, 0.0, 1.0).kahler_residual(0.5).unwrap();
        assert!(r.relative() < 1e-6, "{r:?}");
        let s = sol(3.0, 1.0, 1.0);
        let r = s.kahler_residual(-0.3).unwrap();
        assert!(r.relative() < 1e-6, "{r:?}");
        let p = s.kahler_residual_with_lambda(-0.3, 1.0 + 1e-3).unwrap();
        assert!(p.relative() > 1e-5, "{p:?}");
    }
}
