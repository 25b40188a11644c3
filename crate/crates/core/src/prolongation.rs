//! The prolonged first-order system for (X♭, Ω, R), its scalar constraint,
//! and the deformed connection `D = ∇ − p X♭⊗Id − q Id⊗X♭`.
//!
//! `dX♭ = Ω vol` with vol = dx∧dφ, and ⋆ on one-forms is fixed by
//! `⋆α ∧ β = g(α, β) vol`, i.e. `⋆(ω_x dx + ω_φ dφ) = (ω_φ/B) dx − B ω_x dφ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{chart_metric, positive_eval, qe_tensor, term_scales, x_flat, SphereSolution, TensorResidual};
use crate::profile::{Profile, ProfileEval, Residual};
use crate::tensor::{self, Connection, Matrix};

/// Values of the prolonged variables at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProlongedState {
    pub x: f64,
    pub x_flat: [f64; 2],
    pub omega: f64,
    pub r: f64,
    pub dr: f64,
}

/// Deformation coefficients of `D`. Its torsion is `(p − q) Id ∧ X♭`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineConnectionSpec {
    pub p: f64,
    pub q: f64,
}

impl AffineConnectionSpec {
    /// The skew-Ricci choice.
    pub const SKEW: Self = Self { p: -0.5, q: 1.0 };

    pub fn torsion_coefficient(&self) -> f64 {
        self.p - self.q
    }
}

fn omega_of(m: f64, e: &ProfileEval) -> f64 {
    let q = 1.0 + e.x * e.x;
    m * (e.b1 * q - 2.0 * e.x * e.b) / (q * q)
}

fn omega_prime_of(m: f64, e: &ProfileEval) -> f64 {
    let x = e.x;
    let q = 1.0 + x * x;
    m * (e.b2 / q - 4.0 * x * e.b1 / (q * q) + e.b * (6.0 * x * x - 2.0) / (q * q * q))
}

/// Ω = m d/dx[B/(1 + x²)].
pub fn omega(sol: &SphereSolution, x: f64) -> Result<f64> {
    let e = sol.eval(x)?;
    Ok(omega_of(sol.m(), &e))
}

pub fn omega_prime(sol: &SphereSolution, x: f64) -> Result<f64> {
    let e = sol.eval(x)?;
    Ok(omega_prime_of(sol.m(), &e))
}

/// |Ω − ∂ₓX♭_φ (central difference)| relative to 1 + |Ω|.
pub fn omega_fd_residual(sol: &SphereSolution, x: f64) -> Result<Residual> {
    let w = omega(sol, x)?;
    let (x1, x2) = (sol.roots.x1, sol.roots.x2);
    let h = 1e-4 * (x2 - x1).min(x - x1).min(x2 - x).max(1e-3);
    let h = h.min(0.25 * (x - x1).min(x2 - x));
    let xp = |t: f64| -> Result<f64> { Ok(sol.metric_point(t)?.x_p) };
    let fd = (-xp(x + 2.0 * h)? + 8.0 * xp(x + h)? - 8.0 * xp(x - h)? + xp(x - 2.0 * h)?) / (12.0 * h);
    Ok(Residual::new(w - fd, 1.0 + w.abs()))
}

pub fn prolonged_state(sol: &SphereSolution, x: f64) -> Result<ProlongedState> {
    let e = sol.eval(x)?;
    let (b3, _) = sol.profile.higher_derivatives(x)?;
    let (xf, _) = x_flat(sol.m(), &e);
    Ok(ProlongedState { x, x_flat: xf, omega: omega_of(sol.m(), &e), r: -e.b2, dr: -b3 })
}

/// `∇X♭ − (1/m)X♭⊗X♭ − (λ − R/2)g − ½Ω vol`, all four components.
pub fn pqe1_residual(sol: &SphereSolution, x: f64) -> Result<TensorResidual> {
    sol.chart_check(x)?;
    pqe1_local(&sol.profile, x)
}

pub fn pqe1_local(profile: &Profile, x: f64) -> Result<TensorResidual> {
    let e = positive_eval(profile, x)?;
    let (m, lambda) = (profile.params().m, profile.params().lambda);
    let metric = chart_metric(&e);
    let (xf, dxf) = x_flat(m, &e);
    let nabla = tensor::covariant_derivative(&metric.christoffel(), xf, dxf);
    let g = metric.matrix();
    let r = -e.b2;
    let w = omega_of(m, &e);
    let vol = [[0.0, 1.0], [-1.0, 0.0]];
    let mut quad = [[0.0; 2]; 2];
    let mut trace = [[0.0; 2]; 2];
    let mut skew = [[0.0; 2]; 2];
    let mut res = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            quad[i][j] = xf[i] * xf[j] / m;
            trace[i][j] = (lambda - 0.5 * r) * g[i][j];
            skew[i][j] = 0.5 * w * vol[i][j];
            res[i][j] = nabla[i][j] - quad[i][j] - trace[i][j] - skew[i][j];
        }
    }
    Ok(TensorResidual { components: res, scales: term_scales(&[nabla, quad, trace, skew]) })
}

/// Residual of `dΩ = (3/m)ΩX♭ + ⋆dR + (1/m)(2λ − (m+1)R)⋆X♭` as
/// (dx, dφ) components, each relative to 1 + its largest term.
pub fn pqe2_residual(sol: &SphereSolution, x: f64) -> Result<[Residual; 2]> {
    pqe2_with_star_sign(sol, x, 1.0)
}

/// [`pqe2_residual`] with the Hodge star multiplied by `star_sign`.
pub fn pqe2_with_star_sign(sol: &SphereSolution, x: f64, star_sign: f64) -> Result<[Residual; 2]> {
    let e = sol.eval(x)?;
    let (b3, _) = sol.profile.higher_derivatives(x)?;
    let (m, lambda) = (sol.m(), sol.lambda());
    let (xf, _) = x_flat(m, &e);
    let star = |w: [f64; 2]| [star_sign * w[1] / e.b, -star_sign * e.b * w[0]];
    let r = -e.b2;
    let dr = [-b3, 0.0];
    let w = omega_of(m, &e);
    let d_omega = [omega_prime_of(m, &e), 0.0];
    let k = (2.0 * lambda - (m + 1.0) * r) / m;
    let star_dr = star(dr);
    let star_x = star(xf);
    let mut out = [Residual::new(0.0, 1.0); 2];
    for (i, o) in out.iter_mut().enumerate() {
        let terms = [d_omega[i], 3.0 / m * w * xf[i], star_dr[i], k * star_x[i]];
        let value = terms[0] - terms[1] - terms[2] - terms[3];
        *o = Residual::new(value, 1.0 + terms.iter().fold(0.0f64, |a, t| a.max(t.abs())));
    }
    Ok(out)
}

/// The scalar constraint
/// `−ΔR + (1 + 4/m)⟨X, dR⟩ + (3/m)Ω² + (1/m²)(2λ − (m+1)R)(2|X|² − 2λm + mR)`.
pub fn step1_residual(sol: &SphereSolution, x: f64) -> Result<Residual> {
    step1_with_lambda(sol, x, sol.lambda())
}

/// [`step1_residual`] with λ in the constraint replaced by `lambda`.
pub fn step1_with_lambda(sol: &SphereSolution, x: f64, lambda: f64) -> Result<Residual> {
    let e = sol.eval(x)?;
    let (b3, b4) = sol.profile.higher_derivatives(x)?;
    let m = sol.m();
    let (xf, _) = x_flat(m, &e);
    let r = -e.b2;
    let (r1, r2) = (-b3, -b4);
    let lap = e.b1 * r1 + e.b * r2;
    let x_dr = e.b * xf[0] * r1;
    let w = omega_of(m, &e);
    let x_norm = m * m * e.b / (1.0 + x * x);
    let terms = [
        -lap,
        (1.0 + 4.0 / m) * x_dr,
        3.0 / m * w * w,
        (2.0 * lambda - (m + 1.0) * r) * (2.0 * x_norm - 2.0 * lambda * m + m * r) / (m * m),
    ];
    let value: f64 = terms.iter().sum();
    Ok(Residual::new(value, 1.0 + terms.iter().fold(0.0f64, |a, t| a.max(t.abs()))))
}

/// Connection coefficients of D and their x-derivatives.
fn deformed_connection(profile: &Profile, spec: AffineConnectionSpec, x: f64) -> Result<(Connection, Connection)> {
    let e = positive_eval(profile, x)?;
    let metric = chart_metric(&e);
    let (xf, dxf) = x_flat(profile.params().m, &e);
    let mut gamma = metric.christoffel();
    let mut dgamma = metric.christoffel_dx();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
                gamma[a][b][c] -= spec.p * xf[b] * delta(a, c) + spec.q * delta(a, b) * xf[c];
                dgamma[a][b][c] -= spec.p * dxf[b] * delta(a, c) + spec.q * delta(a, b) * dxf[c];
            }
        }
    }
    Ok((gamma, dgamma))
}

/// Ricci tensor `Ric_{bc} = R^a_{bac}` of D built on any non-closed profile
/// with B(x) > 0.
pub fn connection_ricci(profile: &Profile, spec: AffineConnectionSpec, x: f64) -> Result<Matrix> {
    let (gamma, dgamma) = deformed_connection(profile, spec, x)?;
    Ok(tensor::ricci(&gamma, &dgamma))
}

/// Antisymmetric part of Ric_D minus `−½(2p + q)Ω vol`, as the single
/// independent (x, φ) component.
pub fn skew_part_residual(profile: &Profile, spec: AffineConnectionSpec, x: f64) -> Result<Residual> {
    let ric = connection_ricci(profile, spec, x)?;
    let e = positive_eval(profile, x)?;
    let w = omega_of(profile.params().m, &e);
    let skew = 0.5 * (ric[0][1] - ric[1][0]);
    let expected = -0.5 * (2.0 * spec.p + spec.q) * w;
    Ok(Residual::new(skew - expected, 1.0 + skew.abs().max(expected.abs())))
}

/// Ricci tensor of D relative to 1 + the largest Levi-Civita Ricci
/// component, for m = −1, λ = 0 profiles only.
pub fn skew_ricci_residual(profile: &Profile, spec: AffineConnectionSpec, x: f64) -> Result<TensorResidual> {
    let params = profile.params();
    if params.m != -1.0 || params.lambda != 0.0 {
        return Err(Error::NotApplicable("skew-Ricci connection needs m = -1 and lambda = 0"));
    }
    connection_ricci_residual(profile, spec, x)
}

/// Ric_D with per-component scale 1 + max(|Ric_D|, |Ric_LC|).
pub fn connection_ricci_residual(profile: &Profile, spec: AffineConnectionSpec, x: f64) -> Result<TensorResidual> {
    let ric = connection_ricci(profile, spec, x)?;
    let lc = connection_ricci(profile, AffineConnectionSpec { p: 0.0, q: 0.0 }, x)?;
    Ok(TensorResidual { components: ric, scales: term_scales(&[ric, lc]) })
}

/// The symmetric part of the pqe1 residual, as a quasi-Einstein residual.
pub fn symmetrized_pqe1(profile: &Profile, x: f64) -> Result<Matrix> {
    let r = pqe1_local(profile, x)?;
    let c = r.components;
    Ok([[c[0][0], 0.5 * (c[0][1] + c[1][0])], [0.5 * (c[0][1] + c[1][0]), c[1][1]]])
}

/// The quasi-Einstein residual at x, for comparison with [`symmetrized_pqe1`].
pub fn qe_components(profile: &Profile, x: f64) -> Result<Matrix> {
    let e = positive_eval(profile, x)?;
    let metric = chart_metric(&e);
    let g = metric.matrix();
    let ricci = g.map(|row| row.map(|v| -0.5 * e.b2 * v));
    let (xf, dxf) = x_flat(profile.params().m, &e);
    Ok(qe_tensor(&metric, &ricci, xf, dxf, profile.params().m, profile.params().lambda).components)
}
