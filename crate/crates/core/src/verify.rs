//! The full residual suite over a Chebyshev grid of a sphere solution.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{christoffel_ricci, Pole, SphereSolution};
use crate::grid::chebyshev;
use crate::par::{self, Execution};
use crate::prolongation::{omega, omega_fd_residual, pqe1_residual, pqe2_residual, step1_residual};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub max_residual: f64,
    pub grid_size: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(max_residual: f64, grid_size: usize, tolerance: f64) -> Self {
        // NaN never passes
        let pass = max_residual <= tolerance;
        Self { max_residual, grid_size, tolerance, pass }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub checks: BTreeMap<String, CheckResult>,
}

impl ResidualReport {
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, c)| !c.pass).map(|(k, _)| k.as_str()).collect()
    }

    fn push(&mut self, name: &str, max_residual: f64, grid_size: usize, tolerance: f64) {
        self.checks.insert(name.to_string(), CheckResult::new(max_residual, grid_size, tolerance));
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub grid: usize,
    pub exec: Execution,
    /// Multiplies every tolerance.
    pub tol_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { grid: 512, exec: Execution::default(), tol_scale: 1.0 }
    }
}

pub mod tolerance {
    pub const ODE: f64 = 1e-8;
    pub const QUASI_EINSTEIN: f64 = 1e-8;
    pub const RICCI_2D: f64 = 1e-9;
    pub const KAHLER: f64 = 1e-6;
    pub const OMEGA_FD: f64 = 1e-7;
    pub const PQE1: f64 = 1e-8;
    pub const PQE2: f64 = 1e-7;
    pub const STEP1: f64 = 1e-6;
    pub const KILLING: f64 = 1e-12;
    pub const GAUSS_BONNET_EXACT: f64 = 1e-9;
    pub const GAUSS_BONNET_QUAD: f64 = 1e-6;
    pub const X_NORM: f64 = 1e-6;
    pub const CONICAL: f64 = 1e-5;
    pub const ROOTS: f64 = 1e-9;
    pub const NON_GRADIENT: f64 = 1e-6;
}

/// Per-point residuals; NaN marks an evaluation error so it fails the check.
#[derive(Debug, Clone, Copy)]
struct PointResiduals {
    ode: f64,
    qe: f64,
    ricci: f64,
    kahler: Option<f64>,
    omega_fd: f64,
    omega_abs: f64,
    pqe1: f64,
    pqe2: f64,
    step1: f64,
    killing: f64,
}

fn or_nan(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::NAN)
}

fn point(sol: &SphereSolution, x: f64) -> PointResiduals {
    let ricci = christoffel_ricci(&sol.profile, x).and_then(|ric| {
        let p = sol.metric_point(x)?;
        let d0 = (ric[0][0] - 0.5 * p.r * p.g_xx).abs() / (1.0 + ric[0][0].abs());
        let d1 = (ric[1][1] - 0.5 * p.r * p.g_pp).abs() / (1.0 + ric[1][1].abs());
        Ok(d0.max(d1).max(ric[0][1].abs()).max(ric[1][0].abs()))
    });
    PointResiduals {
        ode: or_nan(sol.profile.ode_residual(x).map(|r| r.relative())),
        qe: or_nan(sol.qe_residual(x).map(|r| r.relative())),
        ricci: or_nan(ricci),
        kahler: sol.kahler_residual(x).ok().map(|r| r.relative()),
        omega_fd: or_nan(omega_fd_residual(sol, x).map(|r| r.relative())),
        omega_abs: or_nan(omega(sol, x).map(f64::abs)),
        pqe1: or_nan(pqe1_residual(sol, x).map(|r| r.relative())),
        pqe2: or_nan(pqe2_residual(sol, x).map(|r| r[0].relative().max(r[1].relative()))),
        step1: or_nan(step1_residual(sol, x).map(|r| r.relative())),
        killing: or_nan(sol.killing_identity_residual(x)),
    }
}

/// NaN-propagating maximum.
fn max_of<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, |a, v| if v.is_nan() || a.is_nan() { f64::NAN } else { a.max(v) })
}

/// Runs every check on `sol`. Grid checks use `opts.grid` interior
/// Chebyshev nodes of (x1, x2).
pub fn verify_solution(sol: &SphereSolution, opts: &VerifyOptions) -> ResidualReport {
    let n = opts.grid.max(2);
    let t = opts.tol_scale;
    let xs = chebyshev(sol.roots.x1, sol.roots.x2, n);
    let pts = par::map(&xs, opts.exec, |&x| point(sol, x));
    let mut rep = ResidualReport::default();

    rep.push("ode", max_of(pts.iter().map(|p| p.ode)), n, tolerance::ODE * t);
    rep.push("quasi_einstein", max_of(pts.iter().map(|p| p.qe)), n, tolerance::QUASI_EINSTEIN * t);
    rep.push("ricci_2d_identity", max_of(pts.iter().map(|p| p.ricci)), n, tolerance::RICCI_2D * t);
    let kahler: Vec<f64> = pts.iter().filter_map(|p| p.kahler).collect();
    let kahler_max = if kahler.is_empty() { f64::NAN } else { max_of(kahler.iter().copied()) };
    rep.push("kahler", kahler_max, kahler.len(), tolerance::KAHLER * t);
    rep.push("omega_fd", max_of(pts.iter().map(|p| p.omega_fd)), n, tolerance::OMEGA_FD * t);
    rep.push("pqe1", max_of(pts.iter().map(|p| p.pqe1)), n, tolerance::PQE1 * t);
    rep.push("pqe2", max_of(pts.iter().map(|p| p.pqe2)), n, tolerance::PQE2 * t);
    rep.push("step1", max_of(pts.iter().map(|p| p.step1)), n, tolerance::STEP1 * t);
    rep.push("killing", max_of(pts.iter().map(|p| p.killing)), n, tolerance::KILLING * t);

    // passes when Ω is somewhere non-zero: reported as the gap below the threshold
    let omega_max = max_of(pts.iter().map(|p| p.omega_abs));
    let gap = if omega_max.is_nan() { f64::NAN } else { (tolerance::NON_GRADIENT - omega_max).max(0.0) };
    rep.push("non_gradient", gap, n, 0.0);

    let (chi_exact, chi_quad) = sol.gauss_bonnet();
    rep.push("gauss_bonnet_exact", (chi_exact - 2.0).abs(), 2, tolerance::GAUSS_BONNET_EXACT * t);
    rep.push("gauss_bonnet_quadrature", (chi_quad - 2.0).abs(), 1, tolerance::GAUSS_BONNET_QUAD * t);
    rep.push("x_norm_integral", (sol.x_norm_constraint() - 8.0 * PI).abs(), 1, tolerance::X_NORM * t);

    for (name, pole) in [("conical_north", Pole::North), ("conical_south", Pole::South)] {
        let r = sol.conical_check(pole).map(|v| (v - 1.0).abs()).unwrap_or(f64::NAN);
        rep.push(name, r, 3, tolerance::CONICAL * t);
    }

    let roots = sol.roots;
    let db = roots.db1.abs().max(roots.db2.abs()).max(1.0);
    let vals = [sol.profile.value(roots.x1), sol.profile.value(roots.x2)];
    let root_val = max_of(vals.iter().map(|v| v.as_ref().map(|b| b.abs() / db).unwrap_or(f64::NAN)));
    rep.push("root_values", root_val, 2, tolerance::ROOTS * t);
    let scale = 1.0 + roots.x1.abs().max(roots.x2.abs());
    rep.push("root_symmetry", (roots.x1 + roots.x2).abs() / scale, 2, tolerance::ROOTS * t);
    rep.push("smoothness", roots.smoothness_defect(), 2, tolerance::ROOTS * t);
    rep.push("period", (sol.period * roots.db1.abs() - 4.0 * PI).abs() / (4.0 * PI), 1, tolerance::ROOTS * t);
    rep
}
