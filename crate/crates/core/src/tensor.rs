//! Coordinate tensor calculus on a two-dimensional chart (x, φ) in which all
//! fields depend on x alone. Index 0 is x, index 1 is φ.
//!
//! Connection coefficients follow `D_{∂_b} ∂_c = Γ^a_{bc} ∂_a`, stored as
//! `gamma[a][b][c]`.

pub type Matrix = [[f64; 2]; 2];
pub type Connection = [[[f64; 2]; 2]; 2];

/// A diagonal metric `g = g₀(x) dx² + g₁(x) dφ²` with its first two
/// x-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagMetric {
    pub g: [f64; 2],
    pub dg: [f64; 2],
    pub d2g: [f64; 2],
}

impl DiagMetric {
    pub fn matrix(&self) -> Matrix {
        [[self.g[0], 0.0], [0.0, self.g[1]]]
    }

    pub fn inverse(&self) -> Matrix {
        [[1.0 / self.g[0], 0.0], [0.0, 1.0 / self.g[1]]]
    }

    /// ∂_k g_{ij}, derivative order `order` ∈ {1, 2}.
    fn dmetric(&self, order: usize, k: usize, i: usize, j: usize) -> f64 {
        if k != 0 || i != j {
            return 0.0;
        }
        if order == 1 {
            self.dg[i]
        } else {
            self.d2g[i]
        }
    }

    /// Levi-Civita coefficients Γ^a_{bc}.
    pub fn christoffel(&self) -> Connection {
        let mut out = [[[0.0; 2]; 2]; 2];
        for (a, row) in out.iter_mut().enumerate() {
            let inv = 1.0 / self.g[a];
            for (b, col) in row.iter_mut().enumerate() {
                for (c, v) in col.iter_mut().enumerate() {
                    *v = 0.5 * inv * (self.dmetric(1, b, a, c) + self.dmetric(1, c, a, b) - self.dmetric(1, a, b, c));
                }
            }
        }
        out
    }

    /// ∂_x Γ^a_{bc}.
    pub fn christoffel_dx(&self) -> Connection {
        let mut out = [[[0.0; 2]; 2]; 2];
        for (a, row) in out.iter_mut().enumerate() {
            let inv = 1.0 / self.g[a];
            let dinv = -self.dg[a] * inv * inv;
            for (b, col) in row.iter_mut().enumerate() {
                for (c, v) in col.iter_mut().enumerate() {
                    let first = self.dmetric(1, b, a, c) + self.dmetric(1, c, a, b) - self.dmetric(1, a, b, c);
                    let second = self.dmetric(2, b, a, c) + self.dmetric(2, c, a, b) - self.dmetric(2, a, b, c);
                    *v = 0.5 * (dinv * first + inv * second);
                }
            }
        }
        out
    }
}

/// Component a of R(∂_i, ∂_j)∂_l for a connection whose coefficients depend
/// on x only.
pub fn riemann(gamma: &Connection, dgamma_x: &Connection, a: usize, l: usize, i: usize, j: usize) -> f64 {
    let d = |k: usize, a: usize, b: usize, c: usize| if k == 0 { dgamma_x[a][b][c] } else { 0.0 };
    let r = d(i, a, j, l) - d(j, a, i, l);
    r + (0..2).map(|e| gamma[a][i][e] * gamma[e][j][l] - gamma[a][j][e] * gamma[e][i][l]).sum::<f64>()
}

/// Ricci tensor `Ric_{bc} = R^a_{bac}`, i.e. the trace of `Y ↦ R(Y, ∂_c)∂_b`.
pub fn ricci(gamma: &Connection, dgamma_x: &Connection) -> Matrix {
    let mut out = [[0.0; 2]; 2];
    for (b, row) in out.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = (0..2).map(|a| riemann(gamma, dgamma_x, a, b, a, c)).sum();
        }
    }
    out
}

/// `(∇_a ω)_b = ∂_a ω_b − Γ^c_{ab} ω_c` for a one-form depending on x only.
pub fn covariant_derivative(gamma: &Connection, omega: [f64; 2], domega_x: [f64; 2]) -> Matrix {
    let mut out = [[0.0; 2]; 2];
    for (a, row) in out.iter_mut().enumerate() {
        for (b, v) in row.iter_mut().enumerate() {
            let partial = if a == 0 { domega_x[b] } else { 0.0 };
            *v = partial - (0..2).map(|c| gamma[c][a][b] * omega[c]).sum::<f64>();
        }
    }
    out
}

/// Trace `g^{ab} T_{ab}` against a diagonal metric.
pub fn trace(metric: &DiagMetric, t: &Matrix) -> f64 {
    t[0][0] / metric.g[0] + t[1][1] / metric.g[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Round sphere in (θ, φ): g = dθ² + sin²θ dφ².
    fn sphere(theta: f64) -> DiagMetric {
        let s = theta.sin();
        let c = theta.cos();
        DiagMetric { g: [1.0, s * s], dg: [0.0, 2.0 * s * c], d2g: [0.0, 2.0 * (c * c - s * s)] }
    }

    #[test]
    fn sphere_christoffels() {
        let t: f64 = 0.7;
        let g = sphere(t).christoffel();
        assert!((g[0][1][1] + t.sin() * t.cos()).abs() < 1e-15);
        assert!((g[1][0][1] - t.cos() / t.sin()).abs() < 1e-15);
        assert!((g[1][1][0] - t.cos() / t.sin()).abs() < 1e-15);
        assert_eq!(g[0][0][0], 0.0);
    }

    #[test]
    fn sphere_ricci_is_metric() {
        for t in [0.3, 1.0, 2.2] {
            let m = sphere(t);
            let ric = ricci(&m.christoffel(), &m.christoffel_dx());
            let g = m.matrix();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((ric[i][j] - g[i][j]).abs() < 1e-14, "{ric:?}");
                }
            }
            assert!((trace(&m, &ric) - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn christoffel_dx_matches_difference() {
        let h = 1e-5;
        let t = 0.9;
        let d = sphere(t).christoffel_dx();
        let (p, q) = (sphere(t + h).christoffel(), sphere(t - h).christoffel());
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let fd = (p[a][b][c] - q[a][b][c]) / (2.0 * h);
                    assert!((d[a][b][c] - fd).abs() < 1e-9);
                }
            }
        }
    }
}
