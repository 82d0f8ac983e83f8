//! Quadrature rules for Gaussian-weighted integrals over the plane.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed drift between a rule and its refinement.
pub const CONVERGENCE_TOL: f64 = 1e-6;

const NEWTON_EPS: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    /// Tensor Gauss–Hermite after whitening the Gaussian core.
    GaussHermite,
    /// Composite Gauss–Legendre on a truncated square with panel doubling.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub scheme: QuadratureScheme,
    /// Nodes per axis (per panel for the adaptive scheme).
    pub order: usize,
    /// Half-width of the integration square in whitened coordinates (adaptive only).
    pub radius: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { scheme: QuadratureScheme::GaussHermite, order: 80, radius: 8.0 }
    }
}

impl QuadratureConfig {
    pub fn gauss_hermite(order: usize) -> Self {
        Self { order, ..Self::default() }
    }

    pub fn adaptive(order: usize, radius: f64) -> Self {
        Self { scheme: QuadratureScheme::Adaptive, order, radius }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 8 {
            return Err(Error::invalid(format!("quadrature order {} < 8", self.order)));
        }
        if self.scheme == QuadratureScheme::Adaptive && !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::invalid("adaptive quadrature radius must be positive"));
        }
        Ok(())
    }

    /// `∫∫ f(z₁, z₂) exp(-z₁² - z₂²) dz₁ dz₂`, checked against a refined rule.
    pub fn integrate_plane<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(f64, f64) -> f64,
    {
        self.validate()?;
        match self.scheme {
            QuadratureScheme::GaussHermite => {
                let coarse = tensor_sum(&GaussRule::hermite(self.order)?, &f);
                let fine = tensor_sum(&GaussRule::hermite(2 * self.order)?, &f);
                check_drift(coarse, fine, self.order)
            }
            QuadratureScheme::Adaptive => {
                let rule = GaussRule::legendre(self.order)?;
                let weighted = |x: f64, y: f64| f(x, y) * (-x * x - y * y).exp();
                let mut prev = panel_sum(&rule, self.radius, 1, &weighted);
                let mut panels = 2;
                while panels <= 32 {
                    let next = panel_sum(&rule, self.radius, panels, &weighted);
                    if drift_ok(prev, next) {
                        return Ok(next.0);
                    }
                    prev = next;
                    panels *= 2;
                }
                Err(Error::Convergence(format!(
                    "adaptive rule still drifting at {} panels per axis",
                    panels / 2
                )))
            }
        }
    }
}

/// (signed estimate, absolute-value estimate)
type Estimate = (f64, f64);

fn drift_ok(coarse: Estimate, fine: Estimate) -> bool {
    let scale = fine.1.max(fine.0.abs()).max(f64::MIN_POSITIVE);
    (fine.0 - coarse.0).abs() <= CONVERGENCE_TOL * scale
}

fn check_drift(coarse: Estimate, fine: Estimate, order: usize) -> Result<f64> {
    if drift_ok(coarse, fine) {
        Ok(fine.0)
    } else {
        Err(Error::Convergence(format!(
            "Gauss-Hermite order {order} -> {}: {} vs {}",
            2 * order,
            coarse.0,
            fine.0
        )))
    }
}

fn tensor_sum<F: Fn(f64, f64) -> f64>(rule: &GaussRule, f: &F) -> Estimate {
    let mut total = 0.0;
    let mut abs = 0.0;
    for (&xi, &wi) in rule.nodes.iter().zip(&rule.weights) {
        for (&xj, &wj) in rule.nodes.iter().zip(&rule.weights) {
            let v = wi * wj * f(xi, xj);
            total += v;
            abs += v.abs();
        }
    }
    (total, abs)
}

fn panel_sum<F: Fn(f64, f64) -> f64>(rule: &GaussRule, radius: f64, panels: usize, f: &F) -> Estimate {
    let h = 2.0 * radius / panels as f64;
    let half = 0.5 * h;
    let axis: Vec<(f64, f64)> = (0..panels)
        .flat_map(|k| {
            let mid = -radius + (k as f64 + 0.5) * h;
            rule.nodes.iter().zip(&rule.weights).map(move |(&x, &w)| (mid + half * x, half * w))
        })
        .collect();
    let mut total = 0.0;
    let mut abs = 0.0;
    for &(x, wx) in &axis {
        for &(y, wy) in &axis {
            let v = wx * wy * f(x, y);
            total += v;
            abs += v.abs();
        }
    }
    (total, abs)
}

/// Nodes and weights of a one-dimensional Gauss rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Gauss–Hermite rule for the weight `exp(-x²)` on the real line, by Newton
    /// iteration on the orthonormal Hermite recurrence.
    pub fn hermite(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("Gauss-Hermite order must be positive"));
        }
        let pim4 = PI.powf(-0.25);
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        let nf = n as f64;
        let mut z = 0.0;
        for i in 0..n.div_ceil(2) {
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * x[0],
                3 => 1.91 * z - 0.91 * x[1],
                _ => 2.0 * z - x[i - 2],
            };
            let mut pp = 0.0;
            let mut converged = false;
            for _ in 0..NEWTON_MAX_ITER {
                let mut p1 = pim4;
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
                }
                pp = (2.0 * nf).sqrt() * p2;
                let z1 = z;
                z = z1 - p1 / pp;
                if (z - z1).abs() <= NEWTON_EPS * z.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::Convergence(format!("Gauss-Hermite node {i} of order {n}")));
            }
            x[i] = z;
            x[n - 1 - i] = -z;
            w[i] = 2.0 / (pp * pp);
            w[n - 1 - i] = w[i];
        }
        Ok(Self { nodes: x, weights: w })
    }

    /// Gauss–Legendre rule on `[-1, 1]`.
    pub fn legendre(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("Gauss-Legendre order must be positive"));
        }
        let nf = n as f64;
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut pp = 0.0;
            let mut converged = false;
            for _ in 0..NEWTON_MAX_ITER {
                let mut p1 = 1.0;
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
                }
                pp = nf * (z * p1 - p2) / (z * z - 1.0);
                let z1 = z;
                z = z1 - p1 / pp;
                if (z - z1).abs() <= NEWTON_EPS {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::Convergence(format!("Gauss-Legendre node {i} of order {n}")));
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
        Ok(Self { nodes: x, weights: w })
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_moments() {
        for n in [8, 20, 80, 160] {
            let rule = GaussRule::hermite(n).unwrap();
            assert!((rule.integrate(|_| 1.0) - PI.sqrt()).abs() < 1e-13, "order {n}");
            assert!((rule.integrate(|x| x * x) - PI.sqrt() / 2.0).abs() < 1e-13);
            assert!((rule.integrate(|x| x.powi(4)) - 3.0 * PI.sqrt() / 4.0).abs() < 1e-12);
            assert!(rule.integrate(|x| x.powi(3)).abs() < 1e-13);
        }
        let rule = GaussRule::hermite(20).unwrap();
        let expect = PI.sqrt() * (-0.25f64).exp();
        assert!((rule.integrate(f64::cos) - expect).abs() < 1e-14);
    }

    #[test]
    fn legendre_polynomials_exact() {
        let rule = GaussRule::legendre(10).unwrap();
        assert!((rule.integrate(|_| 1.0) - 2.0).abs() < 1e-14);
        assert!((rule.integrate(|x| x.powi(18)) - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn plane_integrals_agree_between_schemes() {
        let f = |x: f64, y: f64| 1.0 + x * x * y * y + (x - y).cos();
        let exact = PI * (1.0 + 0.25) + PI * (-0.5f64).exp();
        let gh = QuadratureConfig::default().integrate_plane(f).unwrap();
        assert!((gh - exact).abs() < 1e-12);
        let ad = QuadratureConfig::adaptive(16, 8.0).integrate_plane(f).unwrap();
        assert!((ad - exact).abs() < 1e-9);
    }

    #[test]
    fn low_order_and_nonconvergence_rejected() {
        assert!(QuadratureConfig::gauss_hermite(4).integrate_plane(|_, _| 1.0).is_err());
        // exp(+z²) growth defeats any fixed Gauss-Hermite rule
        let r = QuadratureConfig::gauss_hermite(8).integrate_plane(|x, y| (0.9 * (x * x + y * y)).exp());
        assert!(matches!(r, Err(Error::Convergence(_))));
    }
}
