//! The local-orthogonal-observable witness `W_{μ1μ2}` and the SWAP witness.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{TwoModeStandardForm, WignerSpec};
use crate::quadrature::QuadratureConfig;

/// A witness value below this certifies entanglement.
pub const VERDICT_TOL: f64 = 1e-10;
/// Smallest accepted `|μ₋μ₊|`.
pub const MIN_MU_PRODUCT: f64 = 1e-12;
/// Highest polynomial degree integrated by moment expansion.
pub const MAX_MOMENT_DEGREE: u32 = 4;

pub fn is_entangled(value: f64) -> bool {
    value < -VERDICT_TOL
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessParams {
    pub mu1: f64,
    pub mu2: f64,
}

impl WitnessParams {
    pub fn new(mu1: f64, mu2: f64) -> Result<Self> {
        if !(mu1.is_finite() && mu2.is_finite()) {
            return Err(Error::invalid("witness parameters must be finite"));
        }
        let prod = (mu1 - mu2) * (mu1 + mu2);
        if prod.abs() <= MIN_MU_PRODUCT {
            return Err(Error::invalid(format!(
                "witness needs mu1 - mu2 != 0 and mu1 + mu2 != 0 (got mu1={mu1}, mu2={mu2})"
            )));
        }
        Ok(Self { mu1, mu2 })
    }

    /// `μ = (0, 1)`, the setting used for the negativity bound.
    pub fn standard() -> Self {
        Self { mu1: 0.0, mu2: 1.0 }
    }

    pub fn from_mu_minus_plus(mu_minus: f64, mu_plus: f64) -> Result<Self> {
        Self::new(0.5 * (mu_plus + mu_minus), 0.5 * (mu_plus - mu_minus))
    }

    pub fn mu_minus(&self) -> f64 {
        self.mu1 - self.mu2
    }

    pub fn mu_plus(&self) -> f64 {
        self.mu1 + self.mu2
    }

    /// Phase-space map `α ↦ (μ₂α* − μ₁α, α)` as a 4×2 real matrix.
    fn lift(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(4, 2, &[-self.mu_minus(), 0.0, 0.0, -self.mu_plus(), 1.0, 0.0, 0.0, 1.0])
    }
}

/// Closed-form `Tr(ρW)` for a standard-form Gaussian state.
pub fn witness_expectation_gaussian(s: &TwoModeStandardForm, w: &WitnessParams) -> Result<f64> {
    let (mm, mp) = (w.mu_minus(), w.mu_plus());
    let f1 = s.a + s.b * mm * mm + 2.0 * s.c1 * mm;
    let f2 = s.a + s.b * mp * mp + 2.0 * s.c2 * mp;
    if !(f1 > 0.0 && f2 > 0.0) {
        return Err(Error::NumericDomain(format!(
            "witness inner factors must be positive (got {f1}, {f2}); input is unphysical"
        )));
    }
    Ok(1.0 - (mm * mp).abs().sqrt() / (2.0 * (f1 * f2).sqrt()))
}

fn check_two_mode(wspec: &WignerSpec) -> Result<()> {
    if wspec.modes() != 2 {
        return Err(Error::invalid(format!("witness needs a two-mode state, got {} modes", wspec.modes())));
    }
    Ok(())
}

/// `1 − π√|μ₋μ₊| ∫ W(μ₂α* − μ₁α, α) d²α` by quadrature.
pub fn witness_expectation_wigner(wspec: &WignerSpec, w: &WitnessParams, q: &QuadratureConfig) -> Result<f64> {
    check_two_mode(wspec)?;
    let integral = wspec.slice_integral_quadrature(&w.lift(), q)?;
    Ok(1.0 - PI * (w.mu_minus() * w.mu_plus()).abs().sqrt() * integral)
}

/// Same integral as [`witness_expectation_wigner`], evaluated exactly from the
/// Gaussian moments of the polynomial prefactor.
pub fn witness_expectation_exact(wspec: &WignerSpec, w: &WitnessParams) -> Result<f64> {
    check_two_mode(wspec)?;
    check_moment_degree(wspec)?;
    let integral = wspec.slice_integral_moments(&w.lift())?;
    Ok(1.0 - PI * (w.mu_minus() * w.mu_plus()).abs().sqrt() * integral)
}

/// Moment expansion for low-degree prefactors, quadrature otherwise.
pub fn witness_expectation_auto(wspec: &WignerSpec, w: &WitnessParams, q: &QuadratureConfig) -> Result<f64> {
    if wspec.poly_degree() <= MAX_MOMENT_DEGREE {
        witness_expectation_exact(wspec, w)
    } else {
        witness_expectation_wigner(wspec, w, q)
    }
}

fn check_moment_degree(wspec: &WignerSpec) -> Result<()> {
    if wspec.poly_degree() > MAX_MOMENT_DEGREE {
        return Err(Error::invalid(format!(
            "moment expansion limited to degree {MAX_MOMENT_DEGREE}, prefactor has degree {}",
            wspec.poly_degree()
        )));
    }
    Ok(())
}

/// Minimum of the witness over `(μ1, μ2)` and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalWitness {
    pub value: f64,
    pub mu_minus: f64,
    pub mu_plus: f64,
}

impl OptimalWitness {
    pub fn params(&self) -> WitnessParams {
        WitnessParams { mu1: 0.5 * (self.mu_plus + self.mu_minus), mu2: 0.5 * (self.mu_plus - self.mu_minus) }
    }
}

/// `1 − 1/(4√((√ab − |c1|)(√ab − |c2|)))` at `μ∓ = −sign(c_{1,2})√(a/b)`.
/// A zero correlation takes the negative sign.
pub fn optimal_witness(s: &TwoModeStandardForm) -> Result<OptimalWitness> {
    let g = (s.a * s.b).sqrt();
    let (d1, d2) = (g - s.c1.abs(), g - s.c2.abs());
    if !(d1 > 0.0 && d2 > 0.0) {
        return Err(Error::SingularLimit(format!(
            "sqrt(ab) = {g} must exceed |c1| = {} and |c2| = {}",
            s.c1.abs(),
            s.c2.abs()
        )));
    }
    let scale = (s.a / s.b).sqrt();
    let pick = |c: f64| if c < 0.0 { scale } else { -scale };
    Ok(OptimalWitness {
        value: 1.0 - 1.0 / (4.0 * (d1 * d2).sqrt()),
        mu_minus: pick(s.c1),
        mu_plus: pick(s.c2),
    })
}

/// Closed form at `μ = (0, 1)` for the photon-added squeezed thermal state.
pub fn witness_photon_added_closed(n: f64, r: f64) -> Result<f64> {
    if !(n.is_finite() && n >= 0.0 && r.is_finite() && r >= 0.0) {
        return Err(Error::invalid(format!("need n >= 0 and r >= 0 (got n={n}, r={r})")));
    }
    let s = 1.0 + 2.0 * n;
    Ok(1.0 - (4.0 * r).exp() * n * (1.0 + n) / (s * s * (r.cosh().powi(2) + n * (2.0 * r).cosh())))
}

fn swap_lift() -> DMatrix<f64> {
    DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0])
}

/// `Tr(ρV) = π ∫ W(α, α) d²α` by quadrature.
pub fn swap_expectation(wspec: &WignerSpec, q: &QuadratureConfig) -> Result<f64> {
    check_two_mode(wspec)?;
    Ok(PI * wspec.slice_integral_quadrature(&swap_lift(), q)?)
}

/// `Tr(ρV)` from Gaussian moments (prefactor degree ≤ 4).
pub fn swap_expectation_exact(wspec: &WignerSpec) -> Result<f64> {
    check_two_mode(wspec)?;
    check_moment_degree(wspec)?;
    Ok(PI * wspec.slice_integral_moments(&swap_lift())?)
}

/// `p(exp(−|α1−α2|²) − 1) + 1 − p` for the coherent-state mixture.
pub fn swap_expectation_coherent_mixture(p: f64, alpha1: Complex<f64>, alpha2: Complex<f64>) -> Result<f64> {
    check_probability(p)?;
    let overlap = (-(alpha1 - alpha2).norm_sqr()).exp();
    Ok(p * (overlap - 1.0) + 1.0 - p)
}

/// Mixing weight above which the coherent mixture's SWAP value is negative.
pub fn coherent_mixture_threshold(alpha1: Complex<f64>, alpha2: Complex<f64>) -> f64 {
    1.0 / (2.0 - (-(alpha1 - alpha2).norm_sqr()).exp())
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("mixing weight must lie in [0, 1] (got {p})")));
    }
    Ok(())
}
