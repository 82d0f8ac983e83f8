//! State families: standard-form two-mode Gaussians, squeezed thermal states,
//! the 2+2-mode family, and the single-photon-added squeezed thermal Wigner function.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quadrature::{GaussRule, QuadratureConfig};
use crate::symplectic::{is_physical, CovarianceMatrix, VACUUM_VARIANCE};

/// `V = [[diag(a,a), diag(c1,c2)], [diag(c1,c2), diag(b,b)]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoModeStandardForm {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl TwoModeStandardForm {
    /// Checks `a, b ≥ 1/4`, `ab ≥ c_i²` and `V + iJ/4 ⪰ 0`.
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Result<Self> {
        if ![a, b, c1, c2].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("standard form parameters must be finite"));
        }
        if a < VACUUM_VARIANCE || b < VACUUM_VARIANCE {
            return Err(Error::invalid(format!("constraint a,b >= 1/4 violated (a={a}, b={b})")));
        }
        for (name, c) in [("c1", c1), ("c2", c2)] {
            if a * b < c * c {
                return Err(Error::invalid(format!(
                    "constraint ab >= {name}^2 violated (ab={}, {name}^2={})",
                    a * b,
                    c * c
                )));
            }
        }
        let s = Self { a, b, c1, c2 };
        if !is_physical(&s.covariance()) {
            return Err(Error::invalid(format!(
                "constraint V + iJ/4 >= 0 violated for (a={a}, b={b}, c1={c1}, c2={c2})"
            )));
        }
        Ok(s)
    }

    pub fn vacuum() -> Self {
        Self { a: 0.25, b: 0.25, c1: 0.0, c2: 0.0 }
    }

    /// Two-mode squeezed vacuum with squeezing `r`.
    pub fn tmsv(r: f64) -> Result<Self> {
        squeezed_thermal_params(0.0, r)
    }

    pub fn covariance(&self) -> CovarianceMatrix {
        let Self { a, b, c1, c2 } = *self;
        CovarianceMatrix::from_rows(&[
            vec![a, 0.0, c1, 0.0],
            vec![0.0, a, 0.0, c2],
            vec![c1, 0.0, b, 0.0],
            vec![0.0, c2, 0.0, b],
        ])
        .expect("standard form is symmetric 4x4")
    }

    pub fn is_product(&self) -> bool {
        self.c1 == 0.0 && self.c2 == 0.0
    }
}

/// Builds the 4×4 standard-form covariance matrix.
pub fn standard_two_mode(a: f64, b: f64, c1: f64, c2: f64) -> Result<CovarianceMatrix> {
    Ok(TwoModeStandardForm::new(a, b, c1, c2)?.covariance())
}

/// Two-mode squeezing of thermal noise with mean photon number `n` per mode:
/// `a = b = (1+2n)cosh2r/4`, `c1 = -c2 = (1+2n)sinh2r/4`.
pub fn squeezed_thermal_params(n: f64, r: f64) -> Result<TwoModeStandardForm> {
    check_nr(n, r)?;
    let s = 1.0 + 2.0 * n;
    let a = s * (2.0 * r).cosh() / 4.0;
    let c = s * (2.0 * r).sinh() / 4.0;
    Ok(TwoModeStandardForm { a, b: a, c1: c, c2: -c })
}

fn check_nr(n: f64, r: f64) -> Result<()> {
    if !(n.is_finite() && n >= 0.0) {
        return Err(Error::invalid(format!("mean photon number must be >= 0 (got {n})")));
    }
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::invalid(format!("squeezing must be >= 0 (got {r})")));
    }
    Ok(())
}

/// Parameters of the 2+2-mode family `[[a·1₄, cR], [cRᵀ, b·1₄]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoTwoFamilyParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TwoTwoFamilyParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if ![a, b, c].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("2+2 family parameters must be finite"));
        }
        if a < VACUUM_VARIANCE || b < VACUUM_VARIANCE {
            return Err(Error::invalid(format!("constraint a,b >= 1/4 violated (a={a}, b={b})")));
        }
        Ok(Self { a, b, c })
    }

    pub fn covariance(&self) -> CovarianceMatrix {
        two_two_covariance(self.a, self.b, self.c)
    }

    /// `|c| ≤ threshold(a, b)`; false when no correlated state exists.
    pub fn is_valid(&self) -> bool {
        family_threshold(self.a, self.b).is_ok_and(|t| self.c.abs() <= t)
    }
}

/// The coupling block `R` of the 2+2 family, in `(x3, p3, x4, p4)` columns.
pub fn coupling_matrix() -> DMatrix<f64> {
    DMatrix::from_row_slice(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, -1.0, 0.0, //
            0.0, -1.0, 0.0, 0.0,
        ],
    )
}

fn two_two_covariance(a: f64, b: f64, c: f64) -> CovarianceMatrix {
    let r = coupling_matrix() * c;
    let mut v = DMatrix::zeros(8, 8);
    v.view_mut((0, 0), (4, 4)).fill_with_identity();
    v.view_mut((0, 0), (4, 4)).scale_mut(a);
    v.view_mut((4, 4), (4, 4)).fill_with_identity();
    v.view_mut((4, 4), (4, 4)).scale_mut(b);
    v.view_mut((0, 4), (4, 4)).copy_from(&r);
    v.view_mut((4, 0), (4, 4)).copy_from(&r.transpose());
    CovarianceMatrix::new(v).expect("2+2 family matrix is symmetric 8x8")
}

/// 8×8 covariance of the 2+2 family. Physicality is not enforced here; compare
/// `|c|` with [`family_threshold`] or call `is_physical`.
pub fn two_two_family(a: f64, b: f64, c: f64) -> Result<CovarianceMatrix> {
    Ok(TwoTwoFamilyParams::new(a, b, c)?.covariance())
}

/// Largest `|c|` for which the 2+2 family is a valid state:
/// `sqrt(ab - sqrt(a² + b² - 1/16)/4)`.
pub fn family_threshold(a: f64, b: f64) -> Result<f64> {
    if a < VACUUM_VARIANCE || b < VACUUM_VARIANCE {
        return Err(Error::invalid(format!("constraint a,b >= 1/4 violated (a={a}, b={b})")));
    }
    let radicand = a * b - (a * a + b * b - 1.0 / 16.0).sqrt() / 4.0;
    if radicand < 0.0 {
        return Err(Error::invalid(format!("no valid correlation for a={a}, b={b} (radicand {radicand})")));
    }
    Ok(radicand.sqrt())
}

/// A Wigner function of the form `norm · P(ξ) · N(ξ; 0, V)` where `N` is the
/// normalized Gaussian density with covariance `V` and `P` an optional polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerSpec {
    pub covariance: CovarianceMatrix,
    pub poly: Option<Polynomial>,
    pub norm_prefactor: f64,
}

impl WignerSpec {
    pub fn gaussian(covariance: CovarianceMatrix) -> Self {
        Self { covariance, poly: None, norm_prefactor: 1.0 }
    }

    pub fn modes(&self) -> usize {
        self.covariance.modes()
    }

    pub fn poly_degree(&self) -> u32 {
        self.poly.as_ref().map_or(0, Polynomial::degree)
    }

    fn gaussian_norm(&self) -> f64 {
        let m = self.modes() as i32;
        1.0 / ((2.0 * PI).powi(m) * self.covariance.determinant().sqrt())
    }

    fn inverse(&self) -> Result<DMatrix<f64>> {
        self.covariance
            .matrix()
            .clone()
            .cholesky()
            .map(|c| c.inverse())
            .ok_or_else(|| Error::SingularInput("Wigner covariance is not positive definite".into()))
    }

    fn prefactor_at(&self, xi: &[f64]) -> f64 {
        self.norm_prefactor * self.poly.as_ref().map_or(1.0, |p| p.eval(xi))
    }

    /// Point value `W(ξ)`.
    pub fn value(&self, xi: &[f64]) -> Result<f64> {
        if xi.len() != self.covariance.dim() {
            return Err(Error::invalid("phase-space point has wrong dimension"));
        }
        let vinv = self.inverse()?;
        let x = DVector::from_column_slice(xi);
        let q = (x.transpose() * vinv * &x)[(0, 0)];
        Ok(self.prefactor_at(xi) * self.gaussian_norm() * (-0.5 * q).exp())
    }

    /// Restriction to the plane `ξ = L y`, `y ∈ R²`: returns `Lᵀ V⁻¹ L`.
    fn slice_form(&self, lift: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if lift.nrows() != self.covariance.dim() || lift.ncols() != 2 {
            return Err(Error::invalid("slice map must be (2m x 2)"));
        }
        Ok(lift.transpose() * self.inverse()? * lift)
    }

    /// `∫ W(L y) d²y` by quadrature in coordinates that turn the Gaussian core into
    /// `exp(-|z|²)`.
    pub fn slice_integral_quadrature(&self, lift: &DMatrix<f64>, q: &QuadratureConfig) -> Result<f64> {
        let form = self.slice_form(lift)?;
        let chol = form
            .clone()
            .cholesky()
            .ok_or_else(|| Error::NumericDomain("restricted Gaussian form is not positive definite".into()))?;
        let g = chol.l();
        let gt_inv = g
            .transpose()
            .try_inverse()
            .ok_or_else(|| Error::NumericDomain("singular restricted form".into()))?;
        let t = gt_inv * std::f64::consts::SQRT_2;
        let map = lift * &t;
        let jac = t.determinant().abs();
        let dim = self.covariance.dim();
        let integral = q.integrate_plane(|z1, z2| {
            let mut xi = [0.0; 16];
            let xi = &mut xi[..dim];
            for (k, x) in xi.iter_mut().enumerate() {
                *x = map[(k, 0)] * z1 + map[(k, 1)] * z2;
            }
            self.prefactor_at(xi)
        })?;
        Ok(self.gaussian_norm() * jac * integral)
    }

    /// `∫ W(L y) d²y` exactly, by Gaussian moments of the polynomial prefactor.
    pub fn slice_integral_moments(&self, lift: &DMatrix<f64>) -> Result<f64> {
        let form = self.slice_form(lift)?;
        let det = form.determinant();
        if !(det > 0.0) {
            return Err(Error::NumericDomain("restricted Gaussian form is not positive definite".into()));
        }
        let cov_y = form.try_inverse().ok_or_else(|| Error::NumericDomain("singular restricted form".into()))?;
        let cov_xi = lift * cov_y * lift.transpose();
        let mean_p = self.poly.as_ref().map_or(1.0, |p| p.gaussian_expectation(&cov_xi));
        Ok(self.norm_prefactor * self.gaussian_norm() * 2.0 * PI / det.sqrt() * mean_p)
    }

    /// `∫ W` over all of phase space, exactly.
    pub fn total_integral_moments(&self) -> f64 {
        self.norm_prefactor
            * self
                .poly
                .as_ref()
                .map_or(1.0, |p| p.gaussian_expectation(self.covariance.matrix()))
    }

    /// `∫ W` over all of phase space by tensor Gauss–Hermite in every coordinate.
    pub fn total_integral_quadrature(&self, order: usize) -> Result<f64> {
        let dim = self.covariance.dim();
        let chol = self
            .covariance
            .matrix()
            .clone()
            .cholesky()
            .ok_or_else(|| Error::SingularInput("Wigner covariance is not positive definite".into()))?;
        let map = chol.l() * std::f64::consts::SQRT_2;
        let rule = GaussRule::hermite(order)?;
        let mut idx = vec![0usize; dim];
        let mut total = 0.0;
        let mut z = vec![0.0; dim];
        let mut xi = vec![0.0; dim];
        loop {
            let mut w = 1.0;
            for k in 0..dim {
                z[k] = rule.nodes[idx[k]];
                w *= rule.weights[idx[k]];
            }
            for r in 0..dim {
                xi[r] = (0..=r).map(|c| map[(r, c)] * z[c]).sum();
            }
            total += w * self.prefactor_at(&xi);
            let mut k = 0;
            loop {
                if k == dim {
                    return Ok(total / PI.powi(self.modes() as i32));
                }
                idx[k] += 1;
                if idx[k] < order {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// Wigner function of the single-photon-added two-mode squeezed thermal state
/// (photon added to mode 2), stored as polynomial × Gaussian.
pub fn photon_added_sts_wigner(n: f64, r: f64) -> Result<WignerSpec> {
    check_nr(n, r)?;
    let s = 1.0 + 2.0 * n;
    let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let cosh2 = r.cosh().powi(2);
    // variables (x1, p1, x2, p2)
    let u = Polynomial::linear(&[-sh, 0.0, s + ch, 0.0]);
    let v = Polynomial::linear(&[0.0, sh, 0.0, s + ch]);
    let poly = u.mul(&u).add(&v.mul(&v)).add(&Polynomial::constant(4, -s * (n + cosh2)));
    let covariance = squeezed_thermal_params(n, r)?.covariance();
    Ok(WignerSpec {
        covariance,
        poly: Some(poly),
        norm_prefactor: 1.0 / (s * s * (cosh2 + n * ch)),
    })
}
