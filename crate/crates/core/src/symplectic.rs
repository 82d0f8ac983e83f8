//! Covariance-matrix algebra in the quadrature ordering `(x1, p1, ..., xm, pm)`.
//!
//! Convention: `x = (a + a†)/2`, `p = -i(a - a†)/2`, so the vacuum has variance 1/4
//! and a covariance matrix describes a quantum state iff `V + iJ/4 ⪰ 0`.
//! Literature using `ħ = 1` (vacuum variance 1/2) or `ħ = 2` (vacuum variance 1)
//! converts by scaling the matrix by 1/2 or 1/4 respectively.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative asymmetry below which inputs are symmetrized instead of rejected.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Slack on the minimum eigenvalue of `V + iJ/4`.
pub const PHYSICALITY_TOL: f64 = 1e-10;
/// Largest real part tolerated on an eigenvalue of `J⁻¹V`.
pub const IMAG_RESIDUAL_TOL: f64 = 1e-9;

/// Vacuum quadrature variance.
pub const VACUUM_VARIANCE: f64 = 0.25;

/// Real symmetric `2m × 2m` second-moment matrix of an `m`-mode state.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    modes: usize,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Validates shape and symmetry. Asymmetry below `SYMMETRY_TOL` (relative to the
    /// largest entry) is removed by averaging with the transpose.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::invalid(format!("covariance matrix is {rows}x{cols}, not square")));
        }
        if rows == 0 || rows % 2 != 0 {
            return Err(Error::invalid(format!("covariance dimension {rows} is not 2m with m >= 1")));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("covariance matrix has non-finite entries"));
        }
        let scale = entries.amax().max(f64::MIN_POSITIVE);
        let asym = (&entries - entries.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::invalid(format!(
                "covariance matrix is not symmetric (max asymmetry {asym:e})"
            )));
        }
        let entries = if asym > 0.0 {
            (&entries + entries.transpose()) * 0.5
        } else {
            entries
        };
        Ok(Self { modes: rows / 2, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("covariance rows have inconsistent lengths"));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// `m`-mode vacuum, `I/4`.
    pub fn vacuum(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::invalid("mode count must be positive"));
        }
        Self::new(DMatrix::identity(2 * modes, 2 * modes) * VACUUM_VARIANCE)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        2 * self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn determinant(&self) -> f64 {
        self.entries.determinant()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries.row_iter().map(|r| r.iter().copied().collect()).collect()
    }
}

/// JSON exchange form: `{"modes": m, "ordering": "x1,p1,...,xm,pm", "matrix": [[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CovarianceJson {
    pub modes: usize,
    #[serde(default = "default_ordering")]
    pub ordering: String,
    pub matrix: Vec<Vec<f64>>,
}

fn default_ordering() -> String {
    "x1,p1,...,xm,pm".to_string()
}

impl From<&CovarianceMatrix> for CovarianceJson {
    fn from(v: &CovarianceMatrix) -> Self {
        Self { modes: v.modes(), ordering: default_ordering(), matrix: v.to_rows() }
    }
}

impl TryFrom<CovarianceJson> for CovarianceMatrix {
    type Error = Error;

    fn try_from(json: CovarianceJson) -> Result<Self> {
        if json.ordering != default_ordering() {
            return Err(Error::invalid(format!(
                "unsupported quadrature ordering {:?}, expected \"x1,p1,...,xm,pm\"",
                json.ordering
            )));
        }
        let v = CovarianceMatrix::from_rows(&json.matrix)?;
        if v.modes() != json.modes {
            return Err(Error::invalid(format!(
                "declared {} modes but matrix is {}x{}",
                json.modes,
                v.dim(),
                v.dim()
            )));
        }
        Ok(v)
    }
}

/// Symplectic eigenvalues (ascending) together with a scalar prefactor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilliamsonSpectrum {
    pub nus: Vec<f64>,
    pub a0: f64,
}

/// `J = ⊕ [[0, 1], [-1, 0]]` over `m` modes.
pub fn symplectic_form(m: usize) -> Result<DMatrix<f64>> {
    if m == 0 {
        return Err(Error::invalid("symplectic form needs m >= 1"));
    }
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    for k in 0..m {
        j[(2 * k, 2 * k + 1)] = 1.0;
        j[(2 * k + 1, 2 * k)] = -1.0;
    }
    Ok(j)
}

/// Minimum eigenvalue of the Hermitian matrix `V + iJ/4`.
pub fn physicality_margin(v: &CovarianceMatrix) -> f64 {
    let j = symplectic_form(v.modes()).expect("modes >= 1 by construction");
    let n = v.dim();
    let h = DMatrix::from_fn(n, n, |r, c| Complex::new(v.get(r, c), 0.25 * j[(r, c)]));
    h.symmetric_eigenvalues().min()
}

/// `V + iJ/4 ⪰ 0` up to `PHYSICALITY_TOL`.
pub fn is_physical(v: &CovarianceMatrix) -> bool {
    physicality_margin(v) >= -PHYSICALITY_TOL
}

/// Symplectic eigenvalues from the spectrum `±iν` of `J⁻¹V`.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Result<WilliamsonSpectrum> {
    if v.matrix().clone().cholesky().is_none() {
        return Err(Error::SingularInput("covariance matrix is not positive definite".into()));
    }
    let m = v.modes();
    // J⁻¹ = -J
    let jinv = -symplectic_form(m)?;
    let eig = (jinv * v.matrix()).complex_eigenvalues();
    let scale = eig.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let mut mags = Vec::with_capacity(2 * m);
    for z in eig.iter() {
        if z.re.abs() > IMAG_RESIDUAL_TOL * scale {
            return Err(Error::SpectralDomain(format!(
                "eigenvalue {z} of J^-1 V is not purely imaginary"
            )));
        }
        mags.push(z.im.abs());
    }
    mags.sort_by(f64::total_cmp);
    let nus = mags.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect();
    Ok(WilliamsonSpectrum { nus, a0: 1.0 })
}

fn check_modes(v: &CovarianceMatrix, modes_b: &[usize]) -> Result<()> {
    if modes_b.is_empty() {
        return Err(Error::invalid("partial transpose needs at least one mode"));
    }
    if let Some(&bad) = modes_b.iter().find(|&&k| k >= v.modes()) {
        return Err(Error::invalid(format!(
            "mode index {bad} out of range for a {}-mode state",
            v.modes()
        )));
    }
    Ok(())
}

/// Flips the sign of `p_k` for every (0-based) mode `k` in `modes_b`: `ΛVΛ`.
pub fn partial_transpose(v: &CovarianceMatrix, modes_b: &[usize]) -> Result<CovarianceMatrix> {
    check_modes(v, modes_b)?;
    let mut flip = vec![false; v.dim()];
    for &k in modes_b {
        flip[2 * k + 1] = true;
    }
    let mut out = v.matrix().clone();
    for r in 0..v.dim() {
        for c in 0..v.dim() {
            if flip[r] != flip[c] {
                out[(r, c)] = -out[(r, c)];
            }
        }
    }
    Ok(CovarianceMatrix { modes: v.modes(), entries: out })
}

/// Positive-partial-transpose test on the covariance level.
pub fn is_ppt(v: &CovarianceMatrix, modes_b: &[usize]) -> Result<bool> {
    Ok(is_physical(&partial_transpose(v, modes_b)?))
}

/// `‖ρ^{T_B}‖₁` of a Gaussian state: `∏ 1/(4ν̃)` over partially transposed
/// symplectic eigenvalues below the vacuum value.
pub fn gaussian_pt_trace_norm(v: &CovarianceMatrix, modes_b: &[usize]) -> Result<f64> {
    let spec = symplectic_eigenvalues(&partial_transpose(v, modes_b)?)?;
    Ok(spec
        .nus
        .iter()
        .filter(|&&nu| nu < VACUUM_VARIANCE)
        .map(|nu| VACUUM_VARIANCE / nu)
        .product())
}
