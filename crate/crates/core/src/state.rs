//! JSON state descriptors and single-state evaluation shared by `eval` and `scan`.

use std::fmt;
use std::str::FromStr;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::BoundReport;
use crate::error::{Error, Result};
use crate::fock::{coherent_mixture_fock, witness_fock, FockWitness};
use crate::gaussian::{photon_added_sts_wigner, TwoModeStandardForm, TwoTwoFamilyParams, WignerSpec};
use crate::realignment::{classify_two_two, realignment_norm, RealignmentVerdict};
use crate::symplectic::{CovarianceJson, CovarianceMatrix};
use crate::witness::{
    is_entangled, optimal_witness, swap_expectation_coherent_mixture, swap_expectation_exact,
    witness_expectation_auto, witness_expectation_gaussian, witness_photon_added_closed, WitnessParams,
};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StateDescriptor {
    Standard2 { a: f64, b: f64, c1: f64, c2: f64 },
    TwoTwo { a: f64, b: f64, c: f64 },
    PhotonAddedSts { n: f64, r: f64 },
    CoherentMixture { p: f64, alpha1: [f64; 2], alpha2: [f64; 2] },
    RawCovariance(CovarianceJson),
}

impl StateDescriptor {
    /// Parses inline JSON, or reads it from a file when `src` is not JSON.
    pub fn load(src: &str) -> Result<Self> {
        let text = if src.trim_start().starts_with('{') { src.to_string() } else { std::fs::read_to_string(src)? };
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("state descriptor: {e}")))
    }

    pub fn family(&self) -> Family {
        match self {
            Self::Standard2 { .. } => Family::Standard2,
            Self::TwoTwo { .. } => Family::TwoTwo,
            Self::PhotonAddedSts { .. } => Family::PhotonAddedSts,
            Self::CoherentMixture { .. } => Family::CoherentMixture,
            Self::RawCovariance(_) => Family::RawCovariance,
        }
    }

    /// Overrides one named parameter.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match (self, name) {
            (Self::Standard2 { a, .. }, "a") | (Self::TwoTwo { a, .. }, "a") => a,
            (Self::Standard2 { b, .. }, "b") | (Self::TwoTwo { b, .. }, "b") => b,
            (Self::Standard2 { c1, .. }, "c1") => c1,
            (Self::Standard2 { c2, .. }, "c2") => c2,
            (Self::TwoTwo { c, .. }, "c") => c,
            (Self::PhotonAddedSts { n, .. }, "n") => n,
            (Self::PhotonAddedSts { r, .. }, "r") => r,
            (Self::CoherentMixture { p, .. }, "p") => p,
            (Self::CoherentMixture { alpha1, .. }, "alpha1_re") => &mut alpha1[0],
            (Self::CoherentMixture { alpha1, .. }, "alpha1_im") => &mut alpha1[1],
            (Self::CoherentMixture { alpha2, .. }, "alpha2_re") => &mut alpha2[0],
            (Self::CoherentMixture { alpha2, .. }, "alpha2_im") => &mut alpha2[1],
            (s, _) => {
                return Err(Error::invalid(format!(
                    "parameter {name:?} not valid for family {}",
                    s.family()
                )))
            }
        };
        *slot = value;
        Ok(())
    }

    fn covariance(&self) -> Result<CovarianceMatrix> {
        match self {
            Self::Standard2 { a, b, c1, c2 } => Ok(TwoModeStandardForm::new(*a, *b, *c1, *c2)?.covariance()),
            Self::TwoTwo { a, b, c } => Ok(TwoTwoFamilyParams::new(*a, *b, *c)?.covariance()),
            Self::RawCovariance(json) => CovarianceMatrix::try_from(json.clone()),
            _ => Err(Error::invalid(format!("family {} is not Gaussian", self.family()))),
        }
    }

    fn standard_form(&self) -> Result<TwoModeStandardForm> {
        match self {
            Self::Standard2 { a, b, c1, c2 } => TwoModeStandardForm::new(*a, *b, *c1, *c2),
            Self::RawCovariance(_) => {
                let v = self.covariance()?;
                as_standard_form(&v).ok_or_else(|| Error::invalid("raw covariance is not in two-mode standard form"))
            }
            _ => Err(Error::invalid(format!("family {} has no two-mode standard form", self.family()))),
        }
    }

    fn two_mode_wigner(&self) -> Result<WignerSpec> {
        let spec = match self {
            Self::PhotonAddedSts { n, r } => photon_added_sts_wigner(*n, *r)?,
            Self::Standard2 { .. } | Self::RawCovariance(_) => WignerSpec::gaussian(self.covariance()?),
            _ => return Err(Error::invalid(format!("family {} is not a two-mode Wigner state", self.family()))),
        };
        if spec.modes() != 2 {
            return Err(Error::invalid(format!("need a two-mode state, got {} modes", spec.modes())));
        }
        Ok(spec)
    }
}

fn as_standard_form(v: &CovarianceMatrix) -> Option<TwoModeStandardForm> {
    if v.modes() != 2 {
        return None;
    }
    let m = v.matrix();
    let zero_at = [(0, 1), (0, 3), (1, 2), (2, 3)];
    if zero_at.iter().any(|&(i, j)| m[(i, j)] != 0.0) || m[(0, 0)] != m[(1, 1)] || m[(2, 2)] != m[(3, 3)] {
        return None;
    }
    TwoModeStandardForm::new(m[(0, 0)], m[(2, 2)], m[(0, 2)], m[(1, 3)]).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Standard2,
    TwoTwo,
    PhotonAddedSts,
    CoherentMixture,
    RawCovariance,
}

impl Family {
    /// Default parameters used when a scan names only the family.
    pub fn default_state(self) -> Result<StateDescriptor> {
        Ok(match self {
            Self::Standard2 => StateDescriptor::Standard2 { a: 0.25, b: 0.25, c1: 0.0, c2: 0.0 },
            Self::TwoTwo => StateDescriptor::TwoTwo { a: 1.0, b: 1.0, c: 0.0 },
            Self::PhotonAddedSts => StateDescriptor::PhotonAddedSts { n: 0.0, r: 0.0 },
            Self::CoherentMixture => {
                StateDescriptor::CoherentMixture { p: 0.0, alpha1: [1.0, 0.0], alpha2: [-1.0, 0.0] }
            }
            Self::RawCovariance => return Err(Error::invalid("raw_covariance has no default state")),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        f.write_str(s.as_str().unwrap_or_default())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.to_string())).map_err(|_| Error::invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    /// `Tr(ρ W_{μ1μ2})`, by default at `μ = (0, 1)`.
    Witness01,
    /// Minimum of the witness over `μ` (standard-form Gaussians).
    OptimalWitness,
    RealignmentNorm,
    /// 2+2 family verdict; the value column carries the realignment norm.
    Classify,
    /// Measure bounds; the value column carries the negativity bound.
    Bounds,
    /// `Tr(ρ V)` for the SWAP operator.
    Swap,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub mu: WitnessParams,
    /// Fock cutoff for quantities that fall back on the oracle.
    pub cutoff: usize,
    pub quadrature: QuadratureConfig,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { mu: WitnessParams::standard(), cutoff: 25, quadrature: QuadratureConfig::default() }
    }
}

/// Headline value, verdict label, and the full JSON record of one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub verdict: String,
    pub record: Value,
}

fn witness_verdict(v: f64) -> &'static str {
    if is_entangled(v) {
        "entangled"
    } else {
        "undetected"
    }
}

fn alpha(z: [f64; 2]) -> Complex<f64> {
    Complex::new(z[0], z[1])
}

fn witness_value(state: &StateDescriptor, opts: &EvalOptions) -> Result<f64> {
    let mu = &opts.mu;
    match state {
        StateDescriptor::Standard2 { .. } => witness_expectation_gaussian(&state.standard_form()?, mu),
        StateDescriptor::PhotonAddedSts { n, r } if *mu == WitnessParams::standard() => {
            witness_photon_added_closed(*n, *r)
        }
        StateDescriptor::CoherentMixture { p, alpha1, alpha2 } => {
            if *mu != WitnessParams::standard() {
                return Err(Error::invalid("coherent mixture witness is only available at mu = (0, 1)"));
            }
            let rho = coherent_mixture_fock(*p, alpha(*alpha1), alpha(*alpha2), opts.cutoff)?;
            witness_fock(&rho, FockWitness::W01)
        }
        _ => witness_expectation_auto(&state.two_mode_wigner()?, mu, &opts.quadrature),
    }
}

fn swap_value(state: &StateDescriptor) -> Result<f64> {
    match state {
        StateDescriptor::CoherentMixture { p, alpha1, alpha2 } => {
            swap_expectation_coherent_mixture(*p, alpha(*alpha1), alpha(*alpha2))
        }
        _ => swap_expectation_exact(&state.two_mode_wigner()?),
    }
}

pub fn evaluate(state: &StateDescriptor, quantity: Quantity, opts: &EvalOptions) -> Result<Evaluation> {
    let st = serde_json::to_value(state)?;
    Ok(match quantity {
        Quantity::Witness01 => {
            let value = witness_value(state, opts)?;
            let verdict = witness_verdict(value);
            Evaluation {
                value,
                verdict: verdict.into(),
                record: json!({"state": st, "mu1": opts.mu.mu1, "mu2": opts.mu.mu2, "value": value,
                               "entangled": is_entangled(value)}),
            }
        }
        Quantity::OptimalWitness => {
            let o = optimal_witness(&state.standard_form()?)?;
            let p = o.params();
            Evaluation {
                value: o.value,
                verdict: witness_verdict(o.value).into(),
                record: json!({"state": st, "mu1": p.mu1, "mu2": p.mu2, "mu_minus": o.mu_minus,
                               "mu_plus": o.mu_plus, "value": o.value, "entangled": is_entangled(o.value)}),
            }
        }
        Quantity::RealignmentNorm => {
            let r = realignment_norm(&state.covariance()?)?;
            let verdict = match r.verdict {
                RealignmentVerdict::Entangled => "entangled",
                RealignmentVerdict::Undetected => "undetected",
            };
            Evaluation {
                value: r.norm,
                verdict: verdict.into(),
                record: json!({"state": st, "norm": r.norm, "nus": r.spectrum.nus, "a0": r.spectrum.a0,
                               "verdict": verdict}),
            }
        }
        Quantity::Classify => {
            let StateDescriptor::TwoTwo { a, b, c } = state else {
                return Err(Error::invalid("classify applies to the two_two family only"));
            };
            let cl = classify_two_two(*a, *b, *c)?;
            let verdict = serde_json::to_value(cl.verdict)?;
            Evaluation {
                value: cl.norm,
                verdict: verdict.as_str().unwrap_or_default().into(),
                record: json!({"state": st, "verdict": verdict, "norm": cl.norm, "threshold": cl.threshold}),
            }
        }
        Quantity::Bounds => {
            let w = witness_value(state, &EvalOptions { mu: WitnessParams::standard(), ..*opts })?;
            let report = BoundReport::new(w, swap_value(state)?)?;
            let detected = report.cren_lower > 0.0 || report.concurrence_lower > 0.0;
            let mut record = serde_json::to_value(report)?;
            record["state"] = st;
            Evaluation {
                value: report.cren_lower,
                verdict: if detected { "entangled" } else { "undetected" }.into(),
                record,
            }
        }
        Quantity::Swap => {
            let value = swap_value(state)?;
            Evaluation {
                value,
                verdict: witness_verdict(value).into(),
                record: json!({"state": st, "value": value, "entangled": is_entangled(value)}),
            }
        }
    })
}
