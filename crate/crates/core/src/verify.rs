//! Cross-checks of the truncated Fock-space oracle against the analytic engines.

use std::collections::BTreeMap;

use nalgebra::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    coherent_mixture_fock, negativity_fock, photon_added_sts_fock, realignment_trace_norm_fock,
    squeezed_thermal_fock, tmsv_fock, witness_fock, FockDensityMatrix, FockWitness,
};
use crate::gaussian::{squeezed_thermal_params, TwoModeStandardForm, WignerSpec};
use crate::realignment::realignment_norm;
use crate::symplectic::gaussian_pt_trace_norm;
use crate::witness::{
    swap_expectation_coherent_mixture, swap_expectation_exact, witness_expectation_gaussian,
    witness_photon_added_closed, WitnessParams,
};

/// Largest accepted |oracle − analytic| for every check.
pub const TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub case: String,
    pub quantity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
    pub analytic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub cutoff: usize,
    pub r_max: f64,
    pub tolerance: f64,
    /// Per quantity; failed checks without a deviation are not included.
    pub max_deviation: BTreeMap<&'static str, f64>,
    pub checks: Vec<Check>,
    pub failures: Vec<String>,
    pub pass: bool,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, case: &str, quantity: &'static str, oracle: Result<f64>, analytic: Result<f64>) {
        let check = match (oracle, analytic) {
            (Ok(o), Ok(a)) => {
                let dev = (o - a).abs();
                Check {
                    case: case.to_string(),
                    quantity,
                    oracle: Some(o),
                    analytic: Some(a),
                    deviation: Some(dev),
                    pass: dev <= TOLERANCE,
                    error: None,
                }
            }
            (o, a) => Check {
                case: case.to_string(),
                quantity,
                oracle: o.as_ref().ok().copied(),
                analytic: a.as_ref().ok().copied(),
                deviation: None,
                pass: false,
                error: o.err().or(a.err()).map(|e| e.to_string()),
            },
        };
        self.checks.push(check);
    }

    /// A state that could not be built fails every quantity planned for it.
    fn state_failed(&mut self, case: &str, quantities: &[&'static str], err: &Error) {
        for &q in quantities {
            self.checks.push(Check {
                case: case.to_string(),
                quantity: q,
                oracle: None,
                analytic: None,
                deviation: None,
                pass: false,
                error: Some(err.to_string()),
            });
        }
    }

    fn gaussian(&mut self, case: &str, rho: Result<FockDensityMatrix>, s: &TwoModeStandardForm) {
        const QUANTITIES: [&str; 4] = ["witness01", "realignment_norm", "negativity", "swap"];
        let rho = match rho {
            Ok(rho) => rho,
            Err(e) => return self.state_failed(case, &QUANTITIES, &e),
        };
        let v = s.covariance();
        self.record(
            case,
            "witness01",
            witness_fock(&rho, FockWitness::W01),
            witness_expectation_gaussian(s, &WitnessParams::standard()),
        );
        self.record(
            case,
            "realignment_norm",
            Ok(realignment_trace_norm_fock(&rho)),
            realignment_norm(&v).map(|r| r.norm),
        );
        self.record(case, "negativity", Ok(negativity_fock(&rho)), gaussian_pt_trace_norm(&v, &[1]).map(|t| t - 1.0));
        self.record(
            case,
            "swap",
            witness_fock(&rho, FockWitness::Swap),
            swap_expectation_exact(&WignerSpec::gaussian(v)),
        );
    }
}

/// Runs the suite: two-mode squeezed vacuum at `r ∈ {0, r_max/2, r_max}`, a squeezed
/// thermal state (`n = 0.25`, `r_max`), the coherent mixture `p = 0.6, α = ±1` and the
/// photon-added state at `(0.5, r_max/2)`. A state that cannot be represented at
/// `cutoff` counts as failed.
pub fn run_verify(cutoff: usize, r_max: f64) -> Result<VerifyReport> {
    if !(r_max.is_finite() && r_max >= 0.0) {
        return Err(Error::invalid(format!("r-max must be finite and >= 0 (got {r_max})")));
    }
    crate::fock::check_cutoff(cutoff)?;
    let mut suite = Suite { checks: Vec::new() };

    for r in [0.0, 0.5 * r_max, r_max] {
        let case = format!("tmsv(r={r})");
        suite.gaussian(&case, tmsv_fock(r, cutoff), &TwoModeStandardForm::tmsv(r)?);
    }

    let n = 0.25;
    let case = format!("squeezed_thermal(n={n},r={r_max})");
    suite.gaussian(&case, squeezed_thermal_fock(n, r_max, cutoff), &squeezed_thermal_params(n, r_max)?);

    let (p, a1, a2) = (0.6, Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0));
    let case = format!("coherent_mixture(p={p},alpha1=1,alpha2=-1)");
    match coherent_mixture_fock(p, a1, a2, cutoff) {
        Ok(rho) => suite.record(
            &case,
            "swap",
            witness_fock(&rho, FockWitness::Swap),
            swap_expectation_coherent_mixture(p, a1, a2),
        ),
        Err(e) => suite.state_failed(&case, &["swap"], &e),
    }

    let (n, r) = (0.5, 0.5 * r_max);
    let case = format!("photon_added_sts(n={n},r={r})");
    match photon_added_sts_fock(n, r, cutoff) {
        Ok(rho) => suite.record(&case, "witness01", witness_fock(&rho, FockWitness::W01), witness_photon_added_closed(n, r)),
        Err(e) => suite.state_failed(&case, &["witness01"], &e),
    }

    let mut max_deviation = BTreeMap::new();
    for c in &suite.checks {
        if let Some(d) = c.deviation {
            let m = max_deviation.entry(c.quantity).or_insert(0.0f64);
            *m = m.max(d);
        }
    }
    let failures: Vec<String> =
        suite.checks.iter().filter(|c| !c.pass).map(|c| format!("{}:{}", c.case, c.quantity)).collect();
    Ok(VerifyReport {
        cutoff,
        r_max,
        tolerance: TOLERANCE,
        max_deviation,
        pass: failures.is_empty(),
        checks: suite.checks,
        failures,
    })
}
