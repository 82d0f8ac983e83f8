//! Witness expectation for a two-mode Gaussian state: closed form, optimum and
//! the Wigner-function quadrature that backs them.

use cv_entangle::gaussian::{TwoModeStandardForm, WignerSpec};
use cv_entangle::quadrature::QuadratureConfig;
use cv_entangle::witness::{
    is_entangled, optimal_witness, witness_expectation_exact, witness_expectation_gaussian,
    witness_expectation_wigner, WitnessParams,
};

fn main() -> cv_entangle::Result<()> {
    let s = TwoModeStandardForm::new(0.5, 0.5, 0.3, -0.3)?;
    let best = optimal_witness(&s)?;
    println!("state {s:?}");
    println!("optimal witness {:.6} at mu- = {}, mu+ = {} (entangled: {})", best.value, best.mu_minus, best.mu_plus, is_entangled(best.value));

    let wigner = WignerSpec::gaussian(s.covariance());
    let q = QuadratureConfig::default();
    println!("{:>6} {:>6} {:>12} {:>12} {:>12}", "mu1", "mu2", "closed", "quadrature", "moments");
    for (mu1, mu2) in [(0.0, 1.0), (-1.0, 0.0), (0.5, 1.5), (-2.0, 0.5)] {
        let w = WitnessParams::new(mu1, mu2)?;
        println!(
            "{mu1:>6} {mu2:>6} {:>12.8} {:>12.8} {:>12.8}",
            witness_expectation_gaussian(&s, &w)?,
            witness_expectation_wigner(&wigner, &w, &q)?,
            witness_expectation_exact(&wigner, &w)?
        );
    }

    for r in [0.2f64, 0.6, 1.0] {
        let v = optimal_witness(&TwoModeStandardForm::tmsv(r)?)?.value;
        println!("TMSV r={r}: optimum {v:.6}, 1 - e^(2r) = {:.6}", 1.0 - (2.0 * r).exp());
    }
    Ok(())
}
