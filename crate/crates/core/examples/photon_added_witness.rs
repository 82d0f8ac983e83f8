//! The non-Gaussian photon-added squeezed thermal state: closed form against the
//! integral of its Wigner function.

use cv_entangle::gaussian::photon_added_sts_wigner;
use cv_entangle::quadrature::QuadratureConfig;
use cv_entangle::witness::{witness_expectation_exact, witness_expectation_wigner, witness_photon_added_closed, WitnessParams};

fn main() -> cv_entangle::Result<()> {
    let w = WitnessParams::standard();
    let q = QuadratureConfig::default();
    println!("{:>5} {:>5} {:>12} {:>12} {:>12}", "n", "r", "closed", "quadrature", "moments");
    for (n, r) in [(0.02, 0.02), (0.1, 0.5), (0.5, 0.3), (1.0, 1.0), (2.0, 2.0)] {
        let spec = photon_added_sts_wigner(n, r)?;
        println!(
            "{n:>5} {r:>5} {:>12.8} {:>12.8} {:>12.8}",
            witness_photon_added_closed(n, r)?,
            witness_expectation_wigner(&spec, &w, &q)?,
            witness_expectation_exact(&spec, &w)?
        );
    }
    Ok(())
}
