//! Brute-force Fock-space oracle against the analytic Gaussian results.
//!
//! `cargo run --release --example fock_crosscheck -- [cutoff] [r]`

use cv_entangle::fock::{negativity_fock, realignment_trace_norm_fock, squeezed_thermal_fock, tmsv_fock, witness_fock, FockWitness};
use cv_entangle::gaussian::squeezed_thermal_params;
use cv_entangle::realignment::realignment_norm;
use cv_entangle::witness::{witness_expectation_gaussian, WitnessParams};

fn main() -> cv_entangle::Result<()> {
    let mut args = std::env::args().skip(1);
    let cutoff: usize = args.next().map_or(Ok(40), |s| s.parse()).expect("cutoff is an integer");
    let r: f64 = args.next().map_or(Ok(0.6), |s| s.parse()).expect("r is a number");

    let rho = tmsv_fock(r, cutoff)?;
    let e = (2.0 * r).exp();
    println!("TMSV r={r}, cutoff {cutoff} (trace deficit {:.2e})", rho.trace_deficit());
    println!("  realignment {:.8}  vs e^2r     {e:.8}", realignment_trace_norm_fock(&rho));
    println!("  W01         {:.8}  vs 1 - e^2r {:.8}", witness_fock(&rho, FockWitness::W01)?, 1.0 - e);
    println!("  negativity  {:.8}  vs e^2r - 1 {:.8}", negativity_fock(&rho), e - 1.0);
    println!("  SWAP        {:.8}  vs 1", witness_fock(&rho, FockWitness::Swap)?);

    let n = 0.25;
    let rho = squeezed_thermal_fock(n, r, cutoff)?;
    let s = squeezed_thermal_params(n, r)?;
    println!("squeezed thermal n={n} r={r} (trace deficit {:.2e})", rho.trace_deficit());
    println!("  W01         {:.8}  vs {:.8}", witness_fock(&rho, FockWitness::W01)?, witness_expectation_gaussian(&s, &WitnessParams::standard())?);
    println!("  realignment {:.8}  vs {:.8}", realignment_trace_norm_fock(&rho), realignment_norm(&s.covariance())?.norm);
    Ok(())
}
