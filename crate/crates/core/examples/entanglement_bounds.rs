//! Lower bounds on entanglement measures from witness values: the coherent-state
//! mixture and two-mode squeezed vacua.

use cv_entangle::bounds::BoundReport;
use cv_entangle::gaussian::TwoModeStandardForm;
use cv_entangle::witness::{coherent_mixture_threshold, swap_expectation_coherent_mixture, witness_expectation_gaussian, WitnessParams};
use nalgebra::Complex;

fn main() -> cv_entangle::Result<()> {
    let (a1, a2) = (Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0));
    println!("coherent mixture, alpha = +-1: SWAP turns negative above p = {:.7}", coherent_mixture_threshold(a1, a2));
    for p in [0.4, 0.6, 0.8, 1.0] {
        let v = swap_expectation_coherent_mixture(p, a1, a2)?;
        let rep = BoundReport::new(1.0, v)?;
        println!(
            "p = {p}: SWAP {v:+.6}, concurrence >= {:.6}, EOF >= {:.6} bits, tangle >= {:.6}",
            rep.concurrence_lower, rep.eof_lower, rep.tangle_lower
        );
    }

    for r in [0.3f64, 0.6] {
        let w = witness_expectation_gaussian(&TwoModeStandardForm::tmsv(r)?, &WitnessParams::standard())?;
        let rep = BoundReport::new(w, 1.0)?;
        println!("TMSV r={r}: W01 {w:+.6}, negativity >= {:.6} (exact {:.6})", rep.cren_lower, (2.0 * r).exp() - 1.0);
    }
    Ok(())
}
