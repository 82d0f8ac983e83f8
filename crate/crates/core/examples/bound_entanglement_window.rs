//! Realignment norm along the 2+2 family and the window where PPT states are
//! still detected.

use cv_entangle::gaussian::{family_threshold, two_two_family};
use cv_entangle::realignment::{classify_two_two, realignment_norm, TwoTwoClass};

fn main() -> cv_entangle::Result<()> {
    let (a, b) = (1.0, 1.0);
    let lower = f64::sqrt(a * b) - 0.25;
    let upper = family_threshold(a, b)?;
    println!("a = b = 1: detected on ({lower}, {upper:.7}]");

    let mut window: Option<(f64, f64)> = None;
    for i in 0..=810 {
        let c = i as f64 * 1e-3;
        let cl = classify_two_two(a, b, c)?;
        if cl.verdict == TwoTwoClass::BoundEntangled {
            window = Some(window.map_or((c, c), |(lo, _)| (lo, c)));
        }
        if i % 90 == 0 || i == 780 {
            println!("c = {c:.3}: {:?}, norm {:.6}", cl.verdict, cl.norm);
        }
    }
    if let Some((lo, hi)) = window {
        println!("sampled window at 1e-3: [{lo:.3}, {hi:.3}]");
    }

    // the generic pipeline (Gram covariance, spectrum) agrees with the closed form
    let generic = realignment_norm(&two_two_family(a, b, 0.78)?)?;
    println!("generic pipeline at c=0.78: norm {:.10}, nu = {:.6?}, a0 = {:.6}", generic.norm, generic.spectrum.nus, generic.spectrum.a0);
    Ok(())
}
