//! Lower bounds on entanglement measures from witness values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `−x log₂x − (1−x) log₂(1−x)` with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("binary entropy argument {x} outside [0, 1]")));
    }
    let h = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(h(x) + h(1.0 - x))
}

/// Negativity-type bound from the witness value at `μ = (0, 1)`.
pub fn cren_lower_bound(witness_value01: f64) -> f64 {
    (-witness_value01).max(0.0)
}

pub fn concurrence_lower_bound(swap_value: f64) -> f64 {
    (-swap_value).max(0.0)
}

/// `H2((1 + √(1 − v²))/2)` in bits for a negative SWAP value `v`, else 0.
pub fn eof_lower_bound(swap_value: f64) -> Result<f64> {
    if !swap_value.is_finite() || swap_value.abs() > 1.0 + 1e-9 {
        return Err(Error::invalid(format!("SWAP expectation {swap_value} outside [-1, 1]")));
    }
    if swap_value >= 0.0 {
        return Ok(0.0);
    }
    let v2 = (swap_value * swap_value).min(1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - v2).sqrt()))
}

pub fn tangle_lower_bound(swap_value: f64) -> f64 {
    if swap_value < 0.0 {
        swap_value * swap_value
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub witness_value01: f64,
    pub swap_value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub cren_lower: f64,
    pub concurrence_lower: f64,
    /// Bits.
    pub eof_lower: f64,
    pub tangle_lower: f64,
    pub inputs: BoundInputs,
}

impl BoundReport {
    pub fn new(witness_value01: f64, swap_value: f64) -> Result<Self> {
        Ok(Self {
            cren_lower: cren_lower_bound(witness_value01),
            concurrence_lower: concurrence_lower_bound(swap_value),
            eof_lower: eof_lower_bound(swap_value)?,
            tangle_lower: tangle_lower_bound(swap_value),
            inputs: BoundInputs { witness_value01, swap_value },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // natural-log reference
        let x: f64 = 0.990985;
        let want = -(x * x.ln() + (1.0 - x) * (1.0 - x).ln()) / std::f64::consts::LN_2;
        assert!((binary_entropy(x).unwrap() - want).abs() < 1e-15);
        assert!((binary_entropy(x).unwrap() - 0.074_190_1).abs() < 1e-7);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(cren_lower_bound(0.0), 0.0);
        assert!((cren_lower_bound(-0.974_986_569_867_261) - 0.974_986_569_867_261).abs() < 1e-15);
        for r in [0.2f64, 0.6] {
            assert!((cren_lower_bound(1.0 - (2.0 * r).exp()) - ((2.0 * r).exp() - 1.0)).abs() < 1e-14);
        }
        let v = 0.6 * ((-4f64).exp() - 1.0) + 0.4;
        assert!((concurrence_lower_bound(v) - 0.189_010_616_666_76).abs() < 1e-12);
        assert_eq!(concurrence_lower_bound(0.3), 0.0);
        assert_eq!(eof_lower_bound(-1.0).unwrap(), 1.0);
        assert_eq!(eof_lower_bound(0.3).unwrap(), 0.0);
        assert_eq!(eof_lower_bound(0.0).unwrap(), 0.0);
        assert!((eof_lower_bound(v).unwrap() - 0.074_173_007_515_744_66).abs() < 1e-12);
        assert!(eof_lower_bound(-1.1).is_err());
        assert!((tangle_lower_bound(v) - 0.035_725_013_2).abs() < 1e-9);
        assert_eq!(tangle_lower_bound(0.5), 0.0);
        assert_eq!(tangle_lower_bound(-1.0), 1.0);
    }

    #[test]
    fn report_fields() {
        let r = BoundReport::new(-0.5, -0.2).unwrap();
        assert_eq!(r.cren_lower, 0.5);
        assert_eq!(r.tangle_lower, r.concurrence_lower.powi(2));
        assert!(r.eof_lower > 0.0);
        let r = BoundReport::new(0.1, 0.2).unwrap();
        assert_eq!((r.cren_lower, r.concurrence_lower, r.eof_lower, r.tangle_lower), (0.0, 0.0, 0.0, 0.0));
    }

    proptest! {
        #[test]
        fn eof_composes_with_concurrence(v in -1.0f64..-1e-12) {
            let c = concurrence_lower_bound(v);
            let direct = binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt())).unwrap();
            prop_assert_eq!(eof_lower_bound(v).unwrap(), direct);
            prop_assert!(eof_lower_bound(v).unwrap() > 0.0);
        }

        #[test]
        fn bounds_monotone(u in -1.0f64..1.0, d in 0.0f64..0.5) {
            let w = (u + d).min(1.0);
            prop_assert!(cren_lower_bound(u) >= cren_lower_bound(w));
            prop_assert!(concurrence_lower_bound(u) >= concurrence_lower_bound(w));
            prop_assert!(eof_lower_bound(u).unwrap() >= eof_lower_bound(w).unwrap());
            prop_assert!(tangle_lower_bound(u) >= tangle_lower_bound(w));
        }
    }
}
