//! Sparse real polynomials in phase-space coordinates.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use nalgebra::DMatrix;

/// `Σ c_k ∏ ξ_i^{e_ki}` over a fixed number of variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: f64) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// `Σ coeffs[i] ξ_i`.
    pub fn linear(coeffs: &[f64]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; coeffs.len()];
            e[i] = 1;
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: f64) {
        if c == 0.0 {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == 0.0 {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "polynomial variable count mismatch");
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "polynomial variable count mismatch");
        let mut out = Self::zero(self.vars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.vars);
        self.terms
            .iter()
            .map(|(e, &c)| c * e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }

    /// `E[P(ξ)]` for `ξ ~ N(0, K)`, by Isserlis' pairing rule.
    pub fn gaussian_expectation(&self, k: &DMatrix<f64>) -> f64 {
        assert_eq!(k.nrows(), self.vars);
        self.terms
            .iter()
            .map(|(e, &c)| {
                let idx: Vec<usize> = e
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize))
                    .collect();
                c * wick(&idx, k)
            })
            .sum()
    }
}

fn wick(idx: &[usize], k: &DMatrix<f64>) -> f64 {
    match idx.len() {
        0 => 1.0,
        n if n % 2 == 1 => 0.0,
        _ => {
            let first = idx[0];
            let rest = &idx[1..];
            let mut acc = 0.0;
            for j in 0..rest.len() {
                let kij = k[(first, rest[j])];
                if kij == 0.0 {
                    continue;
                }
                let remaining: Vec<usize> =
                    rest.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &v)| v).collect();
                acc += kij * wick(&remaining, k);
            }
            acc
        }
    }
}
