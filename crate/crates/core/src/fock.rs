//! Brute-force two-mode states in a truncated Fock basis.
//!
//! Basis index `(i, j) ↔ i·(N+1) + j` for `|i⟩_A |j⟩_B`, levels `0..=N` per mode.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::CovarianceMatrix;
use crate::witness::check_probability;

pub type C64 = Complex<f64>;

/// Smallest supported cutoff.
pub const MIN_CUTOFF: usize = 4;
/// Largest supported cutoff.
pub const MAX_CUTOFF: usize = 64;
/// Hard limit on `1 − Tr(ρ_truncated)/Tr(ρ)`.
pub const MAX_TRACE_DEFICIT: f64 = 0.01;
/// Hermiticity tolerance (absolute).
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Largest tolerated imaginary part of a real expectation value.
pub const IMAG_TOL: f64 = 1e-10;
/// Working-space limit for the squeezing exponentials.
pub const MAX_WORKING_LEVELS: usize = 400;

const DUMP_MAGIC: &[u8; 7] = b"CVFOCK1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FockWitness {
    W01,
    Swap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    cutoff: usize,
    entries: DMatrix<C64>,
    trace_deficit: f64,
}

pub(crate) fn check_cutoff(cutoff: usize) -> Result<()> {
    if !(MIN_CUTOFF..=MAX_CUTOFF).contains(&cutoff) {
        return Err(Error::invalid(format!("cutoff {cutoff} outside [{MIN_CUTOFF}, {MAX_CUTOFF}]")));
    }
    Ok(())
}

fn check_deficit(deficit: f64, what: &str, cutoff: usize) -> Result<()> {
    if deficit > MAX_TRACE_DEFICIT {
        return Err(Error::TruncationInsufficient(format!(
            "{what} at cutoff {cutoff}: trace deficit {deficit:.3e} exceeds {MAX_TRACE_DEFICIT}"
        )));
    }
    Ok(())
}

impl FockDensityMatrix {
    /// Wraps a Hermitian `(N+1)² × (N+1)²` matrix. The deficit is taken as `1 − Tr ρ`.
    pub fn from_matrix(cutoff: usize, entries: DMatrix<C64>) -> Result<Self> {
        let d = cutoff + 1;
        if entries.shape() != (d * d, d * d) {
            return Err(Error::invalid(format!(
                "Fock matrix is {:?}, expected {}x{}",
                entries.shape(),
                d * d,
                d * d
            )));
        }
        let asym = (&entries - entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > HERMITIAN_TOL {
            return Err(Error::invalid(format!("Fock matrix is not Hermitian (max deviation {asym:e})")));
        }
        let trace_deficit = 1.0 - entries.trace().re;
        Ok(Self { cutoff, entries, trace_deficit })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn levels(&self) -> usize {
        self.cutoff + 1
    }

    pub fn dim(&self) -> usize {
        self.levels() * self.levels()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// Fraction of the exact trace lost to truncation, before renormalization.
    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.levels() + j
    }

    /// `Tr ρ² = Σ |ρ_ij|²` for Hermitian `ρ`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Copy scaled to unit trace.
    pub fn normalize_trace(&self) -> Self {
        let t = self.trace();
        Self { cutoff: self.cutoff, entries: &self.entries / C64::from(t), trace_deficit: self.trace_deficit }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.entries.clone().symmetric_eigenvalues().min()
    }

    /// `|ψ⟩⟨ψ|` normalized, with `deficit` recorded.
    fn from_pure(cutoff: usize, psi: &[C64], deficit: f64) -> Self {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let d = psi.len();
        let entries = DMatrix::from_fn(d, d, |r, c| psi[r] * psi[c].conj() / norm2);
        Self { cutoff, entries, trace_deficit: deficit }
    }

    /// Binary dump: magic `CVFOCK1`, `u32` cutoff, `u64` rows, `u64` cols, then
    /// row-major complex128 (re, im) little-endian.
    pub fn write_dump(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(DUMP_MAGIC)?;
        w.write_all(&(self.cutoff as u32).to_le_bytes())?;
        w.write_all(&(self.entries.nrows() as u64).to_le_bytes())?;
        w.write_all(&(self.entries.ncols() as u64).to_le_bytes())?;
        for r in 0..self.entries.nrows() {
            for c in 0..self.entries.ncols() {
                let z = self.entries[(r, c)];
                w.write_all(&z.re.to_le_bytes())?;
                w.write_all(&z.im.to_le_bytes())?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_dump(path: &Path) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 7];
        r.read_exact(&mut magic)?;
        if &magic != DUMP_MAGIC {
            return Err(Error::invalid("not a CVFOCK1 dump"));
        }
        let mut b4 = [0u8; 4];
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b4)?;
        let cutoff = u32::from_le_bytes(b4) as usize;
        r.read_exact(&mut b8)?;
        let rows = u64::from_le_bytes(b8) as usize;
        r.read_exact(&mut b8)?;
        let cols = u64::from_le_bytes(b8) as usize;
        let d = (cutoff + 1) * (cutoff + 1);
        if rows != d || cols != d {
            return Err(Error::invalid(format!("dump header {rows}x{cols} inconsistent with cutoff {cutoff}")));
        }
        let mut m = DMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                r.read_exact(&mut b8)?;
                let re = f64::from_le_bytes(b8);
                r.read_exact(&mut b8)?;
                m[(i, j)] = C64::new(re, f64::from_le_bytes(b8));
            }
        }
        Self::from_matrix(cutoff, m)
    }
}

/// Two-mode squeezed vacuum from its Schmidt series `tanhᵏr / cosh r`.
pub fn tmsv_fock(r: f64, cutoff: usize) -> Result<FockDensityMatrix> {
    check_cutoff(cutoff)?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::invalid(format!("squeezing must be >= 0 (got {r})")));
    }
    let (t, ch) = (r.tanh(), r.cosh());
    let d = cutoff + 1;
    let mut psi = vec![C64::new(0.0, 0.0); d * d];
    for k in 0..d {
        psi[k * d + k] = C64::from(t.powi(k as i32) / ch);
    }
    let deficit = t.powi(2 * d as i32);
    check_deficit(deficit, "two-mode squeezed vacuum", cutoff)?;
    Ok(FockDensityMatrix::from_pure(cutoff, &psi, deficit))
}

fn thermal_weight(n: f64, k: usize) -> f64 {
    if n == 0.0 {
        if k == 0 { 1.0 } else { 0.0 }
    } else {
        (n / (n + 1.0)).powi(k as i32) / (n + 1.0)
    }
}

/// Two-mode squeezing applied to thermal noise, optionally followed by one photon
/// created in mode B. The state is block-diagonal in `l − k`; each block of the
/// squeezer is exponentiated on an enlarged working space.
fn squeezed_thermal_impl(n: f64, r: f64, cutoff: usize, add_photon: bool) -> Result<FockDensityMatrix> {
    check_cutoff(cutoff)?;
    if !(n.is_finite() && n >= 0.0 && r.is_finite() && r >= 0.0) {
        return Err(Error::invalid(format!("need n >= 0 and r >= 0 (got n={n}, r={r})")));
    }
    let thermal_levels =
        if n == 0.0 { 0 } else { ((1e-15f64).ln() / (n / (n + 1.0)).ln()).ceil() as usize + 1 };
    let t = r.tanh();
    let margin = if r == 0.0 { 0 } else { ((1e-17f64).ln() / t.ln()).ceil() as usize + 5 };
    let work = cutoff.max(thermal_levels) + margin + 2;
    if work > MAX_WORKING_LEVELS {
        return Err(Error::TruncationInsufficient(format!(
            "squeezing r={r} with n={n} needs {work} working levels (limit {MAX_WORKING_LEVELS})"
        )));
    }
    let dl = cutoff + 1;
    let mut rho = DMatrix::<C64>::zeros(dl * dl, dl * dl);
    let shift = usize::from(add_photon);
    let max_d = thermal_levels.min(cutoff) as i64;
    for d in -max_d..=max_d {
        // sector states |j, j+d⟩
        let j0 = (-d).max(0) as usize;
        let j1 = work - d.max(0) as usize;
        let js: Vec<usize> = (j0..=j1).collect();
        let m = js.len();
        let mut g = DMatrix::<f64>::zeros(m, m);
        for i in 0..m - 1 {
            let j = js[i] as f64;
            let amp = r * ((j + 1.0) * (j + 1.0 + d as f64)).sqrt();
            g[(i + 1, i)] = amp;
            g[(i, i + 1)] = -amp;
        }
        let e = g.exp();
        for (col, &k) in js.iter().enumerate() {
            let l = (k as i64 + d) as usize;
            if k > thermal_levels || l > thermal_levels {
                continue;
            }
            let w = thermal_weight(n, k) * thermal_weight(n, l);
            if w < 1e-300 {
                continue;
            }
            let mut idx = Vec::new();
            let mut amp = Vec::new();
            for (row, &a1) in js.iter().enumerate() {
                let a2 = (a1 as i64 + d) as usize;
                let b2 = a2 + shift;
                if a1 <= cutoff && b2 <= cutoff {
                    let factor = if add_photon { ((a2 + 1) as f64).sqrt() } else { 1.0 };
                    idx.push(a1 * dl + b2);
                    amp.push(e[(row, col)] * factor);
                }
            }
            for (x, &ix) in idx.iter().enumerate() {
                for (y, &iy) in idx.iter().enumerate() {
                    rho[(ix, iy)] += C64::from(w * amp[x] * amp[y]);
                }
            }
        }
    }
    let exact = if add_photon { ((1.0 + 2.0 * n) * (2.0 * r).cosh() + 1.0) / 2.0 } else { 1.0 };
    let tr = rho.trace().re;
    let deficit = 1.0 - tr / exact;
    let what = if add_photon { "photon-added squeezed thermal state" } else { "squeezed thermal state" };
    check_deficit(deficit, what, cutoff)?;
    rho /= C64::from(tr);
    Ok(FockDensityMatrix { cutoff, entries: rho, trace_deficit: deficit })
}

/// Two-mode squeezed thermal state with `n` thermal photons per mode.
pub fn squeezed_thermal_fock(n: f64, r: f64, cutoff: usize) -> Result<FockDensityMatrix> {
    squeezed_thermal_impl(n, r, cutoff, false)
}

/// `a_B† ρ_sts a_B`, renormalized.
pub fn photon_added_sts_fock(n: f64, r: f64, cutoff: usize) -> Result<FockDensityMatrix> {
    squeezed_thermal_impl(n, r, cutoff, true)
}

fn coherent_vector(alpha: C64, cutoff: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(cutoff + 1);
    let mut c = C64::from((-0.5 * alpha.norm_sqr()).exp());
    for k in 0..=cutoff {
        v.push(c);
        c *= alpha / ((k + 1) as f64).sqrt();
    }
    v
}

/// `p |φ⟩⟨φ| + (1 − p)|00⟩⟨00|` with `|φ⟩ = (|α1 α2⟩ − |α2 α1⟩)/√2` taken literally,
/// so the exact trace is `1 − p e^{−|α1−α2|²}`; the deficit is measured against it
/// and the matrix is left at that trace. Use [`FockDensityMatrix::normalize_trace`]
/// for the unit-trace state.
pub fn coherent_mixture_fock(p: f64, alpha1: C64, alpha2: C64, cutoff: usize) -> Result<FockDensityMatrix> {
    check_cutoff(cutoff)?;
    check_probability(p)?;
    let overlap = (-(alpha1 - alpha2).norm_sqr()).exp();
    if p > 0.0 && 1.0 - overlap < 1e-12 {
        return Err(Error::invalid("alpha1 == alpha2 makes the antisymmetric component vanish"));
    }
    let dl = cutoff + 1;
    let (u, v) = (coherent_vector(alpha1, cutoff), coherent_vector(alpha2, cutoff));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut phi = vec![C64::new(0.0, 0.0); dl * dl];
    for i in 0..dl {
        for j in 0..dl {
            phi[i * dl + j] = (u[i] * v[j] - v[i] * u[j]) * s;
        }
    }
    let mut rho = DMatrix::from_fn(dl * dl, dl * dl, |r, c| phi[r] * phi[c].conj() * p);
    rho[(0, 0)] += C64::from(1.0 - p);
    let exact = 1.0 - p * overlap;
    let deficit = 1.0 - rho.trace().re / exact;
    check_deficit(deficit, "coherent mixture", cutoff)?;
    Ok(FockDensityMatrix { cutoff, entries: rho, trace_deficit: deficit })
}

/// `Tr(ρ M)` for `M = 1 − Σ|ii⟩⟨jj|` or `M = Σ|ij⟩⟨ji|`.
pub fn witness_fock(rho: &FockDensityMatrix, which: FockWitness) -> Result<f64> {
    let dl = rho.levels();
    let m = rho.matrix();
    let mut acc = C64::new(0.0, 0.0);
    match which {
        FockWitness::W01 => {
            acc += m.trace();
            for i in 0..dl {
                for j in 0..dl {
                    acc -= m[(rho.index(i, i), rho.index(j, j))];
                }
            }
        }
        FockWitness::Swap => {
            for i in 0..dl {
                for j in 0..dl {
                    acc += m[(rho.index(i, j), rho.index(j, i))];
                }
            }
        }
    }
    if acc.im.abs() > IMAG_TOL {
        return Err(Error::Inconsistent(format!("expectation has imaginary part {}", acc.im)));
    }
    Ok(acc.re)
}

struct DisjointSet(Vec<usize>);

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root = std::collections::BTreeMap::<usize, Vec<usize>>::new();
        for x in 0..self.0.len() {
            let root = self.find(x);
            by_root.entry(root).or_default().push(x);
        }
        by_root.into_values().collect()
    }
}

/// Connected components of the bipartite row/column graph of an `n × n` pattern;
/// returns `(rows, cols)` per component.
fn bipartite_blocks(n: usize, nonzero: impl Fn(usize, usize) -> bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut set = DisjointSet::new(2 * n);
    for r in 0..n {
        for c in 0..n {
            if nonzero(r, c) {
                set.union(r, n + c);
            }
        }
    }
    set.groups()
        .into_iter()
        .map(|g| {
            let (rows, cols): (Vec<usize>, Vec<usize>) = g.into_iter().partition(|&x| x < n);
            (rows, cols.into_iter().map(|x| x - n).collect::<Vec<_>>())
        })
        .filter(|(r, c)| !r.is_empty() && !c.is_empty())
        .collect()
}

/// Index sets of the diagonal blocks of a Hermitian `n × n` pattern.
fn hermitian_blocks(n: usize, nonzero: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut set = DisjointSet::new(n);
    for r in 0..n {
        for c in r + 1..n {
            if nonzero(r, c) {
                set.union(r, c);
            }
        }
    }
    set.groups()
}

/// Trace norm of the reshuffled matrix `R_{(i,k),(j,l)} = ρ_{(i,j),(k,l)}`.
pub fn realignment_trace_norm_fock(rho: &FockDensityMatrix) -> f64 {
    let dl = rho.levels();
    let n = rho.dim();
    let m = rho.matrix();
    let entry = |row: usize, col: usize| {
        let (i, k) = (row / dl, row % dl);
        let (j, l) = (col / dl, col % dl);
        m[(i * dl + j, k * dl + l)]
    };
    bipartite_blocks(n, |r, c| entry(r, c) != C64::new(0.0, 0.0))
        .into_iter()
        .map(|(rows, cols)| {
            let block = DMatrix::from_fn(rows.len(), cols.len(), |a, b| entry(rows[a], cols[b]));
            block.singular_values().sum()
        })
        .sum()
}

/// `‖ρ^{T_B}‖₁ − 1`, with `ρ^{T_B}_{(i,j),(k,l)} = ρ_{(i,l),(k,j)}`.
pub fn negativity_fock(rho: &FockDensityMatrix) -> f64 {
    let dl = rho.levels();
    let n = rho.dim();
    let m = rho.matrix();
    let entry = |row: usize, col: usize| {
        let (i, j) = (row / dl, row % dl);
        let (k, l) = (col / dl, col % dl);
        m[(i * dl + l, k * dl + j)]
    };
    let norm: f64 = hermitian_blocks(n, |r, c| entry(r, c) != C64::new(0.0, 0.0))
        .into_iter()
        .map(|rows| {
            let block = DMatrix::from_fn(rows.len(), rows.len(), |a, b| entry(rows[a], rows[b]));
            block.symmetric_eigenvalues().iter().map(|x| x.abs()).sum::<f64>()
        })
        .sum();
    norm - 1.0
}

/// Covariance matrix `(x1, p1, x2, p2)` of the truncated state, `x = (a + a†)/2`.
pub fn covariance_from_fock(rho: &FockDensityMatrix) -> Result<CovarianceMatrix> {
    let dl = rho.levels();
    let m = rho.matrix();
    // ladder ops: 0 = a1, 1 = a1†, 2 = a2, 3 = a2†, acting on (i, j)
    let apply = |op: usize, (i, j): (usize, usize)| -> Option<(f64, (usize, usize))> {
        match op {
            0 => (i > 0).then(|| ((i as f64).sqrt(), (i - 1, j))),
            1 => (i < dl - 1).then(|| (((i + 1) as f64).sqrt(), (i + 1, j))),
            2 => (j > 0).then(|| ((j as f64).sqrt(), (i, j - 1))),
            _ => (j < dl - 1).then(|| (((j + 1) as f64).sqrt(), (i, j + 1))),
        }
    };
    // Tr(ρ O) = Σ_k ⟨k|ρ O|k⟩ with O a product of ladder operators
    let expect = |ops: &[usize]| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..dl {
            for j in 0..dl {
                let mut state = Some((1.0, (i, j)));
                for &op in ops.iter().rev() {
                    state = state.and_then(|(c, s)| apply(op, s).map(|(f, s2)| (c * f, s2)));
                }
                if let Some((c, (a, b))) = state {
                    acc += m[(i * dl + j, a * dl + b)] * c;
                }
            }
        }
        acc
    };
    let half = C64::new(0.5, 0.0);
    let ihalf = C64::new(0.0, 0.5);
    // R_q = Σ_s u[q][s] L_s
    let zero = C64::new(0.0, 0.0);
    let u = [
        [half, half, zero, zero],
        [-ihalf, ihalf, zero, zero],
        [zero, zero, half, half],
        [zero, zero, -ihalf, ihalf],
    ];
    let tr = m.trace();
    let first: Vec<C64> = (0..4).map(|s| expect(&[s]) / tr).collect();
    let mut second = [[zero; 4]; 4];
    for (s, row) in second.iter_mut().enumerate() {
        for (t, v) in row.iter_mut().enumerate() {
            *v = expect(&[s, t]) / tr;
        }
    }
    let mean: Vec<C64> = (0..4).map(|q| (0..4).map(|s| u[q][s] * first[s]).sum()).collect();
    let mut v = DMatrix::zeros(4, 4);
    for q in 0..4 {
        for w in 0..4 {
            let mut acc = zero;
            for s in 0..4 {
                for t in 0..4 {
                    acc += u[q][s] * u[w][t] * (second[s][t] + second[t][s]) * 0.5;
                }
            }
            v[(q, w)] = (acc - mean[q] * mean[w]).re;
        }
    }
    CovarianceMatrix::new((&v + v.transpose()) * 0.5)
}
