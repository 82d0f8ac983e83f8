//! Two-parameter grid scans written as CSV.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::state::{evaluate, EvalOptions, Quantity, StateDescriptor};

pub const CSV_HEADER: &str = "param1,param2,value,verdict";

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, min: f64, max: f64, steps: usize) -> Result<Self> {
        let name = name.into();
        if steps < 2 {
            return Err(Error::invalid(format!("axis {name}: steps must be >= 2 (got {steps})")));
        }
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::invalid(format!("axis {name}: range must be finite")));
        }
        Ok(Self { name, min, max, steps })
    }

    /// `min + (max − min)·i/(steps − 1)`.
    pub fn value(&self, i: usize) -> f64 {
        self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

/// `name:min:max:steps`
impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, min, max, steps] = parts[..] else {
            return Err(Error::invalid(format!("axis {s:?} is not name:min:max:steps")));
        };
        let num = |t: &str| t.parse::<f64>().map_err(|_| Error::invalid(format!("axis {s:?}: bad number {t:?}")));
        let steps = steps.parse().map_err(|_| Error::invalid(format!("axis {s:?}: bad step count")))?;
        Self::new(name, num(min)?, num(max)?, steps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub base: StateDescriptor,
    pub axes: [Axis; 2],
    pub quantity: Quantity,
    pub workers: usize,
    pub options: EvalOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanCell {
    pub param1: f64,
    pub param2: f64,
    pub value: f64,
    pub verdict: String,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::invalid("workers must be >= 1"));
        }
        if self.axes[0].name == self.axes[1].name {
            return Err(Error::invalid("the two axes must name different parameters"));
        }
        let mut probe = self.base.clone();
        for ax in &self.axes {
            probe.set(&ax.name, ax.min)?;
        }
        Ok(())
    }

    /// Cells in row-major order (first axis outer). Cells that fail to evaluate carry
    /// `NaN` and the verdict `invalid`.
    pub fn run(&self) -> Result<Vec<ScanCell>> {
        self.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
        let (xs, ys) = (self.axes[0].values(), self.axes[1].values());
        let rows: Vec<Vec<ScanCell>> = pool.install(|| {
            xs.par_iter()
                .map(|&x| ys.iter().map(|&y| self.cell(x, y)).collect())
                .collect()
        });
        Ok(rows.into_iter().flatten().collect())
    }

    fn cell(&self, x: f64, y: f64) -> ScanCell {
        let mut state = self.base.clone();
        let result = state
            .set(&self.axes[0].name, x)
            .and_then(|_| state.set(&self.axes[1].name, y))
            .and_then(|_| evaluate(&state, self.quantity, &self.options));
        let (value, verdict) = match result {
            Ok(e) => (e.value, e.verdict),
            Err(_) => (f64::NAN, "invalid".to_string()),
        };
        ScanCell { param1: x, param2: y, value, verdict }
    }
}

/// CSV text; numbers use the shortest round-trip representation.
pub fn to_csv(cells: &[ScanCell]) -> String {
    let mut out = String::with_capacity(32 * (cells.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in cells {
        let _ = writeln!(out, "{},{},{},{}", c.param1, c.param2, c.value, c.verdict);
    }
    out
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
