//! 100x100 scan of the photon-added witness over n, r in [0.02, 2] written as CSV,
//! with a coarse text rendering of the detected region.
//!
//! `cargo run --release --example region_map_scan -- [out.csv]`

use std::path::PathBuf;

use cv_entangle::scan::{to_csv, write_atomic, Axis, ScanSpec};
use cv_entangle::state::{EvalOptions, Family, Quantity};

fn main() -> cv_entangle::Result<()> {
    let out = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("region_map.csv"), PathBuf::from);
    let spec = ScanSpec {
        base: Family::PhotonAddedSts.default_state()?,
        axes: [Axis::new("n", 0.02, 2.0, 100)?, Axis::new("r", 0.02, 2.0, 100)?],
        quantity: Quantity::Witness01,
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        options: EvalOptions::default(),
    };
    let t = std::time::Instant::now();
    let cells = spec.run()?;
    write_atomic(&out, to_csv(&cells).as_bytes())?;
    let detected = cells.iter().filter(|c| c.verdict == "entangled").count();
    println!("{} cells in {:.3}s, {detected} detected, written to {}", cells.len(), t.elapsed().as_secs_f64(), out.display());

    // rows: r from 2 (top) to 0.02; columns: n from 0.02 to 2; '#' detected
    for j in (0..100).rev().step_by(5) {
        let row: String = (0..100).step_by(2).map(|i| if cells[i * 100 + j].verdict == "entangled" { '#' } else { '.' }).collect();
        println!("r={:<5.2} {row}", spec.axes[1].value(j));
    }
    Ok(())
}
