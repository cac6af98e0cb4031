//! Regenerate the bundled absorption table from the six-line model.
//!
//! cargo run --example absorption_table -- crates/core/data/absorption_default.csv

use std::path::PathBuf;

use thzowc::indoor_thz::AbsorptionTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("absorption_default.csv"));
    // 0.5 GHz steps resolve the narrowest line (half-width about 1.5 GHz).
    let freqs: Vec<f64> = (0..=700).map(|i| 100e9 + 0.5e9 * i as f64).collect();
    let rh: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let table = AbsorptionTable::sample_line_model(&freqs, &rh)?;
    std::fs::write(&out, table.to_csv())?;
    println!("wrote {} rows to {}", freqs.len() * rh.len(), out.display());
    Ok(())
}
