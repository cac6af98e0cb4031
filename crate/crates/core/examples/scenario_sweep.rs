//! Run a scenario file (or a built-in one) and print the CSV table.
//!
//! cargo run --release --example scenario_sweep -- path/to/scenario.json

use thzowc::scenario::{load_scenario, run_sweep};

const BUILT_IN: &str = r#"{
    "scenario_kind": "outdoor_thz",
    "params": {"pointing_model": "angular", "snr": {"mode": "link_budget", "noise_power_dbm": -69}},
    "sweep": [
        {"parameter_path": "relative_humidity", "values": [0.1, 0.9]},
        {"parameter_path": "snr.tx_power_dbm", "values": [-5, 0, 5, 10]}
    ],
    "metrics": ["outage", "snr"],
    "monte_carlo": {"seed": 1, "samples": 50000}
}"#;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")),
        None => BUILT_IN.to_string(),
    };
    let cfg = match load_scenario(&text) {
        Ok(c) => c,
        Err(errs) => {
            for e in errs.0 {
                eprintln!("{e}");
            }
            std::process::exit(2);
        }
    };
    let table = run_sweep(&cfg).expect("worker pool");
    print!("{}", table.to_csv_string());
}
