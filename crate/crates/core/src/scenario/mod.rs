//! Declarative sweep scenarios: a JSON parameter tree per scenario kind,
//! cartesian sweeps over dotted parameter paths, and CSV result tables.
//!
//! Field names carry their unit (`_hz`, `_m`, `_w`, `_deg`, `_rad`, `_db`,
//! `_dbm`); conversion to the linear SI values used by the models happens
//! here and nowhere else.

mod config;
mod eval;
mod presets;
mod table;

pub use config::{
    defaults, load_scenario, set_path, ConfigErrors, Metric, MonteCarlo, ScenarioConfig,
    ScenarioKind, SweepAxis, DEFAULT_MAX_ROWS,
};
pub use eval::MetricValue;
pub use presets::presets;
pub use table::{
    emit_csv, run_sweep, run_sweep_with_workers, Cell, ResultRow, ResultTable, WORKERS_ENV,
};
