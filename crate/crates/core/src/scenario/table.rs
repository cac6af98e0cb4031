//! Sweep execution and CSV output.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde_json::Value;

use super::config::{set_path, ScenarioConfig};
use super::eval;
use crate::error::{Error, Result};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "THZOWC_WORKERS";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn from_json(v: &Value) -> Self {
        match v {
            Value::Number(n) => n.as_f64().map_or(Cell::Text(n.to_string()), Cell::Number),
            Value::String(s) => Cell::Text(s.clone()),
            Value::Null => Cell::Empty,
            other => Cell::Text(other.to_string()),
        }
    }

    fn render(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64.
            Cell::Number(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub cells: Vec<Cell>,
    pub error: Option<String>,
}

/// Sweep parameters in declaration order, then metrics (each Monte Carlo
/// metric followed by its standard error), then an `error` column.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    /// Rows whose evaluation failed.
    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of a column; failed or non-numeric cells give NaN.
    pub fn numbers(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.column(name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match &r.cells[k] {
                    Cell::Number(x) => *x,
                    _ => f64::NAN,
                })
                .collect(),
        )
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::result::Result<(), csv::Error> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let mut header = self.columns.clone();
        header.push("error".into());
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.cells.iter().map(Cell::render).collect();
            rec.push(row.error.clone().unwrap_or_default());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

/// Write the table as CSV to `path`.
pub fn emit_csv(table: &ResultTable, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    table
        .write_csv(std::io::BufWriter::new(file))
        .map_err(|e| Error::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
}

/// Cartesian product of the axes, last axis fastest.
fn sweep_points(cfg: &ScenarioConfig) -> Vec<Vec<usize>> {
    let mut points = vec![Vec::new()];
    for axis in &cfg.sweep {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..axis.values.len()).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    points
}

fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
}

/// Run every sweep point on a pool sized by `THZOWC_WORKERS` (all cores
/// when unset).
pub fn run_sweep(cfg: &ScenarioConfig) -> Result<ResultTable> {
    run_sweep_with_workers(cfg, workers_from_env())
}

/// Run every sweep point on a pool of `workers` threads. Rows come back in
/// sweep order and are identical for any worker count.
pub fn run_sweep_with_workers(cfg: &ScenarioConfig, workers: Option<usize>) -> Result<ResultTable> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;

    let mut columns: Vec<String> = cfg
        .sweep
        .iter()
        .flat_map(|a| a.paths.iter().cloned())
        .collect();
    for m in &cfg.metrics {
        columns.push(m.column().into());
        if m.has_stderr() {
            columns.push(format!("{}_stderr", m.column()));
        }
    }

    let points = sweep_points(cfg);
    let samples = cfg.samples();
    let rows = pool.install(|| {
        points
            .par_iter()
            .map(|idx| {
                let mut params = cfg.params.clone();
                let mut cells = Vec::new();
                for (axis, &i) in cfg.sweep.iter().zip(idx) {
                    for (p, v) in axis.paths.iter().zip(&axis.values[i]) {
                        set_path(&mut params, p, v.clone());
                        cells.push(Cell::from_json(v));
                    }
                }
                match eval::evaluate(
                    cfg.kind,
                    &params,
                    &cfg.metrics,
                    cfg.monte_carlo.seed,
                    samples,
                ) {
                    Ok(values) => {
                        for (m, v) in cfg.metrics.iter().zip(values) {
                            cells.push(Cell::Number(v.value));
                            if m.has_stderr() {
                                cells.push(v.stderr.map_or(Cell::Empty, Cell::Number));
                            }
                        }
                        ResultRow { cells, error: None }
                    }
                    Err(e) => {
                        cells.resize(columns.len(), Cell::Empty);
                        ResultRow {
                            cells,
                            error: Some(e.to_string()),
                        }
                    }
                }
            })
            .collect()
    });
    Ok(ResultTable { columns, rows })
}
