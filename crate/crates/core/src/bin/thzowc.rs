use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thzowc::scenario::{
    emit_csv, load_scenario, presets, run_sweep, run_sweep_with_workers, ScenarioConfig,
};

/// THz and optical wireless link sweeps.
#[derive(Parser)]
#[command(name = "thzowc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario file and report every problem found.
    Validate { config: PathBuf },
    /// Run a scenario sweep and write its CSV table.
    Run {
        config: PathBuf,
        /// Output CSV; overrides `output_path` in the file. Stdout when neither is set.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads; overrides THZOWC_WORKERS.
        #[arg(short, long)]
        workers: Option<usize>,
    },
    /// Write the bundled example scenarios into a directory.
    Presets {
        #[arg(default_value = "presets")]
        dir: PathBuf,
    },
}

const VALIDATION_FAILED: u8 = 2;
const ALL_ROWS_FAILED: u8 = 3;

fn load(path: &Path) -> Result<ScenarioConfig, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(VALIDATION_FAILED)
    })?;
    load_scenario(&text).map_err(|errs| {
        for e in &errs.0 {
            eprintln!("{}: {e}", path.display());
        }
        ExitCode::from(VALIDATION_FAILED)
    })
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Validate { config } => match load(&config) {
            Ok(cfg) => {
                println!("{}: ok, {} rows", config.display(), cfg.row_count());
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Run {
            config,
            output,
            workers,
        } => {
            let cfg = match load(&config) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let table = match workers {
                Some(n) => run_sweep_with_workers(&cfg, Some(n)),
                None => run_sweep(&cfg),
            };
            let table = match table {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::FAILURE;
                }
            };
            let written = match output.or(cfg.output_path.clone()) {
                Some(path) => emit_csv(&table, &path),
                None => {
                    print!("{}", table.to_csv_string());
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("{e}");
                return ExitCode::FAILURE;
            }
            let failed = table.failed_rows();
            if failed > 0 {
                eprintln!(
                    "{failed} of {} rows failed; see the error column",
                    table.rows.len()
                );
            }
            if !table.rows.is_empty() && failed == table.rows.len() {
                ExitCode::from(ALL_ROWS_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Presets { dir } => {
            if let Err(e) = std::fs::create_dir_all(&dir) {
                eprintln!("{}: {e}", dir.display());
                return ExitCode::FAILURE;
            }
            for (name, text) in presets() {
                let path = dir.join(name);
                if let Err(e) = std::fs::write(&path, text) {
                    eprintln!("{}: {e}", path.display());
                    return ExitCode::FAILURE;
                }
                println!("{}", path.display());
            }
            ExitCode::SUCCESS
        }
    }
}
