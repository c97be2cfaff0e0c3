use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dirichlet_cli::{export, run, to_json, AnalysisConfig, CliError, Command};

/// Analyze affine composition operators on weighted Dirichlet series spaces.
#[derive(Parser)]
#[command(name = "dirichlet", version, about)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Analysis config (JSON, schema 1)
    #[arg(long)]
    config: PathBuf,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a human-readable table to stdout
    #[arg(long)]
    pretty: bool,
    /// Exit 2 if any window estimate failed to settle
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    truncation: Option<usize>,
    /// Write section matrices and residual traces as CSV into this directory
    #[arg(long)]
    csv_dir: Option<PathBuf>,
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = AnalysisConfig::load(&cli.config)?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(h) = cli.horizon {
        cfg.horizon = h;
    }
    if let Some(n) = cli.truncation {
        cfg.truncation = n;
    }
    cfg.validate()?;

    let out = run(cli.command, &cfg)?;
    let json = to_json(&out.report, true)?;
    match &cli.out {
        Some(p) => std::fs::write(p, json + "\n").map_err(|e| CliError::Output(format!("{}: {e}", p.display())))?,
        None if !cli.pretty => println!("{json}"),
        None => {}
    }
    if cli.pretty {
        print!("{}", out.report.to_table());
    }
    if let Some(dir) = &cli.csv_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
        for (i, t) in &out.sections {
            export::write_matrix(&dir.join(format!("section_{i}.csv")), &t.matrix)?;
        }
        for (i, t) in &out.traces {
            export::write_trace(&dir.join(format!("trace_{i}.csv")), t)?;
        }
    }
    if !cli.pretty {
        for w in &out.report.warnings {
            eprintln!("warning: {w}");
        }
    }
    if cli.strict && !out.report.warnings.is_empty() {
        return Err(CliError::Strict(out.report.warnings.len()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
