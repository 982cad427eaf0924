use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rigcheck::run::{run_corpus, ModeOverride, RunOptions};

#[derive(Parser)]
#[command(name = "rigcheck", version, about = "Check commuting diagrams of bimonoidal structure maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Model,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every .diag file in a directory.
    Run {
        dir: PathBuf,
        /// Override the mode of assert statements.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, env = "RIGCHECK_SEED")]
        seed: Option<u64>,
        /// Number of random models per model-mode assertion.
        #[arg(long)]
        models: Option<usize>,
        #[arg(long)]
        maxdim: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Truncation window of the stabilization checks.
        #[arg(long, default_value_t = rigcalc::rig::DEFAULT_TRUNCATION)]
        trunc: usize,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let Cmd::Run { dir, mode, seed, models, maxdim, tol, trunc, json } = Cli::parse().cmd;
    if maxdim == Some(0) {
        eprintln!("error: --maxdim must be positive");
        return ExitCode::from(2);
    }
    let opts = RunOptions {
        mode: mode.map(|m| match m {
            ModeArg::Exact => ModeOverride::Exact,
            ModeArg::Model => ModeOverride::Model,
        }),
        seed,
        models,
        maxdim,
        tol,
        trunc,
        ..RunOptions::default()
    };
    let report = match run_corpus(&dir, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", dir.display());
            return ExitCode::from(2);
        }
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    print!("{}", report.to_text());
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
