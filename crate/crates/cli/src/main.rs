use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use toric_cli::{configure_workers, run, CliError, Command, JobSpec};
use toric_core::Coefficients;

/// Homology of moment-angle complexes, cohomology of quasitoric manifolds, and
/// p-local splitting certificates.
///
/// Inputs are JSON files with 1-based vertex indices. `TORIC_WORKERS` sets the
/// number of worker threads.
#[derive(Parser, Debug)]
#[command(name = "toric", version)]
struct Args {
    command: Command,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Z, Q or Fp (for example F2, F5).
    #[arg(long)]
    coeff: Option<Coefficients>,
    #[arg(long)]
    p: Option<u64>,
    /// Report destination; for `fixtures`, the directory to write into.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Human-readable output instead of JSON.
    #[arg(long)]
    text: bool,
    /// Only visit subsets of these sizes, e.g. `--sizes 2,3`.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Override the vertex-count limit for subset enumeration.
    #[arg(long)]
    cap: Option<usize>,
    /// Primitive root to use instead of the smallest one.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<i64>,
    /// With `--k`, runs the two-simplices criterion for `Δ^k × Δ^{n-k}`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: Args) -> Result<(), CliError> {
    configure_workers()?;
    let fixtures_dir = args.command == Command::Fixtures;
    let job = JobSpec {
        command: args.command,
        input: args.input,
        input_text: None,
        coefficients: args.coeff,
        p: args.p,
        output: args.output.clone(),
        text: args.text,
        sizes: args.sizes,
        cap: args.cap,
        u: args.u,
        n: args.n,
        k: args.k,
    };
    let report = run(&job)?;
    let body = if job.text { report.to_text() } else { report.to_json() };
    match args.output {
        Some(path) if !fixtures_dir => std::fs::write(&path, body)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        _ => {
            print!("{body}");
            Ok(())
        }
    }
}
