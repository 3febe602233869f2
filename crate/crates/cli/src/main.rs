use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dlambda_cli::{run, CliError, Format, Scenario};

/// Reproduce the double-lambda EIT figures as CSV, NDJSON and SVG files.
#[derive(Debug, Parser)]
#[command(name = "dlambda", version)]
struct Args {
    /// fig-s2, fig-s3, fig-s4, fig-s5, fig-s6, fig-main2, fig-main3, fig-main4 or custom
    #[arg(long)]
    scenario: String,
    /// Output directory (created if missing)
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Comma-separated list of csv, ndjson, svg
    #[arg(long, default_value = "csv,ndjson,svg")]
    format: String,
    /// Parameter override key=value, repeatable
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Worker threads, 0 picks automatically
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn execute(args: Args) -> Result<(), CliError> {
    let formats = Format::parse_list(&args.format)?;
    let scenario = Scenario::new(&args.scenario, &args.overrides)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let report = run(&scenario, &args.out, &formats)?;
    for line in &report.summary {
        println!("{line}");
    }
    for file in &report.files {
        println!("wrote {}", file.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.kind().to_string() + ": " + e.to_string().lines().next().unwrap_or(""));
            eprintln!("{}", err.to_json_line());
            return ExitCode::from(2);
        }
    };
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
