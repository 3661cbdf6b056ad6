use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gradwise_cli::{parse_window, render, run, Flags, Format};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

/// Runs the tasks of a task file and prints a report.
#[derive(Debug, Parser)]
#[command(name = "gradwise", version)]
struct Args {
    /// Task file (TOML).
    task_file: std::path::PathBuf,
    /// Degree weight window `LO..HI`; overrides task windows.
    #[arg(long, value_parser = parse_window)]
    window: Option<(num_rational::BigRational, num_rational::BigRational)>,
    /// Tower depth; overrides task depths.
    #[arg(long)]
    depth: Option<u32>,
    /// Completion precision; overrides task precisions.
    #[arg(long)]
    precision: Option<u32>,
    /// Treat undetermined results as failures.
    #[arg(long)]
    strict_undetermined: bool,
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = std::env::var("GRADWISE_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let flags = Flags {
        window: args.window,
        depth: args.depth,
        precision: args.precision,
        strict_undetermined: args.strict_undetermined,
    };
    let format = match args.format {
        FormatArg::Human => Format::Human,
        FormatArg::Machine => Format::Machine,
    };
    let source = match std::fs::read_to_string(&args.task_file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", args.task_file.display());
            return ExitCode::from(2);
        }
    };
    match run(&source, &flags) {
        Ok(out) => {
            print!("{}", render(&out.reports, format, out.exit_code));
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("{}: {e}", args.task_file.display());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
