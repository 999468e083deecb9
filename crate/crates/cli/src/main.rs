use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use skein_cli::cache::CACHE_ENV;
use skein_cli::config::{Format, RunConfig, Suite, TableKind, DEFAULT_HMAX, DEFAULT_QMAX};
use skein_cli::tables::print_tables;

/// Exact verification suites for Jones-Wenzl projectors, their categorified
/// complexes and handle-slide certificates.
#[derive(Parser, Debug)]
#[command(name = "skein", version)]
#[command(group(ArgGroup::new("what").required(true).args(["suite", "table"])))]
struct Args {
    /// Suite to run.
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Print a coefficient table instead of running a suite.
    #[arg(long, value_enum)]
    table: Option<TableKind>,
    /// Level N (the prime p for ring-bridge).
    #[arg(short = 'N', long)]
    level: Option<usize>,
    /// Strand count n.
    #[arg(short = 'n', long)]
    strands: Option<usize>,
    /// Homological truncation.
    #[arg(long, default_value_t = DEFAULT_HMAX)]
    hmax: i32,
    /// q-degree truncation.
    #[arg(long, default_value_t = DEFAULT_QMAX)]
    qmax: i32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Cache directory for computed complexes and certificates.
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(kind) = args.table {
        let param = match kind {
            TableKind::Omega => args.level.unwrap_or(2),
            _ => args.strands.unwrap_or(2),
        };
        return match print_tables(kind, param, args.qmax) {
            Ok(t) => {
                print!("{t}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let cfg = RunConfig {
        suite: args.suite.expect("clap requires a suite or a table"),
        level: args.level,
        strands: args.strands,
        hmax: args.hmax,
        qmax: args.qmax,
        cache_dir: args.cache_dir,
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match skein_cli::run(&cfg) {
        Ok((report, timings)) => {
            match args.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text(Some(&timings))),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
