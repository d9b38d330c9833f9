//! Reproducible experiments over `anqie-core`, each emitting a self-describing CSV
//! (or JSON) report and, where applicable, a PASS/FAIL verdict.

pub mod args;
pub mod error;
pub mod experiments;
pub mod params;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;

pub use error::{CliError, CliResult};
pub use params::Params;
pub use report::{Cell, Report, Table, Verdict};

/// Runs the command line and returns the process exit code: 0 on PASS (or for
/// experiments without a verdict), 1 on FAIL, 2 on usage errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("anqie: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &args::Cli) -> CliResult<bool> {
    let (name, output, flags) = cli.command.split();
    let file_entries = match &output.config {
        Some(path) => Params::read_config(path)?,
        None => Vec::new(),
    };
    let mut params = Params::new(file_entries, flags);

    let threads = output.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let report = pool.install(|| experiments::dispatch(name, &mut params))?;

    let timestamp = (!output.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let text = if output.json {
        report.to_json(params.echoed(), timestamp)
    } else {
        report.to_csv(params.echoed(), timestamp)
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(report.passed())
}
