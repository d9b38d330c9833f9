use anqie_core::census;
use anqie_core::SymbolicSequence;

use super::{census_table, digit_symbols, positive, stream};
use crate::error::{usage, CliResult};
use crate::params::Params;
use crate::report::Report;

fn read_lines(path: &str, limit: usize) -> CliResult<SymbolicSequence> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    let tokens: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .take(limit)
        .collect();
    Ok(SymbolicSequence::from_values(&tokens)?)
}

pub fn run(p: &mut Params) -> CliResult<Report> {
    let seed = p.get("seed", 1u64)?;
    let source = p.get_str("source", &format!("prng:{seed}:2"));
    let length = positive(p, "length", 100_000)?;
    let j_max = positive(p, "jmax", 20)?;
    let tau = p.get("tau", 2u32)?;

    let seq = match source.strip_prefix("lines:") {
        Some(path) => read_lines(path, length)?,
        None => {
            let s = stream(&source)?;
            let n = s.available().map_or(length, |a| a.min(length));
            digit_symbols(s.prefix(n)?, s.base())?
        }
    };
    let c = census(&seq, j_max.min(seq.len()), tau)?;

    let mut report = Report::new("entropy");
    report.note("n", seq.len());
    report.note("alphabet", seq.alphabet_size());
    report.note("estimate", "finite-J");
    report.note("units", "nats");
    report.tables.push(census_table("census", &c));
    Ok(report)
}
