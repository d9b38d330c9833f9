//! One module per subcommand. Each reads its parameters from [`Params`] and returns a
//! [`Report`]; nothing here writes output.

pub mod admissible;
pub mod bounds;
pub mod dual;
pub mod entropy;
pub mod furstenberg;
pub mod reconstruct;
pub mod sarnak;
pub mod sqfree;
pub mod vdc;

use anqie_core::seqcore::DEFAULT_GUARD_BITS;
use anqie_core::{BinaryDigits, BlockCensus, DigitStream, IntegerSequence, SymbolicSequence};

use crate::error::{usage, CliResult};
use crate::params::Params;
use crate::report::{Report, Table};

pub fn dispatch(name: &str, p: &mut Params) -> CliResult<Report> {
    match name {
        "entropy" => entropy::run(p),
        "vdc" => vdc::run(p),
        "sqfree" => sqfree::run(p),
        "sarnak" => sarnak::run(p),
        "dual" => dual::run(p),
        "reconstruct" => reconstruct::run(p),
        "bounds" => bounds::run(p),
        "furstenberg" => furstenberg::run(p),
        "admissible-count" => admissible::run(p),
        other => Err(usage(format!("unknown experiment '{other}'"))),
    }
}

pub(crate) fn entropy_of(count: u64, j: usize) -> f64 {
    (count as f64).ln() / j as f64
}

pub(crate) fn stream(spec: &str) -> CliResult<DigitStream> {
    DigitStream::parse(spec).map_err(|e| usage(e.to_string()))
}

pub(crate) fn digit_symbols(digits: Vec<u8>, base: u32) -> CliResult<SymbolicSequence> {
    Ok(SymbolicSequence::new(
        digits.into_iter().map(u32::from).collect(),
        base,
    )?)
}

/// Enough binary digits of `x` to scale every value of `a` at precision `P`.
pub(crate) fn scaling_digits(
    x: &DigitStream,
    a: &IntegerSequence,
    precision: u32,
) -> CliResult<BinaryDigits> {
    let bits = a.values().iter().map(|v| v.bits()).max().unwrap_or(0) as usize;
    Ok(x.binary(bits + precision as usize + DEFAULT_GUARD_BITS as usize)?)
}

pub(crate) fn census_table(name: &str, census: &BlockCensus) -> Table {
    let mut t = Table::new(
        name,
        &[
            "J",
            "count_all",
            "count_regular",
            "count_effective",
            "count_effective_regular",
            "entropy_all_nats",
            "entropy_regular_nats",
        ],
    );
    for r in &census.records {
        t.push(vec![
            r.j.into(),
            r.all.into(),
            r.regular.into(),
            r.effective.into(),
            r.effective_regular.into(),
            r.entropy_all().into(),
            r.entropy_regular().into(),
        ]);
    }
    t
}

pub(crate) fn positive(p: &mut Params, key: &str, default: usize) -> CliResult<usize> {
    let v = p.get(key, default)?;
    if v == 0 {
        return Err(usage(format!("{key} must be positive")));
    }
    Ok(v)
}
