use anqie_core::generators::{bounded_difference, cumsum};
use anqie_core::seqcore::encode_scaled;
use anqie_core::{census, SymbolicSequence};
use num_bigint::BigInt;

use super::{entropy_of, positive, scaling_digits, stream};
use crate::error::CliResult;
use crate::params::Params;
use crate::report::{Report, Table, Verdict};

/// Builds `a = cumsum(d)` from bounded random increments and compares the block counts
/// of `d` with those of the symbolic encoding of `Δa(n)·x mod 1`.
pub fn run(p: &mut Params) -> CliResult<Report> {
    let seed = p.get("seed", 1u64)?;
    let length = positive(p, "length", 1_000_000)?;
    let j_max = positive(p, "jmax", 12)?;
    let bound = p.get("bound", 2u32)?;
    let x_spec = p.get_str("x", "sqrt:2");
    let precision = p.get("precision", 128u32)?;
    let tau = p.get("tau", 2u32)?;

    let d = bounded_difference(seed, bound, length);
    let a = cumsum(&d, BigInt::from(0));
    let delta = a.difference();
    let x = scaling_digits(&stream(&x_spec)?, &delta, precision)?;
    let encoded = encode_scaled(&delta, &x, precision)?;
    let d_symbols = SymbolicSequence::from_values(d.values())?;

    let (cd, ce) = rayon::join(
        || census(&d_symbols, j_max, tau),
        || census(&encoded, j_max, tau),
    );
    let (cd, ce) = (cd?, ce?);

    let mut table = Table::new(
        "counts",
        &[
            "J",
            "count_d",
            "count_delta_ax",
            "entropy_d_nats",
            "entropy_delta_ax_nats",
            "equal",
        ],
    );
    let mut all_equal = true;
    for (rd, re) in cd.records.iter().zip(&ce.records) {
        let equal = rd.all == re.all;
        all_equal &= equal;
        table.push(vec![
            rd.j.into(),
            rd.all.into(),
            re.all.into(),
            entropy_of(rd.all, rd.j).into(),
            entropy_of(re.all, re.j).into(),
            equal.into(),
        ]);
    }

    let mut report = Report::new("vdc");
    report.note("distinct_increments", encoded.alphabet_size());
    report.tables.push(table);
    let mut verdict = Verdict::default();
    verdict.check("counts_equal_every_J", all_equal);
    report.verdict = Some(verdict);
    Ok(report)
}
