use anqie_core::blockcount::packed_blocks;
use anqie_core::numtheory::{
    count_admissible, is_admissible_code, mobius_sieve, squarefree_enumerate,
};
use anqie_core::{census, SymbolicSequence, SQUAREFREE_ENTROPY_NATS};
use rayon::prelude::*;

use super::{entropy_of, positive};
use crate::error::CliResult;
use crate::params::Params;
use crate::report::{Report, Table, Verdict};

const CHECKPOINTS: [usize; 4] = [8, 12, 16, 20];

struct Row {
    j: usize,
    observed: u64,
    admissible: u64,
    all_admissible: bool,
}

pub fn run(p: &mut Params) -> CliResult<Report> {
    let limit = positive(p, "limit", 10_000_000)?;
    let j_max = positive(p, "jmax", 20)?;
    let gap_j_max = positive(p, "gap_jmax", 8)?;
    let tau = p.get("tau", 2u32)?;

    let indicator = mobius_sieve(limit)?.squarefree_indicator();
    let rows = (1..=j_max)
        .into_par_iter()
        .map(|j| {
            let codes = packed_blocks(&indicator, j)?;
            Ok(Row {
                j,
                observed: codes.len() as u64,
                admissible: count_admissible(j)?,
                all_admissible: codes.iter().all(|&c| is_admissible_code(c, j)),
            })
        })
        .collect::<anqie_core::Result<Vec<_>>>()?;

    let mut table = Table::new(
        "admissible",
        &[
            "J",
            "observed",
            "admissible",
            "all_observed_admissible",
            "entropy_observed_nats",
            "entropy_admissible_nats",
        ],
    );
    for r in &rows {
        table.push(vec![
            r.j.into(),
            r.observed.into(),
            r.admissible.into(),
            r.all_admissible.into(),
            entropy_of(r.observed, r.j).into(),
            entropy_of(r.admissible, r.j).into(),
        ]);
    }

    let at: Vec<f64> = rows
        .iter()
        .filter(|r| CHECKPOINTS.contains(&r.j))
        .map(|r| entropy_of(r.admissible, r.j))
        .collect();
    let mut verdict = Verdict::default();
    verdict.check(
        "observed_blocks_admissible",
        rows.iter().all(|r| r.all_admissible),
    );
    verdict.check(
        "observed_le_admissible",
        rows.iter().all(|r| r.observed <= r.admissible),
    );
    verdict.check(
        "admissible_entropy_decreasing_8_12_16_20",
        at.windows(2).all(|w| w[1] < w[0]),
    );
    verdict.check(
        "admissible_entropy_above_reference_below_ln2",
        at.iter()
            .all(|&h| h > SQUAREFREE_ENTROPY_NATS && h < std::f64::consts::LN_2),
    );

    // Gaps of the square-free numbers.
    let gaps = squarefree_enumerate(limit)?.difference();
    let gap_symbols = SymbolicSequence::from_values(gaps.values())?;
    let gap_census = census(&gap_symbols, gap_j_max.min(gap_symbols.len()), tau)?;
    let mut gap_table = Table::new("gap_census", &["J", "count", "growth", "entropy_nats"]);
    let mut prev = None;
    for r in &gap_census.records {
        let growth = prev.map(|c: u64| r.all as f64 / c as f64);
        gap_table.push(vec![
            r.j.into(),
            r.all.into(),
            growth.into(),
            r.entropy_all().into(),
        ]);
        prev = Some(r.all);
    }

    let mut report = Report::new("sqfree");
    report.note(
        "reference_entropy_nats",
        format!("{SQUAREFREE_ENTROPY_NATS:.6}"),
    );
    report.note("distinct_gaps", gap_symbols.alphabet_size());
    report.tables.push(table);
    report.tables.push(gap_table);
    report.verdict = Some(verdict);
    Ok(report)
}
