use anqie_core::generators::{sarnak_build, SarnakPair};
use anqie_core::numtheory::mobius_sieve;
use anqie_core::MobiusTable;

use super::positive;
use crate::error::{usage, CliResult};
use crate::params::Params;
use crate::report::{Report, Table, Verdict};

const MIN_LIMIT: usize = 100_000;

/// Complete 4-blocks `4k+1..=4k+4 <= N` that break either block identity,
/// recomputed from the stored sequences.
pub fn block_violations(pair: &SarnakPair, mu: &MobiusTable) -> usize {
    let n = pair.limit();
    (0..n / 4)
        .filter(|k| {
            let idx = (4 * k + 1)..=(4 * k + 4);
            if idx.clone().all(|i| mu.mu(i) == 0) {
                return false;
            }
            let dot: i64 = idx
                .clone()
                .map(|i| pair.a()[i] as i64 * mu.mu(i) as i64)
                .sum();
            let ddot: i64 = idx.map(|i| pair.delta()[i] as i64 * mu.mu(i) as i64).sum();
            ddot != 0 || dot < 1
        })
        .count()
}

pub fn run(p: &mut Params) -> CliResult<Report> {
    let n = positive(p, "limit", 10_000_000)?;
    if n < MIN_LIMIT {
        return Err(usage(format!("limit must be at least {MIN_LIMIT}")));
    }
    let mu = mobius_sieve(4 * (n / 4) + 3)?;
    let pair = sarnak_build(n, &mu)?;
    let violations = block_violations(&pair, &mu);

    let checkpoints: Vec<usize> = (1..=10).map(|i| i * n / 10).collect();
    let sums = pair.prefix_sums(&mu, &checkpoints)?;
    let mut table = Table::new(
        "partial_sums",
        &[
            "N",
            "avg_a_mu",
            "avg_delta_mu",
            "avg_abs_mu_third",
            "sum_a_mu",
            "sum_delta_mu",
            "sum_abs_mu",
        ],
    );
    for s in &sums {
        let nf = s.n as f64;
        table.push(vec![
            s.n.into(),
            (s.a_mu as f64 / nf).into(),
            (s.delta_mu as f64 / nf).into(),
            (s.abs_mu as f64 / (3.0 * nf)).into(),
            s.a_mu.into(),
            s.delta_mu.into(),
            s.abs_mu.into(),
        ]);
    }

    let last = sums.last().expect("ten checkpoints");
    let mut verdict = Verdict::default();
    verdict.check("block_identities", violations == 0);
    verdict.check("delta_sum_at_most_10", last.delta_mu.abs() <= 10);
    verdict.check(
        "a_sum_at_least_third_abs_minus_3",
        3 * last.a_mu >= last.abs_mu as i64 - 9,
    );
    verdict.check(
        "a_average_at_least_0.19",
        last.a_mu as f64 >= 0.19 * n as f64,
    );

    let mut report = Report::new("sarnak");
    report.note("block_violations", violations);
    report.note(
        "reference_2_over_pi2",
        format!("{:.6}", 2.0 / std::f64::consts::PI.powi(2)),
    );
    report.tables.push(table);
    report.verdict = Some(verdict);
    Ok(report)
}
