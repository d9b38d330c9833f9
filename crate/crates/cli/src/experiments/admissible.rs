use anqie_core::numtheory::count_admissible;
use rayon::prelude::*;

use super::{entropy_of, positive};
use crate::error::CliResult;
use crate::params::Params;
use crate::report::{Report, Table};

pub fn run(p: &mut Params) -> CliResult<Report> {
    let j_max = positive(p, "jmax", 20)?;
    let counts = (1..=j_max)
        .into_par_iter()
        .map(count_admissible)
        .collect::<anqie_core::Result<Vec<_>>>()?;
    let mut table = Table::new("admissible", &["J", "count", "entropy_nats"]);
    for (j, c) in (1..).zip(counts) {
        table.push(vec![j.into(), c.into(), entropy_of(c, j).into()]);
    }
    let mut report = Report::new("admissible-count");
    report.tables.push(table);
    Ok(report)
}
