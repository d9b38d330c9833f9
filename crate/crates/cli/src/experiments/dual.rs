use anqie_core::blockcount::block_counts;
use anqie_core::generators::{
    base_p_truncation, bounded_difference, cumsum, exm1_sequence, geometric,
};
use anqie_core::seqcore::{encode_scaled, quantize, scalar_sequence, DEFAULT_GUARD_BITS};
use anqie_core::{census, DigitStream, IntegerSequence, SymbolicSequence};
use num_bigint::BigInt;
use rayon::prelude::*;

use super::{digit_symbols, positive, scaling_digits, stream};
use crate::error::{usage, CliResult};
use crate::params::Params;
use crate::report::{Cell, Report, Table};

enum Family {
    /// Symbolic encoding of `Δa(n)·x mod 1`, exact for irrational `x`.
    BoundedDiff(IntegerSequence),
    /// `a(n)·x mod 1` quantized on a grid.
    Quantized { a: IntegerSequence, grid: u64 },
}

struct Sample {
    symbols: SymbolicSequence,
    digit_rows: Vec<(usize, u64, u64)>,
}

fn sample(
    family: &Family,
    x: &DigitStream,
    precision: u32,
    j_max: usize,
    depth: Option<u32>,
) -> CliResult<Sample> {
    let symbols = match family {
        Family::BoundedDiff(a) => {
            let delta = a.difference();
            encode_scaled(&delta, &scaling_digits(x, &delta, precision)?, precision)?
        }
        Family::Quantized { a, grid } => {
            let bits = scaling_digits(x, a, precision)?;
            let ax = scalar_sequence(a, &bits, precision, DEFAULT_GUARD_BITS)?;
            quantize(&ax, *grid)?.to_symbolic()?
        }
    };
    // Truncations of 2^n·x against blocks of the expansion of x.
    let mut digit_rows = Vec::new();
    if let (Some(l), Family::Quantized { a, .. }) = (depth, family) {
        let n = a.len();
        let f = base_p_truncation(x, l, n)?.to_symbolic()?;
        let digits = digit_symbols(x.prefix(n + l as usize - 1)?, 2)?;
        for j in 1..=j_max.min(n) {
            let lhs = block_counts(&f, j, 1)?.all;
            let rhs = block_counts(&digits, j + l as usize - 1, 1)?.all;
            digit_rows.push((j, lhs, rhs));
        }
    }
    Ok(Sample {
        symbols,
        digit_rows,
    })
}

pub fn run(p: &mut Params) -> CliResult<Report> {
    let family_name = p.get_str("family", "geometric");
    let seed = p.get("seed", 1u64)?;
    let samples = positive(p, "samples", 5)?;
    let j_max = positive(p, "jmax", 12)?;
    let precision = p.get("precision", 128u32)?;
    let tau = p.get("tau", 2u32)?;

    let mut depth = None;
    let family = match family_name.as_str() {
        "bounded-diff" => {
            let length = positive(p, "length", 100_000)?;
            let bound = p.get("bound", 2u32)?;
            Family::BoundedDiff(cumsum(
                &bounded_difference(seed, bound, length),
                BigInt::from(0),
            ))
        }
        "geometric" => {
            let base = p.get("p", 2u64)?;
            if base < 2 {
                return Err(usage("p must be at least 2"));
            }
            // Non-binary powers are multiplied out in full; keep their default short.
            let default_len = if base.is_power_of_two() {
                100_000
            } else {
                4000
            };
            let length = positive(p, "length", default_len)?;
            let grid = p.get("grid", base)?;
            if base == 2 {
                depth = Some(p.get("depth", 8u32)?);
            }
            Family::Quantized {
                a: geometric(base, length),
                grid,
            }
        }
        "exm1" => {
            let base = p.get("p", 2u64)?;
            let pprime = p.get("pprime", 11u32)?;
            let length = positive(p, "length", 4000)?;
            let grid = p.get("grid", 16u64)?;
            Family::Quantized {
                a: exm1_sequence(base, pprime, seed, length).map_err(|e| usage(e.to_string()))?,
                grid,
            }
        }
        other => return Err(usage(format!("unknown family '{other}'"))),
    };

    let x_specs: Vec<String> = match p.get_opt::<String>("x")? {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => (0..samples as u64)
            .map(|i| format!("prng:{}:2", seed.wrapping_add(1000 + i)))
            .collect(),
    };
    let streams = x_specs
        .iter()
        .map(|s| stream(s))
        .collect::<CliResult<Vec<_>>>()?;

    let results = streams
        .par_iter()
        .map(|x| {
            let s = sample(&family, x, precision, j_max, depth)?;
            let c = census(&s.symbols, j_max.min(s.symbols.len()), tau)?;
            Ok((c, s.digit_rows))
        })
        .collect::<CliResult<Vec<_>>>()?;

    let grid_label: Cell = match &family {
        Family::BoundedDiff(_) => "exact".into(),
        Family::Quantized { grid, .. } => (*grid).into(),
    };
    let mut per_sample = Table::new(
        "samples",
        &["sample", "x", "grid", "J", "count", "entropy_nats"],
    );
    let mut digit_table = Table::new(
        "digit_identity",
        &[
            "sample",
            "J",
            "count_truncation",
            "count_digit_blocks",
            "digit_block_length",
            "equal",
        ],
    );
    for (i, ((c, digit_rows), spec)) in results.iter().zip(&x_specs).enumerate() {
        for r in &c.records {
            per_sample.push(vec![
                i.into(),
                spec.as_str().into(),
                grid_label.clone(),
                r.j.into(),
                r.all.into(),
                r.entropy_all().into(),
            ]);
        }
        for &(j, lhs, rhs) in digit_rows {
            digit_table.push(vec![
                i.into(),
                j.into(),
                lhs.into(),
                rhs.into(),
                (j + depth.unwrap_or(0) as usize - 1).into(),
                (lhs == rhs).into(),
            ]);
        }
    }

    let mut aggregate = Table::new(
        "spread",
        &["J", "min_entropy_nats", "max_entropy_nats", "spread"],
    );
    let j_top = results.iter().map(|(c, _)| c.j_max()).min().unwrap_or(0);
    for j in 1..=j_top {
        let hs: Vec<f64> = results
            .iter()
            .map(|(c, _)| c.get(j).expect("within j_max").entropy_all())
            .collect();
        let lo = hs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = hs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        aggregate.push(vec![j.into(), lo.into(), hi.into(), (hi - lo).into()]);
    }

    let mut report = Report::new("dual");
    report.note("estimate", "finite-J");
    report.tables.push(per_sample);
    report.tables.push(aggregate);
    if depth.is_some() {
        report.tables.push(digit_table);
    }
    Ok(report)
}
