use std::collections::HashSet;

use anqie_core::generators::fibonacci_word;
use anqie_core::seqcore::encode_scaled;
use anqie_core::{IntegerSequence, SplitMix64};
use num_bigint::BigUint;

use super::{positive, scaling_digits, stream};
use crate::error::{usage, CliResult};
use crate::params::Params;
use crate::report::{Cell, Report, Table, Verdict};

/// Indicator of the support set and its declared gap bound `L`.
fn support(spec: &str, length: usize) -> CliResult<(Vec<u8>, usize)> {
    let bad = || usage(format!("bad support spec '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["fibonacci-zeros"] | ["fibonacci-ones"] => {
            let target = u32::from(parts[0] == "fibonacci-ones");
            let w = fibonacci_word(length)?;
            let ind = w.symbols().iter().map(|&s| u8::from(s == target)).collect();
            Ok((ind, if target == 1 { 3 } else { 2 }))
        }
        ["periodic", k] => {
            let k: usize = k.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            Ok(((0..length).map(|i| u8::from(i % k == 0)).collect(), k))
        }
        ["prng", seed, l] => {
            let seed: u64 = seed.parse().map_err(|_| bad())?;
            let l: usize = l.parse().map_err(|_| bad())?;
            if l == 0 {
                return Err(bad());
            }
            let mut rng = SplitMix64::new(seed);
            let mut ind = vec![0u8; length];
            let mut pos = 0;
            while pos < length {
                ind[pos] = 1;
                pos += 1 + (rng.next_u64() % l as u64) as usize;
            }
            Ok((ind, l))
        }
        _ => Err(bad()),
    }
}

fn distinct<'a, T: std::hash::Hash + Eq + 'a>(windows: impl Iterator<Item = &'a [T]>) -> u64 {
    windows.collect::<HashSet<_>>().len() as u64
}

/// Compares block counts of the gap sequence of a bounded-gap set `A` (encoded through
/// `Δa(n)·x mod 1`) with block counts of its indicator, in both directions.
///
/// Finite data needs care at the right edge. A gap block starting at `a(m)` maps to the
/// indicator window `[a(m), a(m) + LJ)`, so only gap blocks with `a(m) + LJ <= len` are
/// counted on the left. An indicator window is determined by its offset to the first
/// element of `A` and the `L` consecutive gap `J`-blocks that follow, so only windows
/// whose `LJ` following gaps are known are counted on the right.
pub fn run(p: &mut Params) -> CliResult<Report> {
    let spec = p.get_str("support", "fibonacci-zeros");
    let length = positive(p, "length", 100_000)?;
    let j_max = positive(p, "jmax", 10)?;
    let precision = p.get("precision", 128u32)?;
    let x_spec = p.get_str("x", "sqrt:2");

    let (indicator, l) = support(&spec, length)?;
    let positions: Vec<usize> = (0..length).filter(|&i| indicator[i] == 1).collect();
    let gaps: Vec<i64> = positions.windows(2).map(|w| (w[1] - w[0]) as i64).collect();
    if gaps.is_empty() {
        return Err(usage("support has fewer than two elements"));
    }
    if let Some(&g) = gaps.iter().find(|&&g| g as usize > l) {
        return Err(usage(format!("gap {g} exceeds the declared bound {l}")));
    }
    let gaps = IntegerSequence::from_i64s(&gaps);
    let x = scaling_digits(&stream(&x_spec)?, &gaps, precision)?;
    let encoded = encode_scaled(&gaps, &x, precision)?;
    let enc = encoded.symbols();

    let mut table = Table::new(
        "bounds",
        &[
            "J",
            "gap_blocks_inner",
            "indicator_blocks",
            "indicator_blocks_inner",
            "gap_blocks",
            "upper_bound",
            "lower_holds",
            "upper_holds",
        ],
    );
    let (mut lower_ok, mut upper_ok) = (true, true);
    for j in 1..=j_max {
        let lj = l * j;
        if j > enc.len() || lj > length {
            break;
        }
        let gap_inner = distinct(
            (0..=enc.len() - j)
                .filter(|&m| positions[m] + lj <= length)
                .map(|m| &enc[m..m + j]),
        );
        let gap_all = distinct(enc.windows(j));
        let ind_all = distinct(indicator.windows(lj));
        // First element of A at or after s, with LJ known gaps after it.
        let mut m = 0;
        let mut inner = Vec::new();
        for s in positions[0]..=length - lj {
            while positions[m] < s {
                m += 1;
            }
            if m + lj > enc.len() {
                break;
            }
            inner.push(&indicator[s..s + lj]);
        }
        let ind_inner = distinct(inner.into_iter());
        let upper = BigUint::from(lj) * BigUint::from(gap_all + 1).pow(l as u32);

        let lower = gap_inner <= ind_all;
        let up = BigUint::from(ind_inner) <= upper;
        lower_ok &= lower;
        upper_ok &= up;
        table.push(vec![
            j.into(),
            gap_inner.into(),
            ind_all.into(),
            ind_inner.into(),
            gap_all.into(),
            Cell::Big(upper.to_string()),
            lower.into(),
            up.into(),
        ]);
    }

    let mut verdict = Verdict::default();
    verdict.check("gap_blocks_le_indicator_blocks", lower_ok);
    verdict.check("indicator_blocks_le_LJ_times_power", upper_ok);
    let mut report = Report::new("bounds");
    report.note("gap_bound", l);
    report.note("support_size", positions.len());
    report.tables.push(table);
    report.verdict = Some(verdict);
    Ok(report)
}
