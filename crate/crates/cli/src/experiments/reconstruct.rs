use anqie_core::blockcount::block_counts;
use anqie_core::seqcore::{reconstruct, scalar_sequence, DEFAULT_GUARD_BITS};
use anqie_core::{IntegerSequence, SplitMix64, TorusSequence};
use num_bigint::BigUint;

use super::{positive, scaling_digits, stream};
use crate::error::{usage, CliResult};
use crate::params::Params;
use crate::report::{Cell, Report, Table, Verdict};

fn random_torus(seed: u64, length: usize, precision: u32) -> CliResult<TorusSequence> {
    let words = precision.div_ceil(64) as usize;
    let mut rng = SplitMix64::new(seed);
    let mantissas = (0..length)
        .map(|_| {
            let limbs: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
            let mut digits = Vec::with_capacity(2 * words);
            for w in limbs {
                digits.push(w as u32);
                digits.push((w >> 32) as u32);
            }
            BigUint::new(digits) >> (64 * words - precision as usize)
        })
        .collect();
    Ok(TorusSequence::new(mantissas, precision)?)
}

fn build(family: &str, p: &mut Params, length: usize, precision: u32) -> CliResult<TorusSequence> {
    let scaled = |p: &mut Params, a: IntegerSequence| -> CliResult<TorusSequence> {
        let x = stream(&p.get_str("x", "sqrt:2"))?;
        let bits = scaling_digits(&x, &a, precision)?;
        Ok(scalar_sequence(&a, &bits, precision, DEFAULT_GUARD_BITS)?)
    };
    let n = length as i64;
    match family {
        "rotation" => scaled(p, IntegerSequence::from_i64s(&(0..n).collect::<Vec<_>>())),
        "quadratic" => scaled(
            p,
            IntegerSequence::from_i64s(&(0..n).map(|k| k * k).collect::<Vec<_>>()),
        ),
        "constant" => scaled(p, IntegerSequence::from_i64s(&vec![1; length])),
        "random" => {
            let seed = p.get("seed", 1u64)?;
            random_torus(seed, length, precision)
        }
        other => Err(usage(format!("unknown family '{other}'"))),
    }
}

pub fn run(p: &mut Params) -> CliResult<Report> {
    let family = p.get_str("family", "rotation");
    let d = positive(p, "d", 1)?;
    let n = p.get("grid", 10u64)?;
    let length = positive(p, "length", 10_000)?;
    let precision = p.get("precision", 128u32)?;

    let x = build(&family, p, length, precision)?;
    let r = reconstruct(&x, d, n)?;
    let g = r.g.to_symbolic()?;
    let f = r.f.to_symbolic()?;

    let mut error = Table::new("error", &["sup_error", "bound_2_over_N", "holds"]);
    let sup_ok = r.sup_error <= r.error_bound();
    error.push(vec![
        r.sup_error.into(),
        r.error_bound().into(),
        sup_ok.into(),
    ]);

    let mut blocks = Table::new(
        "blocks",
        &["J", "K", "regular_blocks_g", "blocks_f", "bound", "holds"],
    );
    let mut blocks_ok = true;
    for k in 1..=2usize {
        let j = k * d * n as usize;
        if j > length {
            break;
        }
        let gr = block_counts(&g, j, 1)?.regular.expect("regular counts");
        let fa = block_counts(&f, j, 1)?.all;
        let bound = BigUint::from(n).pow((2 * k * d) as u32) * fa;
        let holds = BigUint::from(gr) <= bound;
        blocks_ok &= holds;
        blocks.push(vec![
            j.into(),
            k.into(),
            gr.into(),
            fa.into(),
            Cell::Big(bound.to_string()),
            holds.into(),
        ]);
    }

    let mut verdict = Verdict::default();
    verdict.check("sup_error_within_2_over_N", sup_ok);
    verdict.check("regular_block_inequality", blocks_ok);
    let mut report = Report::new("reconstruct");
    report.tables.push(error);
    report.tables.push(blocks);
    report.verdict = Some(verdict);
    Ok(report)
}
