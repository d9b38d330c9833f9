use anqie_core::generators::{exm1_increments, exm1_sequence};
use anqie_core::seqcore::{quantize, scalar_sequence, DEFAULT_GUARD_BITS};
use anqie_core::{census, BlockCensus, DigitStream, SymbolicSequence};

use super::{positive, scaling_digits, stream};
use crate::error::{usage, CliResult};
use crate::params::Params;
use crate::report::{Report, Table, Verdict};

struct Estimate {
    base: u64,
    increment_base: u32,
    increments: BlockCensus,
    scaled: BlockCensus,
}

impl Estimate {
    fn h_increments(&self) -> f64 {
        self.increments
            .records
            .last()
            .expect("J >= 1")
            .entropy_all()
    }

    /// `AE(a_x) >= h - ln p` and `AE*(a) <= h + ln p`, so their ratio is at least this.
    fn ratio_lower(&self) -> f64 {
        let (h, lp) = (self.h_increments(), (self.base as f64).ln());
        (h - lp) / (h + lp)
    }
}

struct Job<'a> {
    base: u64,
    increment_base: u32,
    seed: u64,
    length: usize,
    j_max: usize,
    grid: u64,
    precision: u32,
    x: &'a DigitStream,
}

fn estimate(job: &Job) -> CliResult<Estimate> {
    let a = exm1_sequence(job.base, job.increment_base, job.seed, job.length)
        .map_err(|e| usage(e.to_string()))?;
    let inc = exm1_increments(job.increment_base, job.seed, job.length - 1);
    let inc = SymbolicSequence::new(inc, job.increment_base)?;
    let bits = scaling_digits(job.x, &a, job.precision)?;
    let ax = quantize(
        &scalar_sequence(&a, &bits, job.precision, DEFAULT_GUARD_BITS)?,
        job.grid,
    )?
    .to_symbolic()?;
    Ok(Estimate {
        base: job.base,
        increment_base: job.increment_base,
        increments: census(&inc, job.j_max, 1)?,
        scaled: census(&ax, job.j_max, 1)?,
    })
}

pub fn run(p: &mut Params) -> CliResult<Report> {
    let base_p = p.get("p", 2u64)?;
    let pprime = p.get("pprime", 11u32)?;
    let base_q = p.get("q", 3u64)?;
    let qprime = p.get("qprime", 29u32)?;
    let seed = p.get("seed", 1u64)?;
    let seed2 = p.get("seed2", seed.wrapping_add(1))?;
    let length = positive(p, "length", 4000)?;
    let j_max = positive(p, "jmax", 2)?;
    let grid = p.get("grid", 16u64)?;
    let precision = p.get("precision", 128u32)?;
    let x = stream(&p.get_str("x", "sqrt:2"))?;
    if j_max >= length {
        return Err(usage("jmax must be below length"));
    }

    let job = |base, increment_base, seed| Job {
        base,
        increment_base,
        seed,
        length,
        j_max,
        grid,
        precision,
        x: &x,
    };
    let (a, b) = rayon::join(
        || estimate(&job(base_p, pprime, seed)),
        || estimate(&job(base_q, qprime, seed2)),
    );
    let (a, b) = (a?, b?);

    let mut summary = Table::new(
        "families",
        &[
            "family",
            "base",
            "increment_base",
            "h_increments_nats",
            "h_scaled_nats",
            "band_lower",
            "band_upper",
            "ratio_lower",
        ],
    );
    let mut curve = Table::new(
        "curves",
        &["family", "J", "h_increments_nats", "h_scaled_nats"],
    );
    let mut verdict = Verdict::default();
    for (name, e) in [("a", &a), ("b", &b)] {
        let lp = (e.base as f64).ln();
        let h = e.h_increments();
        summary.push(vec![
            name.into(),
            e.base.into(),
            (e.increment_base as u64).into(),
            h.into(),
            e.scaled
                .records
                .last()
                .expect("J >= 1")
                .entropy_all()
                .into(),
            (h - lp).into(),
            (h + lp).into(),
            e.ratio_lower().into(),
        ]);
        for (ri, rs) in e.increments.records.iter().zip(&e.scaled.records) {
            curve.push(vec![
                name.into(),
                ri.j.into(),
                ri.entropy_all().into(),
                rs.entropy_all().into(),
            ]);
        }
        verdict.check(
            &format!("{name}_increment_entropy_exceeds_3_ln_base"),
            h > 3.0 * lp,
        );
    }
    let ratio_sum = a.ratio_lower() + b.ratio_lower();
    verdict.check("ratio_sum_lower_bound_exceeds_1", ratio_sum > 1.0);

    let mut report = Report::new("furstenberg");
    report.note("ratio_sum_lower", format!("{ratio_sum:.6}"));
    report.note("estimate", "finite-J");
    report.tables.push(summary);
    report.tables.push(curve);
    report.verdict = Some(verdict);
    Ok(report)
}
