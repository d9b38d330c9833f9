//! Acceptance gate: one line per criterion, exit status non-zero if any fails.
//!
//! Run with `cargo test -p anqie-cli --test acceptance`.

use std::f64::consts::LN_2;
use std::process::Command;
use std::time::Instant;

use anqie_cli::experiments::{dispatch, sarnak::block_violations};
use anqie_cli::{Cell, Params, Report};
use anqie_core::blockcount::block_counts;
use anqie_core::generators::{
    base_p_truncation, fibonacci_word, prng_stream, quadratic_digits, sarnak_build,
};
use anqie_core::numtheory::{
    count_admissible, gap_block_construct, is_admissible, mobius_sieve, OpenInterval,
};
use anqie_core::{
    census, census_automaton, census_naive, DigitStream, SplitMix64, SymbolicSequence,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn experiment(name: &str, params: &[(&str, String)]) -> Report {
    let flags = params
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    dispatch(name, &mut Params::new(Vec::new(), flags))
        .unwrap_or_else(|e| panic!("{name} failed: {e}"))
}

fn column<'a>(report: &'a Report, table: &str, col: &str) -> Vec<&'a Cell> {
    let t = report
        .table(table)
        .unwrap_or_else(|| panic!("missing table {table}"));
    let i = t
        .column(col)
        .unwrap_or_else(|| panic!("missing column {col}"));
    t.rows.iter().map(|r| &r[i]).collect()
}

fn u(c: &Cell) -> u64 {
    match c {
        Cell::UInt(v) => *v,
        other => panic!("expected integer, got {other:?}"),
    }
}

fn f(c: &Cell) -> f64 {
    match c {
        Cell::Float(v) => *v,
        other => panic!("expected float, got {other:?}"),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn symbols(digits: Vec<u8>, q: u32) -> SymbolicSequence {
    SymbolicSequence::new(digits.into_iter().map(u32::from).collect(), q).unwrap()
}

fn engine_oracle() -> Outcome {
    let mut rng = SplitMix64::new(0xACCE);
    let mut checked = 0;
    for i in 0..100 {
        let q = 2 + (rng.next_u64() % 15) as u32;
        let len = 1_000 + (rng.next_u64() % 99_001) as usize;
        let seq = SymbolicSequence::new(SplitMix64::digits(rng.next_u64(), q, len), q).unwrap();
        let naive = census_naive(&seq, 20, 2).unwrap().all_counts();
        let auto = census_automaton(&seq, 20).unwrap().all_counts();
        ensure(naive == auto, || {
            format!("sequence {i} (q={q}, n={len}) differs")
        })?;
        checked += 1;
    }
    let fib = fibonacci_word(100_000).unwrap();
    ensure(
        census_naive(&fib, 20, 2).unwrap().all_counts()
            == census_automaton(&fib, 20).unwrap().all_counts(),
        || "Fibonacci prefix differs".into(),
    )?;
    Ok(format!(
        "{checked} random sequences + Fibonacci 10^5, J <= 20, exact"
    ))
}

fn factor_complexity() -> Outcome {
    let c = census(&fibonacci_word(100_000).unwrap(), 50, 2).unwrap();
    for r in &c.records {
        ensure(r.all == r.j as u64 + 1, || {
            format!("J={} count {}", r.j, r.all)
        })?;
    }
    Ok("count_all(J) = J+1 for J <= 50, exact".into())
}

fn van_der_corput() -> Outcome {
    for l in 1..=3 {
        let r = experiment(
            "vdc",
            &[
                ("bound", l.to_string()),
                ("length", "1000000".into()),
                ("jmax", "12".into()),
            ],
        );
        let d = column(&r, "counts", "count_d");
        let e = column(&r, "counts", "count_delta_ax");
        ensure(d.len() == 12 && d == e && r.passed(), || {
            format!("L={l} counts differ")
        })?;
    }
    Ok("L in {1,2,3}, n=10^6, J <= 12, counts identical".into())
}

fn digit_identity() -> Outcome {
    let l = 8u32;
    for (name, s) in [
        ("fib", DigitStream::FibonacciWord),
        ("prng", prng_stream(5, 2).unwrap()),
    ] {
        let n = 100_000;
        let f_l = base_p_truncation(&s, l, n).unwrap().to_symbolic().unwrap();
        let digits = symbols(s.prefix(n + l as usize - 1).unwrap(), 2);
        for j in 1..=12 {
            let lhs = block_counts(&f_l, j, 1).unwrap().all;
            let rhs = block_counts(&digits, j + l as usize - 1, 1).unwrap().all;
            ensure(lhs == rhs, || format!("{name}: J={j}: {lhs} vs {rhs}"))?;
        }
    }
    // Same identity through the dual pipeline, plus h(10) for the random stream.
    let r = experiment(
        "dual",
        &[
            ("x", "fib,prng:5:2".into()),
            ("jmax", "12".into()),
            ("length", "100000".into()),
        ],
    );
    ensure(
        column(&r, "digit_identity", "equal")
            .iter()
            .all(|c| **c == Cell::Bool(true)),
        || "dual digit table disagrees".into(),
    )?;
    let t = r.table("samples").unwrap();
    let h10 = t
        .rows
        .iter()
        .find(|row| row[0] == Cell::UInt(1) && row[3] == Cell::UInt(10))
        .map(|row| f(&row[5]))
        .unwrap();
    ensure((h10 - LN_2).abs() <= 1e-6, || format!("h(10) = {h10}"))?;
    Ok(format!(
        "|B_J(f_8)| = |B_(J+7)(digits)| for J <= 12 on fib and prng; h(10) = {h10:.9} (ln 2 +- 1e-6)"
    ))
}

fn reconstruction() -> Outcome {
    let mut cases = 0;
    for family in ["random", "rotation"] {
        for d in [1usize, 3] {
            for n in [5u64, 10, 20] {
                let r = experiment(
                    "reconstruct",
                    &[
                        ("family", family.into()),
                        ("d", d.to_string()),
                        ("grid", n.to_string()),
                        ("length", "10000".into()),
                    ],
                );
                let js: Vec<u64> = column(&r, "blocks", "J").into_iter().map(u).collect();
                ensure(js == [d as u64 * n, 2 * d as u64 * n], || {
                    format!("J values {js:?}")
                })?;
                ensure(r.passed(), || format!("{family} d={d} N={n} failed"))?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} cases, (d,N) in {{1,3}}x{{5,10,20}}, J in {{dN,2dN}}, exact inequalities"
    ))
}

fn squarefree() -> Outcome {
    for (j, c) in [(3, 8), (4, 15), (8, 175)] {
        ensure(count_admissible(j).unwrap() == c, || {
            format!("C({j}) != {c}")
        })?;
    }
    let r = experiment(
        "sqfree",
        &[("limit", "10000000".into()), ("jmax", "20".into())],
    );
    ensure(r.passed(), || "sqfree verdict FAIL".into())?;
    let reference = r
        .notes
        .iter()
        .find(|(k, _)| k == "reference_entropy_nats")
        .map(|(_, v)| v.clone())
        .unwrap_or_default();
    ensure(reference == "0.421383", || {
        format!("reference printed as {reference}")
    })?;
    let hs: Vec<f64> = column(&r, "admissible", "entropy_admissible_nats")
        .into_iter()
        .map(f)
        .collect();
    let at: Vec<f64> = [8, 12, 16, 20].iter().map(|&j| hs[j - 1]).collect();
    ensure(at.windows(2).all(|w| w[1] < w[0]), || {
        format!("not decreasing: {at:?}")
    })?;
    ensure(at.iter().all(|&h| h > 0.421383 && h < 0.6932), || {
        format!("out of range: {at:?}")
    })?;
    Ok(format!(
        "C(3,4,8) = 8,15,175; sieve 10^7 blocks admissible, J <= 20; (1/J)ln C at 8,12,16,20 = {:.4},{:.4},{:.4},{:.4}; reference {reference}",
        at[0], at[1], at[2], at[3]
    ))
}

fn sarnak() -> Outcome {
    let n = 4_000_000;
    let mu = mobius_sieve(n + 3).unwrap();
    let pair = sarnak_build(n, &mu).unwrap();
    let violations = block_violations(&pair, &mu);
    ensure(violations == 0, || format!("{violations} block violations"))?;
    let (mut a, mut da, mut abs) = (0i64, 0i64, 0i64);
    for k in 1..=n {
        let m = mu.mu(k) as i64;
        a += pair.a()[k] as i64 * m;
        da += pair.delta()[k] as i64 * m;
        abs += m.abs();
    }
    ensure(da.abs() <= 10, || format!("|sum da mu| = {}", da.abs()))?;
    ensure(3 * a >= abs - 9, || {
        format!("3 sum a mu = {} < sum|mu| - 9 = {}", 3 * a, abs - 9)
    })?;
    let avg = a as f64 / n as f64;
    ensure(avg >= 0.19, || format!("average {avg}"))?;
    let r = experiment("sarnak", &[("limit", n.to_string())]);
    ensure(r.passed(), || "sarnak verdict FAIL".into())?;
    Ok(format!(
        "N=4*10^6: 0 violations, sum da mu = {da}, avg a mu = {avg:.6} (>= 0.19)"
    ))
}

fn count_bounds() -> Outcome {
    let mut supports = vec!["fibonacci-zeros".to_string()];
    supports.extend((0..10).map(|i| format!("prng:{}:{}", 100 + i, 2 + i % 3)));
    for s in &supports {
        let r = experiment("bounds", &[("support", s.clone()), ("jmax", "10".into())]);
        ensure(r.passed(), || format!("{s} failed"))?;
    }
    Ok(format!("{} support sets, J <= 10, exact", supports.len()))
}

/// `frac(d·√2)` from an integer square root, independent of the constructor's arithmetic.
fn frac_sqrt2_times(d: u64) -> f64 {
    let root = ((BigUint::from(2u32) * BigUint::from(d).pow(2)) << 128u32).sqrt();
    let frac = root & ((BigUint::from(1u32) << 64u32) - 1u32);
    frac.to_f64().unwrap() / 2f64.powi(64)
}

fn gap_blocks() -> Outcome {
    let x = quadratic_digits(2, 4096).unwrap().binary(4096).unwrap();
    let mut rng = SplitMix64::new(0x6A9);
    let unit = |r: &mut SplitMix64| (r.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let mut max_gap = 0;
    for case in 0..20 {
        let len = 1 + (rng.next_u64() % 8) as usize;
        let intervals: Vec<OpenInterval> = (0..len)
            .map(|_| {
                let w = 0.05 + 0.25 * unit(&mut rng);
                let lo = (1.0 - w) * unit(&mut rng);
                OpenInterval::new(lo, lo + w).unwrap()
            })
            .collect();
        let block = gap_block_construct(&x, &intervals, 1_000_000)
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure(is_admissible(&block.support()), || {
            format!("case {case}: not admissible")
        })?;
        for (d, iv) in block.gaps.iter().zip(&intervals) {
            let v = frac_sqrt2_times(*d);
            ensure(iv.contains(v), || {
                format!("case {case}: frac({d} sqrt 2) = {v} outside {iv:?}")
            })?;
        }
        max_gap = max_gap.max(*block.gaps.iter().max().unwrap());
    }
    Ok(format!(
        "20 interval lists, all admissible and in range; largest gap {max_gap}"
    ))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_anqie");
    let run = |args: &[&str], threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(bin)
            .args(args)
            .args(["--no-timestamp", "--threads", threads])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("{args:?} exited {:?}", out.status.code())
        })?;
        Ok(out.stdout)
    };
    let commands: [&[&str]; 4] = [
        &["vdc", "--bound", "3", "--length", "1000000", "--jmax", "12"],
        &["sqfree", "--limit", "10000000", "--jmax", "20"],
        &["sqfree", "--limit", "1000000", "--jmax", "16", "--json"],
        &["dual", "--samples", "3", "--length", "20000"],
    ];
    for args in commands {
        let first = run(args, "1")?;
        ensure(first == run(args, "1")?, || {
            format!("{args:?}: re-run differs")
        })?;
        ensure(first == run(args, "4")?, || {
            format!("{args:?}: 4 threads differ")
        })?;
    }
    Ok(format!(
        "{} commands byte-identical across re-runs and 1 vs 4 threads",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("engine oracle", engine_oracle),
        ("factor complexity", factor_complexity),
        ("bounded-difference bijection", van_der_corput),
        ("digit identity", digit_identity),
        ("reconstruction", reconstruction),
        ("square-free suite", squarefree),
        ("Mobius counterexample", sarnak),
        ("bounded-gap count inequalities", count_bounds),
        ("gap-block constructor", gap_blocks),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} {name}: PASS ({detail}) [{secs:.1}s]",
                i + 1
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "criterion {:>2} {name}: FAIL ({detail}) [{secs:.1}s]",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
