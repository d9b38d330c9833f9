//! Fixed values checked against independent computations.

use anqie_core::blockcount::{block_counts, census, packed_blocks};
use anqie_core::generators::{
    base_p_truncation, exm1_sequence, fibonacci_word, perturbed_geometric, prng_stream,
    quadratic_digits, sarnak_build,
};
use anqie_core::numtheory::{
    count_admissible, gap_block_construct, is_admissible, is_admissible_code, mobius_sieve,
    squarefree_enumerate, OpenInterval,
};
use anqie_core::{DigitStream, SplitMix64, SymbolicSequence};
use num_traits::ToPrimitive;

fn trial_mu(mut n: u64) -> i8 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

#[test]
fn mertens_at_ten_thousand() {
    assert_eq!(mobius_sieve(10_000).unwrap().mertens(10_000), -23);
}

#[test]
fn squarefree_count_to_a_million() {
    let limit = 1_000_000u64;
    let sq = squarefree_enumerate(limit as usize).unwrap();
    assert_eq!(sq.len(), 607_926);
    // Σ_{d <= √N} μ(d) ⌊N/d²⌋ counts the same set.
    let by_mobius: i64 = (1..=1000u64)
        .map(|d| trial_mu(d) as i64 * (limit / (d * d)) as i64)
        .sum();
    assert_eq!(by_mobius, 607_926);
}

#[test]
fn sieve_matches_trial_factorization() {
    let limit = 1_000_000;
    let mu = mobius_sieve(limit).unwrap();
    let mut rng = SplitMix64::new(2024);
    for _ in 0..10_000 {
        let n = 1 + rng.next_u64() % limit as u64;
        assert_eq!(mu.mu(n as usize), trial_mu(n), "n = {n}");
    }
}

#[test]
fn admissible_counts_from_brute_force() {
    // Exhaustive scan of all 2^J blocks, computed separately.
    let expected = [
        2, 4, 8, 15, 29, 55, 101, 175, 323, 583, 1019, 1695, 3047, 5359, 9134, 14857, 26205, 45273,
        76131, 122469,
    ];
    for (j, &c) in (1..).zip(expected.iter()) {
        assert_eq!(count_admissible(j).unwrap(), c, "J = {j}");
    }
}

#[test]
fn squarefree_blocks_are_admissible() {
    let seq = mobius_sieve(1_000_000).unwrap().squarefree_indicator();
    for j in [4, 9, 16, 24] {
        let codes = packed_blocks(&seq, j).unwrap();
        assert!(codes.iter().all(|&c| is_admissible_code(c, j)), "J = {j}");
        if j <= 20 {
            assert!(codes.len() as u64 <= count_admissible(j).unwrap());
        }
    }
}

#[test]
fn golden_splitmix_digits() {
    let golden = include_str!("data/splitmix64_seed42_base2_first64.txt").trim();
    let digits: String = prng_stream(42, 2)
        .unwrap()
        .prefix(64)
        .unwrap()
        .iter()
        .map(|d| char::from(b'0' + d))
        .collect();
    assert_eq!(digits, golden);
}

#[test]
fn prng_stream_contains_every_ten_block() {
    let digits = prng_stream(7, 2).unwrap().prefix(1_000_000).unwrap();
    let seq = SymbolicSequence::new(digits.into_iter().map(u32::from).collect(), 2).unwrap();
    assert_eq!(block_counts(&seq, 10, 2).unwrap().all, 1024);
}

#[test]
fn fibonacci_complexity_and_frequency() {
    let w = fibonacci_word(100_000).unwrap();
    let c = census(&w, 30, 2).unwrap();
    for r in &c.records {
        assert_eq!(r.all, r.j as u64 + 1);
    }
    let ones = w.symbols().iter().filter(|&&s| s == 1).count() as f64 / w.len() as f64;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((ones * phi * phi - 1.0).abs() < 0.01);
}

#[test]
fn sqrt_two_expansion() {
    let bits = quadratic_digits(2, 10).unwrap().prefix(10).unwrap();
    assert_eq!(bits, vec![0, 1, 1, 0, 1, 0, 1, 0, 0, 0]);
}

#[test]
fn truncation_blocks_match_digit_blocks() {
    for stream in [DigitStream::FibonacciWord, prng_stream(5, 2).unwrap()] {
        let n = 100_000;
        let l = 8;
        let f = base_p_truncation(&stream, l, n)
            .unwrap()
            .to_symbolic()
            .unwrap();
        let digits = stream.prefix(n + l as usize - 1).unwrap();
        let digits = SymbolicSequence::new(digits.into_iter().map(u32::from).collect(), 2).unwrap();
        for j in 1..=12 {
            let lhs = block_counts(&f, j, 2).unwrap().all;
            let rhs = block_counts(&digits, j + l as usize - 1, 2).unwrap().all;
            assert_eq!(lhs, rhs, "J = {j}");
        }
    }
}

#[test]
fn digit_identity_is_not_one_longer() {
    // A J-block of f_L spans L + J - 1 digits. Reading it as L + J digits already
    // disagrees on the Fibonacci word, whose n-block count is n + 1.
    let f = base_p_truncation(&DigitStream::FibonacciWord, 8, 10_000)
        .unwrap()
        .to_symbolic()
        .unwrap();
    assert_eq!(block_counts(&f, 4, 2).unwrap().all, 12);
}

#[test]
fn gap_block_examples() {
    let x = quadratic_digits(2, 256).unwrap().binary(256).unwrap();
    let one = gap_block_construct(&x, &[OpenInterval::new(0.4, 0.6).unwrap()], 1000).unwrap();
    assert_eq!(one.gaps, vec![1]);

    let five = vec![OpenInterval::new(0.0, 0.2).unwrap(); 5];
    let block = gap_block_construct(&x, &five, 100_000).unwrap();
    assert!(is_admissible(&block.support()));
    let sqrt2 = 2f64.sqrt();
    for &d in &block.gaps {
        let v = (d as f64 * sqrt2).fract();
        assert!(v > 0.0 && v < 0.2, "gap {d}");
    }
    assert!(gap_block_construct(&x, &[], 1).unwrap().support() == vec![1]);
}

#[test]
fn prime_only_congruence_can_fail() {
    // Constraining the j-th gap only modulo primes p <= √j imposes nothing for j <= 3,
    // and frac(√2) ∈ (0.4, 0.6) then picks three unit gaps.
    let sqrt2 = 2f64.sqrt();
    let gaps: Vec<u64> = (0..3)
        .map(|_| {
            (1..)
                .find(|&d| (d as f64 * sqrt2).fract() > 0.4 && (d as f64 * sqrt2).fract() < 0.6)
                .unwrap()
        })
        .collect();
    assert_eq!(gaps, vec![1, 1, 1]);
    assert!(!is_admissible(&[1, 1, 1, 1]));

    let x = quadratic_digits(2, 256).unwrap().binary(256).unwrap();
    let three = vec![OpenInterval::new(0.4, 0.6).unwrap(); 3];
    let block = gap_block_construct(&x, &three, 1000).unwrap();
    assert!(is_admissible(&block.support()));
}

#[test]
fn sarnak_pair_at_a_million() {
    let n = 1_000_000;
    let mu = mobius_sieve(n + 3).unwrap();
    let pair = sarnak_build(n, &mu).unwrap();
    assert!(pair.a().iter().all(|v| (-1..=1).contains(v)));
    let s = pair.prefix_sums(&mu, &[n]).unwrap()[0];
    assert!((s.delta_mu as f64 / n as f64).abs() <= 1e-5);
    assert!(3 * s.a_mu >= s.abs_mu as i64 - 9);
    assert!(s.a_mu as f64 / n as f64 >= 0.19);
}

#[test]
fn exm1_growth_and_increments() {
    let a = exm1_sequence(2, 5, 11, 200).unwrap();
    let v = a.values();
    for n in 30..199 {
        let ratio = v[n + 1].to_f64().unwrap() / v[n].to_f64().unwrap();
        assert!((ratio / 2.0 - 1.0).abs() < 0.01);
    }
    assert_eq!(
        perturbed_geometric(2, &[0; 9]),
        anqie_core::generators::geometric(2, 10)
    );
}
