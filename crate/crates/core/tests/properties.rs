//! Property tests over randomly generated inputs.

use anqie_core::blockcount::{block_counts, census_automaton, census_naive, census_packed};
use anqie_core::generators::{cumsum, DigitStream};
use anqie_core::numtheory::{is_admissible, is_admissible_code};
use anqie_core::seqcore::{
    iterated_difference, mul_mod1, quantize, reconstruct, scalar_sequence, torus_distance,
    DEFAULT_GUARD_BITS,
};
use anqie_core::{IntegerSequence, SymbolicSequence, TorusSequence};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn symbolic() -> impl Strategy<Value = SymbolicSequence> {
    (2u32..6).prop_flat_map(|q| {
        prop::collection::vec(0..q, 1..400).prop_map(move |s| SymbolicSequence::new(s, q).unwrap())
    })
}

fn torus(precision: u32) -> impl Strategy<Value = TorusSequence> {
    prop::collection::vec(any::<u64>(), 2..200).prop_map(move |v| {
        let m = v
            .into_iter()
            .map(|w| BigUint::from(w) >> (64 - precision))
            .collect();
        TorusSequence::new(m, precision).unwrap()
    })
}

proptest! {
    #[test]
    fn engines_agree(seq in symbolic(), j_max in 1usize..12) {
        let j_max = j_max.min(seq.len());
        let naive = census_naive(&seq, j_max, 2).unwrap();
        prop_assert_eq!(census_packed(&seq, j_max, 2).unwrap(), naive.clone());
        prop_assert_eq!(census_automaton(&seq, j_max).unwrap().all_counts(), naive.all_counts());
        naive.check_invariants().unwrap();
    }

    #[test]
    fn block_counts_are_subadditive(seq in symbolic(), j in 1usize..6, k in 1usize..6) {
        prop_assume!(j + k <= seq.len());
        let c = |n| block_counts(&seq, n, 1).unwrap().all;
        prop_assert!(c(j + k) <= c(j) * c(k));
    }

    #[test]
    fn quantization_error_is_half_a_cell(x in torus(48), grid in 2u64..400) {
        let q = quantize(&x, grid).unwrap();
        let modulus = x.modulus() * grid;
        for (n, &level) in q.levels().iter().enumerate() {
            let lhs = x.mantissa(n) * grid;
            let rhs = BigUint::from(level) << x.precision();
            // |x - level/N| <= 1/(2N), scaled by N·2^P.
            prop_assert!(torus_distance(&lhs, &rhs, &modulus) * 2u32 <= x.modulus());
        }
    }

    #[test]
    fn cumsum_then_difference(d in prop::collection::vec(-50i64..50, 0..100), a0 in -1000i64..1000) {
        let d = IntegerSequence::from_i64s(&d);
        prop_assert_eq!(cumsum(&d, BigInt::from(a0)).difference(), d);
    }

    #[test]
    fn mul_mod1_on_rationals(num in 0u64..1000, den in 1u64..1000, a in 1u64..1_000_000) {
        let precision = 40;
        let x = DigitStream::Rational { num, den, base: 2 }.binary(200).unwrap();
        let m = mul_mod1(&BigUint::from(a), &x, precision, DEFAULT_GUARD_BITS).unwrap();
        // Exact a·num/den mod 1, scaled by den·2^P.
        let exact = BigUint::from((a as u128 * num as u128 % den as u128) as u64) << precision;
        let modulus = BigUint::from(den) << precision;
        let dist = torus_distance(&(m * den), &exact, &modulus);
        prop_assert!(dist <= BigUint::from(den));
    }

    #[test]
    fn reconstruction_stays_within_two_over_n(x in prop::collection::vec(any::<u32>(), 40..300)) {
        let mant: Vec<BigUint> = x.iter().map(|&v| BigUint::from(v)).collect();
        let x = TorusSequence::new(mant, 32).unwrap();
        let (d, n) = (3usize, 12u64);
        let r = reconstruct(&x, d, n).unwrap();
        prop_assert!(r.sup_error <= r.error_bound());

        // g agrees with its anchor plus the explicit sum of f along the residue class.
        let grid = n * n;
        for pos in 0..x.len() {
            let anchor = pos - (pos % (d * n as usize)) + pos % d;
            let base = ((x.mantissa(anchor) * grid) >> 32u32).to_u64().unwrap();
            let walk: u64 = (anchor..pos).step_by(d).map(|i| r.f.levels()[i]).sum();
            prop_assert_eq!(r.g.levels()[pos], (base + walk) % grid);
        }

        // Regular J-blocks of g are fixed by f's J-block and the 2d anchors it touches.
        let j = d * n as usize;
        if x.len() >= 2 * j {
            let g = r.g.to_symbolic().unwrap();
            let f = r.f.to_symbolic().unwrap();
            let gr = block_counts(&g, j, 1).unwrap().regular.unwrap();
            let fa = block_counts(&f, j, 1).unwrap().all;
            prop_assert!(gr as u128 <= (grid as u128).pow(d as u32) * fa as u128);
        }
    }

    #[test]
    fn admissibility_code_matches_slice(code in any::<u32>(), j in 1usize..=24) {
        let code = code as u64 & ((1 << j) - 1);
        let block: Vec<u8> = (0..j).map(|i| ((code >> (j - 1 - i)) & 1) as u8).collect();
        prop_assert_eq!(is_admissible_code(code, j), is_admissible(&block));
    }
}

#[test]
fn rotation_differences() {
    // x(n) = n·α: first difference is α, second vanishes.
    let alpha = DigitStream::Quadratic { m: 2, bits: None }
        .binary(200)
        .unwrap();
    let n: Vec<i64> = (0..50).collect();
    let x = scalar_sequence(
        &IntegerSequence::from_i64s(&n),
        &alpha,
        64,
        DEFAULT_GUARD_BITS,
    )
    .unwrap();
    let d1 = iterated_difference(&x, 1).unwrap();
    let a = d1.mantissa(0).clone();
    let modulus = x.modulus();
    for m in d1.mantissas() {
        assert!(torus_distance(m, &a, &modulus) <= BigUint::from(2u32));
    }
    let d2 = iterated_difference(&x, 2).unwrap();
    for m in d2.mantissas() {
        assert!(torus_distance(m, &BigUint::from(0u32), &modulus) <= BigUint::from(4u32));
    }
}

#[test]
fn quadratic_second_difference() {
    // n²/7 mod 1 has constant second difference 2/7.
    let seventh = DigitStream::Rational {
        num: 1,
        den: 7,
        base: 2,
    }
    .binary(300)
    .unwrap();
    let sq: Vec<i64> = (0..60).map(|n| n * n).collect();
    let x = scalar_sequence(
        &IntegerSequence::from_i64s(&sq),
        &seventh,
        64,
        DEFAULT_GUARD_BITS,
    )
    .unwrap();
    let d2 = iterated_difference(&x, 2).unwrap();
    let two_sevenths = (BigUint::from(2u32) << 64u32) / 7u32;
    for m in d2.mantissas() {
        assert!(torus_distance(m, &two_sevenths, &x.modulus()) <= BigUint::from(4u32));
    }
}
