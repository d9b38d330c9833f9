//! Shared inputs for the benchmarks in `benches/`.

use anqie_core::generators::fibonacci_word;
use anqie_core::{SplitMix64, SymbolicSequence};

pub fn random_sequence(seed: u64, alphabet: u32, len: usize) -> SymbolicSequence {
    SymbolicSequence::new(SplitMix64::digits(seed, alphabet, len), alphabet).unwrap()
}

pub fn fibonacci(len: usize) -> SymbolicSequence {
    fibonacci_word(len).unwrap()
}
