//! Deterministic constructors for the sequence families used by the experiments.

mod digits;
mod families;
mod sarnak;

pub use digits::{prng_stream, quadratic_digits, DigitStream, SplitMix64};
pub use families::{
    base_p_truncation, bounded_difference, cumsum, exm1_increments, exm1_sequence, fibonacci_word,
    geometric, perturbed_geometric, EXM1_MAX_TERMS,
};
pub use sarnak::{sarnak_build, SarnakPair, SarnakSums, PRINTED_TABLE};
