//! Entropy estimation for bounded sequences by block counting.
//!
//! The crate is organised in four layers:
//!
//! - [`seqcore`]: symbolic, torus and integer sequences together with the pointwise
//!   operators used throughout (differences, quantization, `a·x mod 1`, reconstruction
//!   of a sequence from its quantized differences).
//! - [`blockcount`]: exact censuses of distinct `J`-blocks and finite-`J` entropy curves,
//!   with a hashing engine, a packed-code engine and a suffix-automaton engine.
//! - [`numtheory`]: Möbius sieve, square-free numbers, admissible blocks and the
//!   admissible gap-block constructor.
//! - [`generators`]: deterministic digit streams and the integer sequence families
//!   the experiments are built from.
//!
//! All entropies are in nats and are finite-`J` estimates `ln |B_J| / J`.

pub mod blockcount;
pub mod error;
pub mod generators;
pub mod numtheory;
pub mod seqcore;

pub use blockcount::{
    census, census_automaton, census_naive, census_packed, entropy_curve, quantized_census,
    BlockCensus, BlockCounts, EntropyPoint,
};
pub use error::{Error, Result};
pub use generators::{DigitStream, SarnakPair, SplitMix64};
pub use numtheory::{GapBlock, MobiusTable};
pub use seqcore::{
    BinaryDigits, IntegerSequence, QuantizedSequence, SymbolicSequence, TorusSequence,
};

/// `ln 2 · 6/π²`, the entropy of the square-free indicator, in nats.
pub const SQUAREFREE_ENTROPY_NATS: f64 =
    6.0 / (std::f64::consts::PI * std::f64::consts::PI) * std::f64::consts::LN_2;
