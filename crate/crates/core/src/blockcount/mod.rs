//! Distinct-block censuses and finite-`J` entropy estimates.
//!
//! Three engines produce identical `count_all` values:
//!
//! - [`census_naive`]: every window inserted into a hash multiset. The reference.
//! - [`census_packed`]: windows packed into `u64` codes, counted densely or by sorting.
//!   Requires `ceil(log2 q) · J <= 64`.
//! - [`census_automaton`]: a suffix automaton, one pass for all `J` at once.
//!
//! [`census`] picks the packed engine per `J` when it fits and the naive one otherwise.

mod automaton;
mod census;
mod packed;

pub use automaton::{census_automaton, SuffixAutomaton};
pub use census::{
    block_counts, census, census_naive, entropy_curve, quantized_census, BlockCensus, BlockCounts,
    EntropyPoint, GridSymbols,
};
pub use packed::{census_packed, packed_blocks, symbol_bits};
