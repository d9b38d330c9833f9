//! Möbius sieve, square-free numbers and admissible blocks.

mod admissible;
mod gap_block;
mod sieve;

pub use admissible::{
    count_admissible, is_admissible, is_admissible_code, primes_up_to, MAX_EXHAUSTIVE_J,
};
pub use gap_block::{gap_block_construct, gap_modulus, GapBlock, OpenInterval};
pub use sieve::{mobius_sieve, squarefree_enumerate, MobiusTable};
