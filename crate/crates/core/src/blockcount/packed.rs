use rayon::prelude::*;

use super::census::{tally, validate, BlockCensus, BlockCounts};
use crate::error::{Error, Result};
use crate::seqcore::SymbolicSequence;

/// Codes up to this many bits are counted in a dense table instead of sorted.
const DENSE_BITS: u32 = 22;

/// Bits per symbol in the packed encoding, `ceil(log2 q)` and at least 1.
pub fn symbol_bits(alphabet_size: u32) -> u32 {
    (32 - (alphabet_size.max(2) - 1).leading_zeros()).max(1)
}

pub(super) fn fits(seq: &SymbolicSequence, j: usize) -> bool {
    symbol_bits(seq.alphabet_size()) as usize * j <= 64
}

/// Window codes in order of position; the first symbol is the most significant.
fn window_codes(symbols: &[u32], j: usize, bits: u32) -> Vec<u64> {
    let width = bits * j as u32;
    let mask = if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    let mut codes = Vec::with_capacity(symbols.len() + 1 - j);
    let mut code = 0u64;
    for (i, &s) in symbols.iter().enumerate() {
        code = ((code << bits) | s as u64) & mask;
        if i + 1 >= j {
            codes.push(code);
        }
    }
    codes
}

fn run_lengths(sorted: &[u64]) -> impl Iterator<Item = u32> + '_ {
    sorted
        .chunk_by(|a, b| a == b)
        .map(|run| run.len().min(u32::MAX as usize) as u32)
}

fn count_codes(codes: Vec<u64>, width: u32, tau: u32) -> (u64, u64) {
    if width <= DENSE_BITS && codes.len() > (1usize << width) / 8 {
        let mut table = vec![0u32; 1usize << width];
        for c in codes {
            table[c as usize] = table[c as usize].saturating_add(1);
        }
        tally(table.into_iter().filter(|&c| c > 0), tau)
    } else {
        let mut codes = codes;
        codes.sort_unstable();
        tally(run_lengths(&codes), tau)
    }
}

pub(super) fn packed_counts(seq: &SymbolicSequence, j: usize, tau: u32) -> BlockCounts {
    let bits = symbol_bits(seq.alphabet_size());
    let width = bits * j as u32;
    let codes = window_codes(seq.symbols(), j, bits);
    let regular: Vec<u64> = codes.iter().step_by(j).copied().collect();
    let (all, effective) = count_codes(codes, width, tau);
    let (count_regular, effective_regular) = count_codes(regular, width, tau);
    BlockCounts {
        j,
        all,
        regular: Some(count_regular),
        effective: Some(effective),
        effective_regular: Some(effective_regular),
    }
}

/// Census with every window packed into a `u64`.
pub fn census_packed(seq: &SymbolicSequence, j_max: usize, tau: u32) -> Result<BlockCensus> {
    validate(seq, j_max, tau)?;
    if !fits(seq, j_max) {
        return Err(Error::InvalidParameter(format!(
            "{} symbols of {} bits do not fit in 64 bits",
            j_max,
            symbol_bits(seq.alphabet_size())
        )));
    }
    let records = (1..=j_max)
        .into_par_iter()
        .map(|j| packed_counts(seq, j, tau))
        .collect();
    Ok(BlockCensus {
        length: seq.len(),
        alphabet_size: seq.alphabet_size(),
        tau: Some(tau),
        records,
    })
}

/// The distinct `J`-blocks of `seq` as sorted packed codes.
///
/// Symbol `i` of a block occupies bits `[b·(J-1-i), b·(J-i))` with `b = symbol_bits(q)`.
pub fn packed_blocks(seq: &SymbolicSequence, j: usize) -> Result<Vec<u64>> {
    validate(seq, j, 1)?;
    if !fits(seq, j) {
        return Err(Error::InvalidParameter(format!(
            "blocks of length {j} do not fit in 64 bits"
        )));
    }
    let bits = symbol_bits(seq.alphabet_size());
    let width = bits * j as u32;
    let codes = window_codes(seq.symbols(), j, bits);
    if width <= DENSE_BITS {
        let mut seen = vec![false; 1usize << width];
        codes.into_iter().for_each(|c| seen[c as usize] = true);
        Ok(seen
            .into_iter()
            .enumerate()
            .filter_map(|(c, s)| s.then_some(c as u64))
            .collect())
    } else {
        let mut codes = codes;
        codes.sort_unstable();
        codes.dedup();
        Ok(codes)
    }
}
