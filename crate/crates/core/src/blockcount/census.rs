use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::packed;
use crate::error::{Error, Result};
use crate::seqcore::{quantize, QuantizedSequence, SymbolicSequence, TorusSequence};

/// Distinct-block counts for one block length.
///
/// `regular`, `effective` and `effective_regular` are `None` when produced by an engine
/// that only counts all blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockCounts {
    pub j: usize,
    pub all: u64,
    pub regular: Option<u64>,
    /// Blocks occurring at least `τ` times.
    pub effective: Option<u64>,
    /// Blocks occurring at least `τ` times at positions `mJ`.
    pub effective_regular: Option<u64>,
}

impl BlockCounts {
    pub fn entropy_all(&self) -> f64 {
        (self.all as f64).ln() / self.j as f64
    }

    pub fn entropy_regular(&self) -> Option<f64> {
        self.regular.map(|r| (r as f64).ln() / self.j as f64)
    }
}

/// Per-length block counts for `J = 1..=J_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCensus {
    pub length: usize,
    pub alphabet_size: u32,
    /// Occurrence threshold for effective blocks; `None` for all-blocks-only censuses.
    pub tau: Option<u32>,
    pub records: Vec<BlockCounts>,
}

impl BlockCensus {
    pub fn j_max(&self) -> usize {
        self.records.len()
    }

    pub fn get(&self, j: usize) -> Option<&BlockCounts> {
        j.checked_sub(1).and_then(|i| self.records.get(i))
    }

    pub fn count_all(&self, j: usize) -> Option<u64> {
        self.get(j).map(|r| r.all)
    }

    pub fn all_counts(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.all).collect()
    }

    /// Checks the nesting inequalities between the four counts and the trivial upper bound
    /// `min(q^J, length - J + 1)`.
    pub fn check_invariants(&self) -> Result<()> {
        for r in &self.records {
            let windows = (self.length - r.j + 1) as u64;
            let alphabet_bound = (self.alphabet_size as u64)
                .checked_pow(r.j as u32)
                .unwrap_or(u64::MAX);
            let fail = |what: &str| Err(Error::InvariantViolation(format!("J = {}: {what}", r.j)));
            if r.all > windows.min(alphabet_bound) || r.all == 0 {
                return fail("count_all outside [1, min(q^J, n - J + 1)]");
            }
            if let Some(reg) = r.regular {
                if reg > r.all {
                    return fail("count_regular > count_all");
                }
                if r.effective_regular.is_some_and(|er| er > reg) {
                    return fail("count_effective_regular > count_regular");
                }
            }
            if r.effective.is_some_and(|e| e > r.all) {
                return fail("count_effective > count_all");
            }
            if self.tau == Some(1) && r.effective != Some(r.all) {
                return fail("tau = 1 but count_effective != count_all");
            }
        }
        Ok(())
    }
}

/// One point of an entropy curve, in nats per symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyPoint {
    pub j: usize,
    pub entropy_all: f64,
    pub entropy_regular: Option<f64>,
}

pub fn entropy_curve(census: &BlockCensus) -> Vec<EntropyPoint> {
    census
        .records
        .iter()
        .map(|r| EntropyPoint {
            j: r.j,
            entropy_all: r.entropy_all(),
            entropy_regular: r.entropy_regular(),
        })
        .collect()
}

pub(super) fn validate(seq: &SymbolicSequence, j_max: usize, tau: u32) -> Result<()> {
    if j_max == 0 {
        return Err(Error::InvalidParameter("J_max must be positive".into()));
    }
    if j_max > seq.len() {
        return Err(Error::TooShort {
            needed: j_max - 1,
            got: seq.len(),
        });
    }
    if tau == 0 {
        return Err(Error::InvalidParameter("tau must be positive".into()));
    }
    Ok(())
}

/// Counts from a multiset of `(block, occurrences)`.
pub(super) fn tally<I: IntoIterator<Item = u32>>(occurrences: I, tau: u32) -> (u64, u64) {
    occurrences
        .into_iter()
        .fold((0, 0), |(n, eff), c| (n + 1, eff + u64::from(c >= tau)))
}

fn naive_counts(symbols: &[u32], j: usize, tau: u32) -> BlockCounts {
    let mut all: FxHashMap<&[u32], u32> = FxHashMap::default();
    for w in symbols.windows(j) {
        *all.entry(w).or_insert(0) += 1;
    }
    let mut regular: FxHashMap<&[u32], u32> = FxHashMap::default();
    for w in symbols.chunks_exact(j) {
        *regular.entry(w).or_insert(0) += 1;
    }
    let (count_all, effective) = tally(all.into_values(), tau);
    let (count_regular, effective_regular) = tally(regular.into_values(), tau);
    BlockCounts {
        j,
        all: count_all,
        regular: Some(count_regular),
        effective: Some(effective),
        effective_regular: Some(effective_regular),
    }
}

/// Exact census by hashing every window of every length.
///
/// Regular blocks are the windows at positions `mJ`; a trailing partial window is dropped.
pub fn census_naive(seq: &SymbolicSequence, j_max: usize, tau: u32) -> Result<BlockCensus> {
    validate(seq, j_max, tau)?;
    let records = (1..=j_max)
        .into_par_iter()
        .map(|j| naive_counts(seq.symbols(), j, tau))
        .collect();
    Ok(BlockCensus {
        length: seq.len(),
        alphabet_size: seq.alphabet_size(),
        tau: Some(tau),
        records,
    })
}

/// Counts for a single block length, choosing the packed engine when it fits.
pub fn block_counts(seq: &SymbolicSequence, j: usize, tau: u32) -> Result<BlockCounts> {
    validate(seq, j, tau)?;
    Ok(if packed::fits(seq, j) {
        packed::packed_counts(seq, j, tau)
    } else {
        naive_counts(seq.symbols(), j, tau)
    })
}

/// Full census using the fastest exact engine for each `J`.
pub fn census(seq: &SymbolicSequence, j_max: usize, tau: u32) -> Result<BlockCensus> {
    validate(seq, j_max, tau)?;
    let records = (1..=j_max)
        .into_par_iter()
        .map(|j| {
            if packed::fits(seq, j) {
                packed::packed_counts(seq, j, tau)
            } else {
                naive_counts(seq.symbols(), j, tau)
            }
        })
        .collect();
    Ok(BlockCensus {
        length: seq.len(),
        alphabet_size: seq.alphabet_size(),
        tau: Some(tau),
        records,
    })
}

/// Anything that can be read as grid indices on `{0, .., N-1}`.
pub trait GridSymbols {
    fn grid_symbols(&self, grid: u64) -> Result<SymbolicSequence>;
}

impl GridSymbols for TorusSequence {
    fn grid_symbols(&self, grid: u64) -> Result<SymbolicSequence> {
        quantize(self, grid)?.to_symbolic()
    }
}

/// Already quantized input is used as is; the grid must match.
impl GridSymbols for QuantizedSequence {
    fn grid_symbols(&self, grid: u64) -> Result<SymbolicSequence> {
        if grid != self.grid() {
            return Err(Error::InvalidParameter(format!(
                "sequence is on grid {}, census requested on grid {grid}",
                self.grid()
            )));
        }
        self.to_symbolic()
    }
}

/// Census of the grid-index sequence of `x` on the grid `N`.
pub fn quantized_census<S: GridSymbols + ?Sized>(
    x: &S,
    grid: u64,
    j_max: usize,
    tau: u32,
) -> Result<BlockCensus> {
    census(&x.grid_symbols(grid)?, j_max, tau)
}
