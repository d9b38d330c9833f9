use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A finite sequence over the alphabet `{0, .., q-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicSequence {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl SymbolicSequence {
    pub fn new(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidParameter(
                "alphabet size must be positive".into(),
            ));
        }
        if symbols.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((position, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet_size)
        {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol: symbol as u64,
                alphabet: alphabet_size as u64,
            });
        }
        Ok(Self {
            symbols,
            alphabet_size,
        })
    }

    /// Encodes arbitrary ordered values by their rank among the distinct values present.
    ///
    /// The alphabet size is the number of distinct values, so the encoding is a bijection
    /// between values and symbols and preserves every block count.
    pub fn from_values<T: Ord + Clone>(values: &[T]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut distinct: Vec<T> = values.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let alphabet = u32::try_from(distinct.len())
            .map_err(|_| Error::Resource("more than 2^32 distinct values".into()))?;
        let symbols = values
            .iter()
            .map(|v| distinct.binary_search(v).expect("value present") as u32)
            .collect();
        Self::new(symbols, alphabet)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of distinct symbols that actually occur.
    pub fn support_size(&self) -> usize {
        let mut seen = vec![false; self.alphabet_size as usize];
        self.symbols.iter().for_each(|&s| seen[s as usize] = true);
        seen.into_iter().filter(|&b| b).count()
    }
}

/// A finite sequence of arbitrary-precision integers, `a(n)`, `c(n)` or `Δa(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntegerSequence {
    values: Vec<BigInt>,
}

impl IntegerSequence {
    pub fn new(values: Vec<BigInt>) -> Self {
        Self { values }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Forward difference `Δa(n) = a(n+1) - a(n)`; one element shorter.
    pub fn difference(&self) -> IntegerSequence {
        Self::new(self.values.windows(2).map(|w| &w[1] - &w[0]).collect())
    }

    /// `sup |a(n)|` over the sequence, zero when empty.
    pub fn max_abs(&self) -> BigInt {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// The values as `i64`, if all of them fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.values.iter().map(|v| v.to_i64()).collect()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }
}

/// Values on the grid `{0, 1/N, .., (N-1)/N}`, stored as grid indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantizedSequence {
    levels: Vec<u64>,
    grid: u64,
}

impl QuantizedSequence {
    pub fn new(levels: Vec<u64>, grid: u64) -> Result<Self> {
        if grid == 0 {
            return Err(Error::InvalidParameter("grid size must be positive".into()));
        }
        if let Some((position, &level)) = levels.iter().enumerate().find(|(_, &l)| l >= grid) {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol: level,
                alphabet: grid,
            });
        }
        Ok(Self { levels, grid })
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn grid(&self) -> u64 {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn value(&self, n: usize) -> f64 {
        self.levels[n] as f64 / self.grid as f64
    }

    /// The grid indices as a symbolic sequence over an alphabet of size `N`.
    pub fn to_symbolic(&self) -> Result<SymbolicSequence> {
        let grid = u32::try_from(self.grid)
            .map_err(|_| Error::Resource(format!("grid {} exceeds 2^32 symbols", self.grid)))?;
        SymbolicSequence::new(self.levels.iter().map(|&l| l as u32).collect(), grid)
    }
}
