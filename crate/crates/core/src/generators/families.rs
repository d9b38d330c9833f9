use num_bigint::{BigInt, BigUint};

use super::digits::{fibonacci_prefix, DigitStream, SplitMix64};
use crate::error::{Error, Result};
use crate::seqcore::{IntegerSequence, QuantizedSequence, SymbolicSequence};

/// Largest number of terms [`exm1_sequence`] will build; `p^n` grows linearly in bits.
pub const EXM1_MAX_TERMS: usize = 4000;

/// The first `n` letters of the Fibonacci word over `{0, 1}`.
pub fn fibonacci_word(n: usize) -> Result<SymbolicSequence> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    SymbolicSequence::new(fibonacci_prefix(n).into_iter().map(u32::from).collect(), 2)
}

/// `f_L(n) = floor(p^L · frac(p^n x))` for `0 <= n < n_max`, computed from the digits of `x`.
///
/// Level `n` is the base-`p` integer spelled by digits `n..n+L`, so it needs
/// `n_max + L - 1` digits and its `J`-blocks correspond one-to-one with the
/// `(L + J - 1)`-blocks of the stream.
pub fn base_p_truncation(stream: &DigitStream, l: u32, n_max: usize) -> Result<QuantizedSequence> {
    if l == 0 || n_max == 0 {
        return Err(Error::InvalidParameter(
            "truncation depth and length must be positive".into(),
        ));
    }
    let p = stream.base() as u64;
    let grid = p
        .checked_pow(l)
        .ok_or_else(|| Error::InvalidParameter(format!("grid {p}^{l} overflows u64")))?;
    let digits = stream.prefix(n_max + l as usize - 1)?;
    let levels = digits
        .windows(l as usize)
        .map(|w| w.iter().fold(0u64, |acc, &d| acc * p + d as u64))
        .collect();
    QuantizedSequence::new(levels, grid)
}

/// Partial sums `a(0) = a0`, `a(n + 1) = a(n) + d(n)`.
pub fn cumsum(d: &IntegerSequence, a0: BigInt) -> IntegerSequence {
    let mut out = Vec::with_capacity(d.len() + 1);
    out.push(a0);
    for step in d.values() {
        let next = out.last().unwrap() + step;
        out.push(next);
    }
    IntegerSequence::new(out)
}

/// `len` pseudo-random increments uniform on `[-bound, bound]`.
pub fn bounded_difference(seed: u64, bound: u32, len: usize) -> IntegerSequence {
    let values = SplitMix64::digits(seed, 2 * bound + 1, len)
        .into_iter()
        .map(|v| BigInt::from(v as i64 - bound as i64))
        .collect();
    IntegerSequence::new(values)
}

/// `p^n` for `0 <= n < n_max`.
pub fn geometric(p: u64, n_max: usize) -> IntegerSequence {
    perturbed_geometric(p, &vec![0; n_max.saturating_sub(1)])
}

/// `a(n) = p^n + c(n)` with `c(0) = 0` and `c(n + 1) - c(n) = increments[n]`.
pub fn perturbed_geometric(p: u64, increments: &[u32]) -> IntegerSequence {
    let p = BigUint::from(p);
    let mut power = BigUint::from(1u32);
    let mut c = 0u64;
    let mut out = Vec::with_capacity(increments.len() + 1);
    out.push(BigInt::from(1));
    for &inc in increments {
        power *= &p;
        c += inc as u64;
        out.push(BigInt::from(&power + c));
    }
    IntegerSequence::new(out)
}

/// Increments `Δc(n)`, pseudo-random digits base `pprime`.
pub fn exm1_increments(pprime: u32, seed: u64, len: usize) -> Vec<u32> {
    SplitMix64::digits(seed, pprime, len)
}

/// `a(n) = p^n + c(n)` with pseudo-random increments base `pprime > p²`.
pub fn exm1_sequence(p: u64, pprime: u32, seed: u64, n_max: usize) -> Result<IntegerSequence> {
    if p < 2 || (pprime as u64) <= p * p {
        return Err(Error::InvalidParameter(format!(
            "need p >= 2 and p' > p², got p = {p}, p' = {pprime}"
        )));
    }
    if n_max == 0 {
        return Err(Error::EmptySequence);
    }
    if n_max > EXM1_MAX_TERMS {
        return Err(Error::Refused {
            requested: n_max,
            max: EXM1_MAX_TERMS,
        });
    }
    Ok(perturbed_geometric(
        p,
        &exm1_increments(pprime, seed, n_max - 1),
    ))
}
