use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::admissible::{is_admissible, primes_up_to};
use crate::error::{Error, Result};
use crate::seqcore::{mul_mod1, BinaryDigits, DEFAULT_GUARD_BITS};

const FRACTION_BITS: u32 = 64;

/// An open sub-interval `(lo, hi)` of `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl OpenInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&lo) || !(lo < hi && hi <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "({lo}, {hi}) is not a non-empty open sub-interval of (0, 1)"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo < v && v < self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Gaps `d_1..d_J` between consecutive ones of a 0/1 block starting and ending in 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapBlock {
    pub gaps: Vec<u64>,
}

impl GapBlock {
    /// Positions of the ones: `0, d_1, d_1 + d_2, ..`.
    pub fn positions(&self) -> Vec<u64> {
        std::iter::once(0)
            .chain(self.gaps.iter().scan(0u64, |s, &d| {
                *s += d;
                Some(*s)
            }))
            .collect()
    }

    /// `(1, 0^{d_1 - 1}, 1, .., 0^{d_J - 1}, 1)`.
    pub fn support(&self) -> Vec<u8> {
        let positions = self.positions();
        let mut block = vec![0u8; *positions.last().unwrap() as usize + 1];
        positions.iter().for_each(|&p| block[p as usize] = 1);
        block
    }
}

/// Modulus for choosing the `j`-th gap: the product of `p²` over primes with `p² <= j + 1`.
///
/// After the `j`-th gap the support has `j + 1` points, so exactly these squares could be
/// covered. Forcing the new point to `0 mod p²`, a class already present, keeps every
/// such reduction as it was.
pub fn gap_modulus(j: usize) -> u64 {
    primes_up_to(j + 1)
        .into_iter()
        .map(|p| (p * p) as u64)
        .take_while(|&m| m as usize <= j + 1)
        .product()
}

fn frac_times(d: u64, x: &BinaryDigits) -> Result<f64> {
    let m = mul_mod1(&BigUint::from(d), x, FRACTION_BITS, DEFAULT_GUARD_BITS)?;
    Ok(m.to_f64().unwrap() / 2f64.powi(FRACTION_BITS as i32))
}

/// Builds an admissible gap block with `frac(d_j · x)` in the `j`-th interval.
///
/// Each gap is the first member, in increasing order, of the progression
/// `d ≡ -(d_1 + .. + d_{j-1}) (mod gap_modulus(j))` that lands in its interval. At most
/// `max_scan` members are tried per gap.
pub fn gap_block_construct(
    x: &BinaryDigits,
    intervals: &[OpenInterval],
    max_scan: usize,
) -> Result<GapBlock> {
    let mut gaps = Vec::with_capacity(intervals.len());
    let mut sum = 0u64;
    for (idx, interval) in intervals.iter().enumerate() {
        let step = idx + 1;
        let modulus = gap_modulus(step);
        let first = match (modulus - sum % modulus) % modulus {
            0 => modulus,
            r => r,
        };
        let mut found = None;
        for t in 0..max_scan as u64 {
            let d = first + t * modulus;
            if interval.contains(frac_times(d, x)?) {
                found = Some(d);
                break;
            }
        }
        let d = found.ok_or(Error::SearchBudget {
            step,
            budget: max_scan,
        })?;
        gaps.push(d);
        sum += d;
    }
    let block = GapBlock { gaps };

    if !is_admissible(&block.support()) {
        return Err(Error::InvariantViolation(
            "constructed gap block is not admissible".into(),
        ));
    }
    for (j, (&d, interval)) in block.gaps.iter().zip(intervals).enumerate() {
        if !interval.contains(frac_times(d, x)?) {
            return Err(Error::InvariantViolation(format!(
                "gap {} = {d} misses its interval",
                j + 1
            )));
        }
    }
    Ok(block)
}
