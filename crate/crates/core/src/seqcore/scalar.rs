use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::{torus_distance, IntegerSequence, SymbolicSequence, TorusSequence};
use crate::error::{Error, Result};

/// Guard bits added beyond `bitlen(a) + P` when forming `a·x mod 1`.
pub const DEFAULT_GUARD_BITS: u32 = 32;

/// A finite binary expansion `x = Σ bits[i] · 2^-(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDigits {
    bits: Vec<u8>,
}

impl BinaryDigits {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(position) = bits.iter().position(|&b| b > 1) {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol: bits[position] as u64,
                alphabet: 2,
            });
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The integer whose big-endian binary digits are `bits[start..start + len]`.
    pub fn window_int(&self, start: usize, len: usize) -> Result<BigUint> {
        let end = start + len;
        if end > self.bits.len() {
            return Err(Error::InsufficientPrecision {
                needed: end,
                available: self.bits.len(),
            });
        }
        Ok(pack_bits(&self.bits[start..end]))
    }
}

fn pack_bits(bits: &[u8]) -> BigUint {
    // Little-endian u32 limbs from big-endian bits.
    let mut limbs = vec![0u32; bits.len().div_ceil(32)];
    for (i, &b) in bits.iter().rev().enumerate() {
        if b == 1 {
            limbs[i / 32] |= 1 << (i % 32);
        }
    }
    BigUint::new(limbs)
}

/// Number of digits of `x` needed to form `a·x mod 1` to `P` bits.
pub fn required_digits(a: &BigUint, precision: u32, guard: u32) -> usize {
    a.bits() as usize + precision as usize + guard as usize
}

fn power_of_two_exponent(a: &BigUint) -> Option<u64> {
    let tz = a.trailing_zeros()?;
    (a.bits() == tz + 1).then_some(tz)
}

/// `frac(a·x)` as a `P`-bit mantissa.
///
/// Multiplies `a` by the integer `X` formed from the first `K = bitlen(a) + P + G`
/// digits of `x` and keeps bits `[K-P, K)` of the product. The result is below the
/// true value by less than `2^-P (1 + 2^-G)`.
pub fn mul_mod1(a: &BigUint, x: &BinaryDigits, precision: u32, guard: u32) -> Result<BigUint> {
    if precision == 0 {
        return Err(Error::InvalidParameter("precision must be positive".into()));
    }
    let needed = required_digits(a, precision, guard);
    if needed > x.len() {
        return Err(Error::InsufficientPrecision {
            needed,
            available: x.len(),
        });
    }
    if a.is_zero() {
        return Ok(BigUint::zero());
    }
    if let Some(k) = power_of_two_exponent(a) {
        // Multiplying by 2^k shifts the expansion left by k places.
        return x.window_int(k as usize, precision as usize);
    }
    let prefix = x.window_int(0, needed)?;
    Ok(frac_bits(a, &prefix, needed, precision))
}

fn frac_bits(a: &BigUint, prefix: &BigUint, prefix_len: usize, precision: u32) -> BigUint {
    let product = a * prefix;
    let mask = (BigUint::one() << precision) - 1u32;
    (product >> (prefix_len - precision as usize)) & mask
}

fn reflect(m: BigUint, precision: u32) -> BigUint {
    if m.is_zero() {
        m
    } else {
        (BigUint::one() << precision) - m
    }
}

/// `a(n)·x mod 1` element-wise. Negative `a(n)` are evaluated as `-(|a(n)|·x) mod 1`.
pub fn scalar_sequence(
    a: &IntegerSequence,
    x: &BinaryDigits,
    precision: u32,
    guard: u32,
) -> Result<TorusSequence> {
    if a.is_empty() {
        return Err(Error::EmptySequence);
    }
    let max_bits = a.values().iter().map(|v| v.bits()).max().unwrap_or(0);
    let needed = max_bits as usize + precision as usize + guard as usize;
    if needed > x.len() {
        return Err(Error::InsufficientPrecision {
            needed,
            available: x.len(),
        });
    }
    // One shared prefix; shorter prefixes are its high bits.
    let full = x.window_int(0, needed)?;
    let mantissas = a
        .values()
        .iter()
        .map(|v| {
            let (sign, magnitude) = v.clone().into_parts();
            let m = if magnitude.is_zero() {
                BigUint::zero()
            } else if let Some(k) = power_of_two_exponent(&magnitude) {
                x.window_int(k as usize, precision as usize)?
            } else {
                let k = required_digits(&magnitude, precision, guard);
                let prefix = &full >> (needed - k);
                frac_bits(&magnitude, &prefix, k, precision)
            };
            Ok(if sign == Sign::Minus {
                reflect(m, precision)
            } else {
                m
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TorusSequence::new(mantissas, precision)
}

/// Symbolic encoding of `d(n)·x mod 1` for an integer sequence `d` with few values.
///
/// Each distinct value `j` is sent to `j·x mod 1`; symbols are ranks of those torus values.
/// Fails if two distinct `j` land on the same `P`-bit value, in which case `x` is not
/// distinguishable from a rational at this precision.
pub fn encode_scaled(
    d: &IntegerSequence,
    x: &BinaryDigits,
    precision: u32,
) -> Result<SymbolicSequence> {
    if d.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut distinct: Vec<BigInt> = d.values().to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let table = IntegerSequence::new(distinct.clone());
    let images = scalar_sequence(&table, x, precision, DEFAULT_GUARD_BITS)?;
    let mut sorted: Vec<&BigUint> = images.mantissas().iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    // Each image is off by less than one unit in the last place (in either direction once
    // reflected), so points within two units may be the same torus value.
    let modulus = images.modulus();
    let slack = BigUint::from(2u32);
    let close = |u: &BigUint, v: &BigUint| torus_distance(u, v, &modulus) <= slack;
    let collides = sorted.len() != distinct.len()
        || sorted.windows(2).any(|w| close(w[0], w[1]))
        || (sorted.len() > 1 && close(sorted[0], sorted[sorted.len() - 1]));
    if collides {
        return Err(Error::InvariantViolation(format!(
            "{} distinct values do not map to well-separated torus points; \
             x behaves as rational at {} bits",
            distinct.len(),
            precision
        )));
    }
    let symbol_of: Vec<u32> = images
        .mantissas()
        .iter()
        .map(|m| sorted.binary_search(&m).unwrap() as u32)
        .collect();
    let symbols = d
        .values()
        .iter()
        .map(|v| symbol_of[distinct.binary_search(v).unwrap()])
        .collect();
    SymbolicSequence::new(symbols, distinct.len() as u32)
}
