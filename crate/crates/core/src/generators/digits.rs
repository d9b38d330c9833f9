use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Roots;

use crate::error::{Error, Result};
use crate::seqcore::BinaryDigits;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64. Output `i` depends only on `seed + (i + 1)·γ`, so streams support random
/// access.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        Self::mix(self.state)
    }

    /// The `index`-th output of the generator seeded with `seed`.
    pub fn output_at(seed: u64, index: u64) -> u64 {
        Self::mix(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
    }

    /// First `len` outputs reduced mod `base`.
    pub fn digits(seed: u64, base: u32, len: usize) -> Vec<u32> {
        let mut rng = Self::new(seed);
        (0..len)
            .map(|_| (rng.next_u64() % base as u64) as u32)
            .collect()
    }
}

/// A deterministic stream of base-`q` digits with positional access.
///
/// Position 0 is the first digit after the radix point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DigitStream {
    Prng {
        seed: u64,
        base: u32,
    },
    /// The Fibonacci word `0100101001001..`, read as binary digits.
    FibonacciWord,
    /// Binary digits of `frac(√m)`; `bits = None` means unbounded.
    Quadratic {
        m: u64,
        bits: Option<usize>,
    },
    /// Base-`base` digits of `num/den`.
    Rational {
        num: u64,
        den: u64,
        base: u32,
    },
    Constant {
        digit: u8,
        base: u32,
    },
    /// Raw bytes, one digit per byte.
    File {
        base: u32,
        digits: Arc<[u8]>,
    },
}

pub fn prng_stream(seed: u64, base: u32) -> Result<DigitStream> {
    check_base(base)?;
    Ok(DigitStream::Prng { seed, base })
}

/// The first `bits` binary digits of `frac(√m)`.
pub fn quadratic_digits(m: u64, bits: usize) -> Result<DigitStream> {
    if m.sqrt() * m.sqrt() == m {
        return Err(Error::InvalidParameter(format!("{m} is a perfect square")));
    }
    Ok(DigitStream::Quadratic {
        m,
        bits: Some(bits),
    })
}

fn check_base(base: u32) -> Result<()> {
    if !(2..=256).contains(&base) {
        return Err(Error::InvalidParameter(format!(
            "digit base {base} outside 2..=256"
        )));
    }
    Ok(())
}

pub(crate) fn fibonacci_prefix(len: usize) -> Vec<u8> {
    // s_{k+1} = s_k s_{k-1}, the iterates of 0 -> 01, 1 -> 0.
    let mut prev: Vec<u8> = vec![0];
    let mut cur: Vec<u8> = vec![0, 1];
    while cur.len() < len {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = std::mem::replace(&mut cur, next);
    }
    if len == 1 {
        return prev;
    }
    cur.truncate(len);
    cur
}

impl DigitStream {
    pub fn base(&self) -> u32 {
        match self {
            DigitStream::Prng { base, .. }
            | DigitStream::Rational { base, .. }
            | DigitStream::Constant { base, .. }
            | DigitStream::File { base, .. } => *base,
            DigitStream::FibonacciWord | DigitStream::Quadratic { .. } => 2,
        }
    }

    /// Digits available, `None` when unbounded.
    pub fn available(&self) -> Option<usize> {
        match self {
            DigitStream::Quadratic { bits, .. } => *bits,
            DigitStream::File { digits, .. } => Some(digits.len()),
            _ => None,
        }
    }

    /// Reads a file of raw digit bytes, rejecting any byte `>= base`.
    pub fn from_file(path: &Path, base: u32) -> std::io::Result<Result<Self>> {
        let bytes = std::fs::read(path)?;
        Ok(Self::from_bytes(bytes, base))
    }

    pub fn from_bytes(bytes: Vec<u8>, base: u32) -> Result<Self> {
        check_base(base)?;
        if let Some(position) = bytes.iter().position(|&b| b as u32 >= base) {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol: bytes[position] as u64,
                alphabet: base as u64,
            });
        }
        Ok(DigitStream::File {
            base,
            digits: bytes.into(),
        })
    }

    /// The first `len` digits.
    pub fn prefix(&self, len: usize) -> Result<Vec<u8>> {
        if let Some(available) = self.available() {
            if len > available {
                return Err(Error::InsufficientPrecision {
                    needed: len,
                    available,
                });
            }
        }
        Ok(match self {
            DigitStream::Prng { seed, base } => (0..len as u64)
                .map(|i| (SplitMix64::output_at(*seed, i) % *base as u64) as u8)
                .collect(),
            DigitStream::FibonacciWord => fibonacci_prefix(len),
            DigitStream::Quadratic { m, .. } => {
                let root = (BigUint::from(*m) << (2 * len)).sqrt();
                let mut bits = vec![0u8; len];
                for (i, bit) in bits.iter_mut().enumerate() {
                    *bit = root.bit((len - 1 - i) as u64) as u8;
                }
                bits
            }
            DigitStream::Rational { num, den, base } => {
                let (base, den) = (*base as u128, *den as u128);
                let mut rem = *num as u128 % den;
                (0..len)
                    .map(|_| {
                        rem *= base;
                        let d = rem / den;
                        rem %= den;
                        d as u8
                    })
                    .collect()
            }
            DigitStream::Constant { digit, .. } => vec![*digit; len],
            DigitStream::File { digits, .. } => digits[..len].to_vec(),
        })
    }

    /// The first `len` digits as a binary expansion; the stream must be base 2.
    pub fn binary(&self, len: usize) -> Result<BinaryDigits> {
        if self.base() != 2 {
            return Err(Error::InvalidParameter(format!(
                "binary expansion requested from a base-{} stream",
                self.base()
            )));
        }
        BinaryDigits::new(self.prefix(len)?)
    }

    /// Parses `prng:SEED[:BASE]`, `fib`, `sqrt:M[:BITS]`, `rational:P/Q[:BASE]`,
    /// `const:D[:BASE]` or `file:PATH[:BASE]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad digit stream spec '{spec}'"));
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut parts = rest.split(':');
        let mut next_num = |default: Option<u64>| -> Result<u64> {
            match parts.next().filter(|s| !s.is_empty()) {
                Some(s) => s.parse().map_err(|_| bad()),
                None => default.ok_or_else(bad),
            }
        };
        match kind {
            "prng" => {
                let seed = next_num(None)?;
                let base = next_num(Some(2))?;
                prng_stream(seed, base.try_into().map_err(|_| bad())?)
            }
            "fib" | "fibonacci" => Ok(DigitStream::FibonacciWord),
            "sqrt" => {
                let m = next_num(None)?;
                let bits = match parts.next() {
                    Some(b) => Some(b.parse().map_err(|_| bad())?),
                    None => None,
                };
                if m.sqrt() * m.sqrt() == m {
                    return Err(Error::InvalidParameter(format!("{m} is a perfect square")));
                }
                Ok(DigitStream::Quadratic { m, bits })
            }
            "rational" => {
                let (p, q) = rest
                    .split(':')
                    .next()
                    .and_then(|f| f.split_once('/'))
                    .ok_or_else(bad)?;
                let num = p.parse().map_err(|_| bad())?;
                let den: u64 = q.parse().map_err(|_| bad())?;
                let base = rest
                    .split(':')
                    .nth(1)
                    .map(|b| b.parse().map_err(|_| bad()))
                    .transpose()?
                    .unwrap_or(2);
                if den == 0 {
                    return Err(bad());
                }
                check_base(base)?;
                Ok(DigitStream::Rational { num, den, base })
            }
            "const" => {
                let digit = next_num(None)?;
                let base = next_num(Some(2))? as u32;
                check_base(base)?;
                if digit >= base as u64 {
                    return Err(bad());
                }
                Ok(DigitStream::Constant {
                    digit: digit as u8,
                    base,
                })
            }
            "file" => {
                let (path, base) = match rest.rsplit_once(':') {
                    Some((p, b)) if b.parse::<u32>().is_ok() => (p, b.parse().unwrap()),
                    _ => (rest, 2),
                };
                let bytes = std::fs::read(path).map_err(|e| {
                    Error::InvalidParameter(format!("cannot read digit file {path}: {e}"))
                })?;
                Self::from_bytes(bytes, base)
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitStream::Prng { seed, base } => write!(f, "prng:{seed}:{base}"),
            DigitStream::FibonacciWord => write!(f, "fib"),
            DigitStream::Quadratic { m, bits: None } => write!(f, "sqrt:{m}"),
            DigitStream::Quadratic { m, bits: Some(b) } => write!(f, "sqrt:{m}:{b}"),
            DigitStream::Rational { num, den, base } => write!(f, "rational:{num}/{den}:{base}"),
            DigitStream::Constant { digit, base } => write!(f, "const:{digit}:{base}"),
            DigitStream::File { base, digits } => write!(f, "file[{}]:{base}", digits.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_vector() {
        // Published first output for seed 1234567.
        assert_eq!(SplitMix64::new(1234567).next_u64(), 6457827717110365317);
    }

    #[test]
    fn random_access_matches_sequential() {
        let mut rng = SplitMix64::new(99);
        for i in 0..100 {
            assert_eq!(rng.next_u64(), SplitMix64::output_at(99, i));
        }
    }

    #[test]
    fn fibonacci_prefix_matches_morphism() {
        assert_eq!(fibonacci_prefix(10), vec![0, 1, 0, 0, 1, 0, 1, 0, 0, 1]);
        assert_eq!(fibonacci_prefix(1), vec![0]);
        assert_eq!(fibonacci_prefix(2), vec![0, 1]);
    }

    #[test]
    fn sqrt_two_digits() {
        let s = quadratic_digits(2, 64).unwrap();
        assert_eq!(&s.prefix(5).unwrap(), &[0, 1, 1, 0, 1]);
        assert!(s.prefix(64).unwrap().contains(&1));
        assert!(matches!(
            s.prefix(65),
            Err(Error::InsufficientPrecision { .. })
        ));
        assert!(quadratic_digits(4, 10).is_err());
    }

    #[test]
    fn rational_third() {
        let s = DigitStream::parse("rational:1/3").unwrap();
        assert_eq!(s.prefix(6).unwrap(), vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn parse_round_trip() {
        for spec in [
            "prng:7:2",
            "fib",
            "sqrt:3",
            "sqrt:5:100",
            "rational:1/7:10",
            "const:1:2",
        ] {
            assert_eq!(DigitStream::parse(spec).unwrap().to_string(), spec);
        }
        assert!(DigitStream::parse("prng").is_err());
        assert!(DigitStream::parse("sqrt:9").is_err());
        assert!(DigitStream::parse("nope:1").is_err());
    }

    #[test]
    fn byte_digits_are_validated() {
        assert!(DigitStream::from_bytes(vec![0, 1, 2], 2).is_err());
        let s = DigitStream::from_bytes(vec![0, 1, 2], 3).unwrap();
        assert_eq!(s.prefix(3).unwrap(), vec![0, 1, 2]);
        assert!(s.prefix(4).is_err());
    }
}
