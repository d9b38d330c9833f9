use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, ToPrimitive};

use super::QuantizedSequence;
use crate::error::{Error, Result};

/// A finite sequence in `[0, 1)` held as `P`-bit dyadic fixed point.
///
/// Element `n` has value `mantissa(n) / 2^P`; arithmetic on values is taken mod 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSequence {
    mantissas: Vec<BigUint>,
    precision: u32,
}

impl TorusSequence {
    pub fn new(mantissas: Vec<BigUint>, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidParameter("precision must be positive".into()));
        }
        if mantissas.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(position) = mantissas.iter().position(|m| m.bits() > precision as u64) {
            return Err(Error::MantissaOutOfRange {
                position,
                precision,
            });
        }
        Ok(Self {
            mantissas,
            precision,
        })
    }

    /// Rounds each value (taken mod 1) down to the `P`-bit grid.
    ///
    /// `f64` values are dyadic, so for `P <= 1000` the conversion is exact up to the final
    /// truncation.
    pub fn from_f64s(values: &[f64], precision: u32) -> Result<Self> {
        if precision == 0 || precision > 1000 {
            return Err(Error::InvalidParameter(format!(
                "precision {precision} outside 1..=1000 for f64 input"
            )));
        }
        let modulus = BigUint::one() << precision;
        let mantissas = values
            .iter()
            .map(|&v| {
                if !v.is_finite() {
                    return Err(Error::InvalidParameter(format!("non-finite value {v}")));
                }
                let frac = v - v.floor();
                let scaled = (frac * 2f64.powi(precision as i32)).floor();
                let m = BigUint::from_f64(scaled).unwrap_or_default();
                Ok(m % &modulus)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(mantissas, precision)
    }

    pub fn mantissas(&self) -> &[BigUint] {
        &self.mantissas
    }

    pub fn mantissa(&self, n: usize) -> &BigUint {
        &self.mantissas[n]
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.mantissas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mantissas.is_empty()
    }

    pub fn modulus(&self) -> BigUint {
        BigUint::one() << self.precision
    }

    /// Approximate value of element `n` as `f64`.
    pub fn value(&self, n: usize) -> f64 {
        mantissa_to_f64(&self.mantissas[n], self.precision)
    }
}

pub(crate) fn mantissa_to_f64(m: &BigUint, precision: u32) -> f64 {
    let bits = m.bits();
    if bits <= 64 {
        m.to_u64().unwrap() as f64 / 2f64.powi(precision as i32)
    } else {
        let shift = bits - 64;
        let top = (m >> shift).to_u64().unwrap() as f64;
        top * 2f64.powi(shift as i32 - precision as i32)
    }
}

/// Torus distance `min(|u - v|, M - |u - v|)` between two residues mod `M`.
pub fn torus_distance(u: &BigUint, v: &BigUint, modulus: &BigUint) -> BigUint {
    let diff = if u >= v { u - v } else { v - u };
    let wrapped = modulus - &diff;
    diff.min(wrapped)
}

fn sub_mod(a: &BigUint, b: &BigUint, modulus: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        modulus - b + a
    }
}

/// `x_d(n) = x(n+d) - x(n) mod 1`, exact in fixed point.
pub fn difference(x: &TorusSequence, d: usize) -> Result<TorusSequence> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "difference step must be positive".into(),
        ));
    }
    if d >= x.len() {
        return Err(Error::EmptyOutput {
            len: x.len(),
            shift: d,
        });
    }
    let modulus = x.modulus();
    let mantissas = x
        .mantissas
        .iter()
        .zip(&x.mantissas[d..])
        .map(|(lo, hi)| sub_mod(hi, lo, &modulus))
        .collect();
    Ok(TorusSequence {
        mantissas,
        precision: x.precision,
    })
}

/// `Δ^k x`: `k` successive first differences.
pub fn iterated_difference(x: &TorusSequence, k: usize) -> Result<TorusSequence> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "difference order must be positive".into(),
        ));
    }
    if k >= x.len() {
        return Err(Error::EmptyOutput {
            len: x.len(),
            shift: k,
        });
    }
    let mut current = difference(x, 1)?;
    for _ in 1..k {
        current = difference(&current, 1)?;
    }
    Ok(current)
}

/// Nearest point of `{0, 1/N, .., (N-1)/N}` under torus distance.
///
/// Exact ties go to the lower index; the tie between `(N-1)/N` and `0` goes to `0`.
pub fn quantize(x: &TorusSequence, grid: u64) -> Result<QuantizedSequence> {
    if grid < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid {grid} must be at least 2"
        )));
    }
    let precision = x.precision;
    let half = BigUint::one() << (precision - 1);
    let mask = (BigUint::one() << precision) - 1u32;
    let levels = x
        .mantissas
        .iter()
        .map(|m| {
            // m·N = q·2^P + r; the candidates are q and q+1 (mod N).
            let scaled = m * grid;
            let q = (&scaled >> precision).to_u64().expect("q < N");
            let r = &scaled & &mask;
            let up = (q + 1) % grid;
            match r.cmp(&half) {
                std::cmp::Ordering::Less => q,
                std::cmp::Ordering::Greater => up,
                std::cmp::Ordering::Equal => q.min(up),
            }
        })
        .collect();
    QuantizedSequence::new(levels, grid)
}
