use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::torus::mantissa_to_f64;
use super::{difference, quantize, torus_distance, QuantizedSequence, TorusSequence};
use crate::error::{Error, Result};

/// Output of [`reconstruct`]: both sequences live on the grid `N²`.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// Rebuilt approximation of `x` from anchors and quantized differences.
    pub g: QuantizedSequence,
    /// Nearest-grid quantization of `x(n+d) - x(n)`.
    pub f: QuantizedSequence,
    pub d: usize,
    pub n: u64,
    /// `sup_n |g(n) - x(n)|` under torus distance.
    pub sup_error: f64,
}

impl Reconstruction {
    /// `2/N`, the guaranteed bound on [`Self::sup_error`].
    pub fn error_bound(&self) -> f64 {
        2.0 / self.n as f64
    }
}

/// Rebuilds `x` on the grid `N²` from its quantized `d`-differences.
///
/// Positions `n ≡ r (mod dN)`, `0 <= r < d`, are anchors and take `floor(x(n)·N²)`.
/// Every other position is its anchor plus the running sum of the quantized differences
/// along its residue class, so `g(n) = g(n-d) + f(n-d) mod N²`. The sup error is checked
/// against `2/N` exactly before returning.
pub fn reconstruct(x: &TorusSequence, d: usize, n: u64) -> Result<Reconstruction> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidParameter("d and N must be positive".into()));
    }
    if n < d as u64 {
        return Err(Error::InvalidParameter(format!(
            "N = {n} must be at least d = {d}"
        )));
    }
    let grid = n
        .checked_mul(n)
        .ok_or_else(|| Error::InvalidParameter(format!("N = {n} too large")))?;
    let period = d
        .checked_mul(n as usize)
        .ok_or_else(|| Error::InvalidParameter("d·N overflows".into()))?;
    if x.len() <= period {
        return Err(Error::TooShort {
            needed: period,
            got: x.len(),
        });
    }

    let f = quantize(&difference(x, d)?, grid)?;
    let precision = x.precision();
    let mut levels = Vec::with_capacity(x.len());
    for pos in 0..x.len() {
        let level = if pos % period < d {
            ((x.mantissa(pos) * grid) >> precision)
                .to_u64()
                .expect("floor below N²")
        } else {
            (levels[pos - d] + f.levels()[pos - d]) % grid
        };
        levels.push(level);
    }
    let g = QuantizedSequence::new(levels, grid)?;

    // |g/N² - m/2^P| <= 2/N  <=>  dist(g·2^P, m·N²) <= 2N·2^P  on the circle of size N²·2^P.
    let modulus = BigUint::from(grid) << precision;
    let bound = BigUint::from(2 * n) << precision;
    let mut worst = BigUint::default();
    for (pos, &level) in g.levels().iter().enumerate() {
        let lhs = BigUint::from(level) << precision;
        let rhs = x.mantissa(pos) * grid;
        let dist = torus_distance(&lhs, &rhs, &modulus);
        if dist > bound {
            return Err(Error::InvariantViolation(format!(
                "reconstruction error at position {pos} exceeds 2/{n}"
            )));
        }
        worst = worst.max(dist);
    }
    let sup_error = mantissa_to_f64(&worst, precision) / grid as f64;
    Ok(Reconstruction {
        g,
        f,
        d,
        n,
        sup_error,
    })
}
