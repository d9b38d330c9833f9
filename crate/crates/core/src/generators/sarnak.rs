use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numtheory::MobiusTable;
use crate::seqcore::IntegerSequence;

/// Zero-sum μ patterns on `(4k+1, 4k+2, 4k+3)` with their `a` values and the published
/// `Δa` values. Only the `a` column is used; `Δa(4k+3)` is re-derived (the fourth
/// row's published value breaks the zero-sum identity).
pub const PRINTED_TABLE: [([i8; 3], [i8; 3], [i8; 3]); 6] = [
    ([-1, 0, 1], [-1, -1, 0], [0, 1, 0]),
    ([-1, 1, 0], [-1, 0, 1], [1, 1, 0]),
    ([0, -1, 1], [0, -1, 0], [-1, 1, 1]),
    ([0, 1, -1], [0, 1, 0], [1, -1, 1]),
    ([1, -1, 0], [1, 0, -1], [-1, -1, 0]),
    ([1, 0, -1], [1, 0, 0], [-1, 0, -1]),
];

/// A bounded `a(n)` correlated with `μ` whose difference `Δa(n) = a(n+1) - a(n)` is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SarnakPair {
    /// `a(0..=N+1)`.
    a: Vec<i8>,
    /// `Δa(0..=N)`.
    delta: Vec<i8>,
}

/// Prefix sums over `1 <= n <= N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SarnakSums {
    pub n: usize,
    pub a_mu: i64,
    pub delta_mu: i64,
    pub abs_mu: u64,
}

impl SarnakPair {
    pub fn limit(&self) -> usize {
        self.delta.len() - 1
    }

    pub fn a(&self) -> &[i8] {
        &self.a
    }

    pub fn delta(&self) -> &[i8] {
        &self.delta
    }

    pub fn a_sequence(&self) -> IntegerSequence {
        IntegerSequence::new(self.a.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn delta_sequence(&self) -> IntegerSequence {
        IntegerSequence::new(self.delta.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Sums at each checkpoint (which must be increasing and `<= limit`).
    pub fn prefix_sums(&self, mu: &MobiusTable, checkpoints: &[usize]) -> Result<Vec<SarnakSums>> {
        if checkpoints.windows(2).any(|w| w[0] > w[1])
            || checkpoints
                .last()
                .is_some_and(|&c| c > self.limit() || c > mu.limit())
        {
            return Err(Error::InvalidParameter(
                "checkpoints must be increasing and within range".into(),
            ));
        }
        let mut out = Vec::with_capacity(checkpoints.len());
        let mut acc = SarnakSums {
            n: 0,
            a_mu: 0,
            delta_mu: 0,
            abs_mu: 0,
        };
        for &c in checkpoints {
            for n in acc.n + 1..=c {
                let m = mu.mu(n) as i64;
                acc.a_mu += self.a[n] as i64 * m;
                acc.delta_mu += self.delta[n] as i64 * m;
                acc.abs_mu += m.unsigned_abs();
            }
            acc.n = c;
            out.push(acc);
        }
        Ok(out)
    }
}

fn block_values(m: [i8; 3]) -> Result<[i8; 3]> {
    let s: i8 = m.iter().sum();
    if m == [0, 0, 0] {
        return Ok([0; 3]);
    }
    if s != 0 {
        return Ok([s.signum(); 3]);
    }
    PRINTED_TABLE
        .iter()
        .find(|row| row.0 == m)
        .map(|row| row.1)
        .ok_or_else(|| Error::InvariantViolation(format!("unexpected μ block {m:?}")))
}

/// The `Δa(4k+3)` that makes `Σ Δa·μ` vanish on the block.
fn closing_step(m: [i8; 3], a: [i8; 3]) -> i8 {
    if m[2] == 0 {
        return 0;
    }
    -((a[1] - a[0]) * m[0] + (a[2] - a[1]) * m[1]) * m[2]
}

/// Builds `a(0..=N+1)` block by block. Needs `μ` up to `4⌊N/4⌋ + 3`.
pub fn sarnak_build(n: usize, mu: &MobiusTable) -> Result<SarnakPair> {
    if n == 0 {
        return Err(Error::InvalidParameter("limit must be positive".into()));
    }
    let blocks = n / 4 + 1;
    let needed = 4 * blocks - 1;
    if mu.limit() < needed {
        return Err(Error::TooShort {
            needed,
            got: mu.limit(),
        });
    }
    let mut a = vec![0i8; 4 * blocks + 1];
    for k in 0..blocks {
        let base = 4 * k;
        let m = [mu.mu(base + 1), mu.mu(base + 2), mu.mu(base + 3)];
        let vals = block_values(m)?;
        let close = vals[2] + closing_step(m, vals);
        if !(-1..=1).contains(&close) {
            return Err(Error::InvariantViolation(format!(
                "a({}) = {close} leaves {{-1, 0, 1}}",
                base + 4
            )));
        }
        a[base + 1..base + 4].copy_from_slice(&vals);
        a[base + 4] = close;

        if m != [0, 0, 0] {
            let dot: i8 = (0..3).map(|j| vals[j] * m[j]).sum();
            let ddot: i8 = (0..3)
                .map(|j| (a[base + j + 2] - a[base + j + 1]) * m[j])
                .sum();
            let support = m.iter().filter(|&&v| v != 0).count() as i8;
            if ddot != 0 || dot < 1 || 3 * dot < support {
                return Err(Error::InvariantViolation(format!(
                    "block {k}: Σ Δa·μ = {ddot}, Σ a·μ = {dot}"
                )));
            }
        }
    }
    a.truncate(n + 2);
    let delta = a.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(SarnakPair { a, delta })
}
