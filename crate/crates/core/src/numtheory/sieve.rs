use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::seqcore::{IntegerSequence, SymbolicSequence};

/// `μ(n)` for `0 <= n <= limit`, with `μ(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    mu: Vec<i8>,
}

impl MobiusTable {
    pub fn limit(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn mu(&self, n: usize) -> i8 {
        self.mu[n]
    }

    pub fn values(&self) -> &[i8] {
        &self.mu
    }

    /// `Σ_{1 <= n <= m} μ(n)`.
    pub fn mertens(&self, m: usize) -> i64 {
        self.mu[..=m].iter().map(|&v| v as i64).sum()
    }

    /// Square-free numbers `1 <= n <= limit` in increasing order.
    pub fn squarefree_numbers(&self) -> Vec<u64> {
        self.mu
            .iter()
            .enumerate()
            .filter_map(|(n, &m)| (m != 0).then_some(n as u64))
            .collect()
    }

    /// `μ²(n)` for `n = 1..=limit` as a binary sequence.
    pub fn squarefree_indicator(&self) -> SymbolicSequence {
        SymbolicSequence::new(self.mu[1..].iter().map(|&m| (m != 0) as u32).collect(), 2)
            .expect("limit >= 1")
    }
}

/// Linear sieve for `μ` on `[0, limit]`.
pub fn mobius_sieve(limit: usize) -> Result<MobiusTable> {
    if limit == 0 {
        return Err(Error::InvalidParameter(
            "sieve limit must be at least 1".into(),
        ));
    }
    let size = limit
        .checked_add(1)
        .ok_or_else(|| Error::Resource(format!("sieve limit {limit}")))?;
    let mut mu: Vec<i8> = Vec::new();
    let mut composite: Vec<bool> = Vec::new();
    mu.try_reserve_exact(size)
        .and_then(|_| composite.try_reserve_exact(size))
        .map_err(|e| Error::Resource(format!("sieve of size {size}: {e}")))?;
    mu.resize(size, 0);
    composite.resize(size, false);
    mu[1] = 1;
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let Some(ip) = i.checked_mul(p).filter(|&ip| ip <= limit) else {
                break;
            };
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    Ok(MobiusTable { mu })
}

/// All square-free `m <= limit`, increasing.
pub fn squarefree_enumerate(limit: usize) -> Result<IntegerSequence> {
    let table = mobius_sieve(limit)?;
    Ok(IntegerSequence::new(
        table
            .squarefree_numbers()
            .into_iter()
            .map(BigInt::from)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = mobius_sieve(30).unwrap();
        assert_eq!(t.mu(0), 0);
        assert_eq!(t.mu(1), 1);
        assert_eq!(t.mu(2), -1);
        assert_eq!(t.mu(6), 1);
        assert_eq!(t.mu(12), 0);
        assert_eq!(t.mu(30), -1);
    }

    #[test]
    fn first_squarefree_numbers() {
        let q = squarefree_enumerate(12).unwrap().to_i64s().unwrap();
        assert_eq!(&q[..6], &[1, 2, 3, 5, 6, 7]);
        assert!(!q.contains(&4) && !q.contains(&8) && !q.contains(&9));
    }

    #[test]
    fn zero_limit_rejected() {
        assert!(mobius_sieve(0).is_err());
    }
}
