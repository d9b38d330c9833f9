use crate::error::{Error, Result};

/// Largest block length for the exhaustive admissible count.
pub const MAX_EXHAUSTIVE_J: usize = 24;

pub fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n)
        .filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

fn square_moduli(len: usize) -> Vec<usize> {
    primes_up_to(len)
        .into_iter()
        .map(|p| p * p)
        .take_while(|&m| m <= len)
        .collect()
}

/// True iff the support of `block` misses a residue class mod `p²` for every prime `p`.
///
/// Only primes with `p² <= len` need checking: fewer than `p²` positions cannot cover
/// `p²` classes.
pub fn is_admissible(block: &[u8]) -> bool {
    square_moduli(block.len()).into_iter().all(|m| {
        let mut covered = vec![false; m];
        block
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .for_each(|(i, _)| covered[i % m] = true);
        covered.iter().any(|&c| !c)
    })
}

/// [`is_admissible`] for a packed binary block: position `i` is bit `j-1-i` of `code`.
pub fn is_admissible_code(code: u64, j: usize) -> bool {
    square_moduli(j).into_iter().all(|m| {
        let mut covered = 0u64;
        for i in 0..j {
            if code >> (j - 1 - i) & 1 == 1 {
                covered |= 1 << (i % m);
            }
        }
        covered != (1u64 << m) - 1
    })
}

/// Exact number of admissible 0/1 blocks of length `J`.
///
/// Depth-first over positions with the residue coverage of each `p²` carried along; a
/// prefix that already covers some `p²` is cut together with its whole subtree.
pub fn count_admissible(j: usize) -> Result<u64> {
    if j == 0 {
        return Err(Error::InvalidParameter(
            "block length must be positive".into(),
        ));
    }
    if j > MAX_EXHAUSTIVE_J {
        return Err(Error::Refused {
            requested: j,
            max: MAX_EXHAUSTIVE_J,
        });
    }
    let moduli = square_moduli(j);
    let full: Vec<u64> = moduli.iter().map(|&m| (1u64 << m) - 1).collect();
    let mut coverage = vec![0u64; moduli.len()];
    Ok(count_from(0, j, &moduli, &full, &mut coverage))
}

fn count_from(pos: usize, j: usize, moduli: &[usize], full: &[u64], coverage: &mut [u64]) -> u64 {
    if pos == j {
        return 1;
    }
    // Position left empty.
    let mut total = count_from(pos + 1, j, moduli, full, coverage);
    // Position filled.
    let saved: Vec<u64> = coverage.to_vec();
    let mut blocked = false;
    for (k, &m) in moduli.iter().enumerate() {
        coverage[k] |= 1 << (pos % m);
        blocked |= coverage[k] == full[k];
    }
    if !blocked {
        total += count_from(pos + 1, j, moduli, full, coverage);
    }
    coverage.copy_from_slice(&saved);
    total
}
