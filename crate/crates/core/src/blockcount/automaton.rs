use super::census::{validate, BlockCensus, BlockCounts};
use crate::error::Result;
use crate::seqcore::SymbolicSequence;

const NONE: u32 = u32::MAX;

/// Suffix automaton over dense symbols.
///
/// Transitions are kept per state in a small array sorted by symbol.
#[derive(Clone, Debug)]
pub struct SuffixAutomaton {
    len: Vec<u32>,
    link: Vec<u32>,
    next: Vec<Vec<(u32, u32)>>,
    last: u32,
}

impl SuffixAutomaton {
    pub fn build(symbols: &[u32]) -> Self {
        let cap = 2 * symbols.len().max(1);
        let mut sam = SuffixAutomaton {
            len: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            next: Vec::with_capacity(cap),
            last: 0,
        };
        sam.push_state(0, NONE, Vec::new());
        for &s in symbols {
            sam.extend(s);
        }
        sam
    }

    pub fn state_count(&self) -> usize {
        self.len.len()
    }

    fn push_state(&mut self, len: u32, link: u32, next: Vec<(u32, u32)>) -> u32 {
        self.len.push(len);
        self.link.push(link);
        self.next.push(next);
        (self.len.len() - 1) as u32
    }

    fn transition(&self, state: u32, symbol: u32) -> Option<u32> {
        let edges = &self.next[state as usize];
        edges
            .binary_search_by_key(&symbol, |&(c, _)| c)
            .ok()
            .map(|i| edges[i].1)
    }

    fn set_transition(&mut self, state: u32, symbol: u32, target: u32) {
        let edges = &mut self.next[state as usize];
        match edges.binary_search_by_key(&symbol, |&(c, _)| c) {
            Ok(i) => edges[i].1 = target,
            Err(i) => edges.insert(i, (symbol, target)),
        }
    }

    fn extend(&mut self, symbol: u32) {
        let cur = self.push_state(self.len[self.last as usize] + 1, NONE, Vec::new());
        let mut p = self.last;
        while p != NONE && self.transition(p, symbol).is_none() {
            self.set_transition(p, symbol, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.transition(p, symbol).unwrap();
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.push_state(
                    self.len[p as usize] + 1,
                    self.link[q as usize],
                    self.next[q as usize].clone(),
                );
                while p != NONE && self.transition(p, symbol) == Some(q) {
                    self.set_transition(p, symbol, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
    }

    /// Number of distinct factors of each length `1..=j_max`.
    ///
    /// A state covers the factor lengths `(len(link), len]`; a difference array sums them.
    pub fn factor_counts(&self, j_max: usize) -> Vec<u64> {
        let mut diff = vec![0i64; j_max + 2];
        for state in 1..self.len.len() {
            let lo = self.len[self.link[state] as usize] as usize + 1;
            let hi = (self.len[state] as usize).min(j_max);
            if lo <= hi {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        let mut counts = Vec::with_capacity(j_max);
        let mut running = 0i64;
        for d in &diff[1..=j_max] {
            running += d;
            counts.push(running as u64);
        }
        counts
    }
}

/// Dense remap of the symbols that occur, preserving order.
fn remap(seq: &SymbolicSequence) -> Vec<u32> {
    let mut index = vec![u32::MAX; seq.alphabet_size() as usize];
    let mut present: Vec<u32> = seq.symbols().to_vec();
    present.sort_unstable();
    present.dedup();
    for (i, &s) in present.iter().enumerate() {
        index[s as usize] = i as u32;
    }
    seq.symbols().iter().map(|&s| index[s as usize]).collect()
}

/// All-blocks census from a suffix automaton; only `count_all` is populated.
pub fn census_automaton(seq: &SymbolicSequence, j_max: usize) -> Result<BlockCensus> {
    validate(seq, j_max, 1)?;
    let sam = SuffixAutomaton::build(&remap(seq));
    let records = sam
        .factor_counts(j_max)
        .into_iter()
        .enumerate()
        .map(|(i, all)| BlockCounts {
            j: i + 1,
            all,
            regular: None,
            effective: None,
            effective_regular: None,
        })
        .collect();
    Ok(BlockCensus {
        length: seq.len(),
        alphabet_size: seq.alphabet_size(),
        tau: None,
        records,
    })
}
