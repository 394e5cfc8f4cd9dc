//! Run-length encoded BWT of `X$` with rank support over runs.
//!
//! Rows are 1-based. Internally the sentinel is symbol 0 and every input
//! symbol `c` is stored as `c + 1`, so the sentinel is the unique smallest
//! symbol.

use std::collections::{BTreeMap, HashMap};

use crate::error::{precondition, Error, Result};
use crate::lz_core::Factorization;
use crate::oracle_sim::Sym;
use crate::suffix::suffix_array;

/// Internal symbol code of the sentinel.
pub const SENTINEL: u32 = 0;

/// Internal code of an input symbol.
#[inline]
pub fn encode(c: Sym) -> u32 {
    c.checked_add(1)
        .expect("symbol value too large for the sentinel shift")
}

/// Input symbol of an internal code, `None` for the sentinel.
#[inline]
pub fn decode(c: u32) -> Option<Sym> {
    c.checked_sub(1)
}

/// `X` followed by the sentinel, in internal codes.
pub fn internal_text(text: &[Sym]) -> Vec<u32> {
    text.iter()
        .map(|&c| encode(c))
        .chain(std::iter::once(SENTINEL))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct SymbolRuns {
    /// Indices of the runs carrying this symbol.
    runs: Vec<usize>,
    /// Occurrences of the symbol in runs before `runs[t]`.
    before: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RlBwt {
    len: usize,
    runs: Vec<(u32, usize)>,
    starts: Vec<usize>,
    smaller: BTreeMap<u32, usize>,
    by_symbol: HashMap<u32, SymbolRuns>,
}

impl RlBwt {
    /// RL-BWT of `text$` by suffix sorting.
    pub fn from_text(text: &[Sym]) -> Self {
        let t = internal_text(text);
        let sa = suffix_array(&t);
        let n = t.len();
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &p in &sa {
            let c = t[(p + n - 1) % n];
            match runs.last_mut() {
                Some((d, l)) if *d == c => *l += 1,
                _ => runs.push((c, 1)),
            }
        }
        Self::from_internal_runs(runs).expect("runs of a BWT are well formed")
    }

    /// Decompresses a factorization (no oracle access) and builds the RL-BWT.
    pub fn from_factorization(f: &Factorization) -> Result<Self> {
        Ok(Self::from_text(&f.decompress()?))
    }

    /// From runs given as `(symbol or None for the sentinel, length)`.
    pub fn from_runs(runs: &[(Option<Sym>, usize)]) -> Result<Self> {
        Self::from_internal_runs(
            runs.iter()
                .map(|&(c, l)| (c.map_or(SENTINEL, encode), l))
                .collect(),
        )
    }

    fn from_internal_runs(runs: Vec<(u32, usize)>) -> Result<Self> {
        if runs
            .iter()
            .filter(|r| r.0 == SENTINEL)
            .map(|r| r.1)
            .sum::<usize>()
            != 1
        {
            return precondition("the sentinel must occur exactly once");
        }
        if runs.iter().any(|r| r.1 == 0) {
            return precondition("run of length zero");
        }
        if runs.windows(2).any(|w| w[0].0 == w[1].0) {
            return precondition("adjacent runs share a symbol");
        }
        let mut starts = Vec::with_capacity(runs.len());
        let mut pos = 1usize;
        let mut totals: BTreeMap<u32, usize> = BTreeMap::new();
        let mut by_symbol: HashMap<u32, SymbolRuns> = HashMap::new();
        for (k, &(c, l)) in runs.iter().enumerate() {
            starts.push(pos);
            pos += l;
            let total = totals.entry(c).or_insert(0);
            let e = by_symbol.entry(c).or_default();
            e.runs.push(k);
            e.before.push(*total);
            *total += l;
        }
        let mut smaller = BTreeMap::new();
        let mut acc = 0usize;
        for (&c, &cnt) in &totals {
            smaller.insert(c, acc);
            acc += cnt;
        }
        Ok(RlBwt {
            len: pos - 1,
            runs,
            starts,
            smaller,
            by_symbol,
        })
    }

    /// Length of `X$`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Length of `X`.
    pub fn text_len(&self) -> usize {
        self.len - 1
    }

    /// Number of runs `r`.
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    /// Runs as `(symbol, length)`, the sentinel shown as `None`.
    pub fn runs(&self) -> impl Iterator<Item = (Option<Sym>, usize)> + '_ {
        self.runs.iter().map(|&(c, l)| (decode(c), l))
    }

    pub(crate) fn internal_runs(&self) -> &[(u32, usize)] {
        &self.runs
    }

    /// 1-based first row of every run.
    pub fn run_starts(&self) -> &[usize] {
        &self.starts
    }

    /// Expanded BWT.
    pub fn bwt(&self) -> Vec<Option<Sym>> {
        self.runs()
            .flat_map(|(c, l)| std::iter::repeat_n(c, l))
            .collect()
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len,
            });
        }
        Ok(())
    }

    /// Index of the run containing row `i`.
    pub fn run_of(&self, i: usize) -> usize {
        self.starts.partition_point(|&s| s <= i) - 1
    }

    /// End row (inclusive) of run `k`.
    pub fn run_end(&self, k: usize) -> usize {
        self.starts[k] + self.runs[k].1 - 1
    }

    /// Internal symbol at row `i`.
    pub(crate) fn code_at(&self, i: usize) -> u32 {
        self.runs[self.run_of(i)].0
    }

    pub fn symbol_at(&self, i: usize) -> Result<Option<Sym>> {
        self.check(i)?;
        Ok(decode(self.code_at(i)))
    }

    /// Whether `BWT[i−1] ≠ BWT[i]` (row 1 counts as a run start).
    pub fn is_run_start(&self, i: usize) -> bool {
        self.starts.binary_search(&i).is_ok()
    }

    /// Occurrences of internal symbol `c` in rows `1..=i`.
    pub(crate) fn rank(&self, c: u32, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        let Some(sr) = self.by_symbol.get(&c) else {
            return 0;
        };
        let k = self.run_of(i);
        let t = sr.runs.partition_point(|&r| r < k);
        let mut count = if t > 0 {
            sr.before[t - 1] + self.runs[sr.runs[t - 1]].1
        } else {
            0
        };
        if self.runs[k].0 == c {
            count = sr.before[t] + (i - self.starts[k] + 1);
        }
        count
    }

    /// Rows preceding the block of internal symbol `c` in the first column.
    pub(crate) fn smaller(&self, c: u32) -> Option<usize> {
        self.smaller.get(&c).copied()
    }

    /// `LF[i] = ISA[SA[i] − 1]` (cyclically: the sentinel row maps to row 1).
    pub fn lf(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.lf_unchecked(i))
    }

    #[inline]
    pub(crate) fn lf_unchecked(&self, i: usize) -> usize {
        let c = self.code_at(i);
        self.smaller[&c] + self.rank(c, i)
    }

    /// One backward-search step: rows of suffixes starting with `c·P` from
    /// the row range `[sp, ep]` of `P`. `None` when empty.
    pub(crate) fn backward_step(&self, c: u32, sp: usize, ep: usize) -> Option<(usize, usize)> {
        let base = self.smaller(c)?;
        let sp2 = base + self.rank(c, sp - 1) + 1;
        let ep2 = base + self.rank(c, ep);
        (sp2 <= ep2).then_some((sp2, ep2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Vec<Sym> {
        t.bytes().map(Sym::from).collect()
    }

    #[test]
    fn banana_runs() {
        let b = RlBwt::from_text(&s("banana"));
        let runs: Vec<_> = b.runs().collect();
        let a = Some(b'a' as Sym);
        let n = Some(b'n' as Sym);
        let bb = Some(b'b' as Sym);
        assert_eq!(runs, vec![(a, 1), (n, 2), (bb, 1), (None, 1), (a, 2)]);
        assert_eq!(b.run_count(), 5);
        assert_eq!(b.len(), 7);
    }

    #[test]
    fn empty_text_is_one_sentinel_run() {
        let b = RlBwt::from_text(&[]);
        assert_eq!(b.runs().collect::<Vec<_>>(), vec![(None, 1)]);
        assert_eq!(b.lf(1).unwrap(), 1);
        assert!(b.lf(2).is_err());
    }

    #[test]
    fn rejects_malformed_runs() {
        assert!(RlBwt::from_runs(&[(Some(1), 2)]).is_err());
        assert!(RlBwt::from_runs(&[(Some(1), 1), (Some(1), 1), (None, 1)]).is_err());
        assert!(RlBwt::from_runs(&[(Some(1), 0), (None, 1)]).is_err());
    }
}
