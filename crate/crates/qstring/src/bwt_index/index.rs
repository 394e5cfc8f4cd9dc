//! Sampled suffix array, ISA by LCE-guided binary search, run-boundary
//! pull-back search, and pattern count/locate.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::rlbwt::{encode, internal_text, RlBwt};
use super::shortcut::LfShortcut;
use crate::error::{precondition, Error, Result};
use crate::fingerprint::DynamicLce;
use crate::lz_core::{gallop_max, Factorization};
use crate::oracle_sim::Sym;

/// `⌈√(n/r)⌉` rounded up to a power of two.
pub fn default_tau(n: usize, r: usize) -> usize {
    let ratio = n.div_ceil(r.max(1));
    let mut t = ratio.isqrt();
    if t * t < ratio {
        t += 1;
    }
    t.max(1).next_power_of_two()
}

/// SA values at rows whose text position is `n − mτ` (`n` = length of `X$`),
/// plus the first and last row of every run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledSa {
    pub tau: usize,
    /// Sorted rows carrying a sample.
    pub rows: Vec<usize>,
    /// SA value of each row in `rows`.
    pub values: Vec<usize>,
    /// How many of the samples are text-spaced (the rest are run boundaries).
    pub text_spaced: usize,
}

impl SampledSa {
    pub fn get(&self, row: usize) -> Option<usize> {
        self.rows.binary_search(&row).ok().map(|k| self.values[k])
    }
}

/// Run-length BWT index of one text.
#[derive(Debug, Clone)]
pub struct BwtIndex {
    bwt: RlBwt,
    shortcut: LfShortcut,
    samples: SampledSa,
    lce: DynamicLce,
}

impl BwtIndex {
    /// Index with `τ = default_tau(n, r)`.
    pub fn new(text: &[Sym]) -> Result<Self> {
        let bwt = RlBwt::from_text(text);
        let tau = default_tau(bwt.len(), bwt.run_count());
        Self::assemble(bwt, text, tau)
    }

    pub fn with_tau(text: &[Sym], tau: usize) -> Result<Self> {
        Self::assemble(RlBwt::from_text(text), text, tau)
    }

    /// Index of a factorized text; decompression is free of oracle charges.
    pub fn from_factorization(f: &Factorization, tau: Option<usize>) -> Result<Self> {
        let text = f.decompress()?;
        let bwt = RlBwt::from_text(&text);
        let tau = tau.unwrap_or_else(|| default_tau(bwt.len(), bwt.run_count()));
        Self::assemble(bwt, &text, tau)
    }

    fn assemble(bwt: RlBwt, text: &[Sym], tau: usize) -> Result<Self> {
        let shortcut = LfShortcut::build(&bwt, tau)?;
        let lce = DynamicLce::from_text(&internal_text(text));
        let n = bwt.len();
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n / tau + 2);
        // row 1 holds the sentinel suffix, position n; LF^τ steps τ positions left
        let (mut row, mut pos) = (1usize, n);
        loop {
            pairs.push((row, pos));
            if pos <= tau {
                break;
            }
            row = shortcut.lf_pow(row)?;
            pos -= tau;
        }
        pairs.sort_unstable();
        let text_spaced = SampledSa {
            tau,
            rows: pairs.iter().map(|p| p.0).collect(),
            values: pairs.iter().map(|p| p.1).collect(),
            text_spaced: pairs.len(),
        };
        let mut index = BwtIndex {
            bwt,
            shortcut,
            samples: text_spaced,
            lce,
        };
        let boundary_rows: Vec<usize> = (0..index.bwt.run_count())
            .flat_map(|k| [index.bwt.run_starts()[k], index.bwt.run_end(k)])
            .collect();
        let boundary: Vec<(usize, usize)> =
            crate::par::map(boundary_rows, |r| (r, index.sa_unchecked(r)));
        pairs.extend(boundary);
        pairs.sort_unstable();
        pairs.dedup();
        index.samples.rows = pairs.iter().map(|p| p.0).collect();
        index.samples.values = pairs.iter().map(|p| p.1).collect();
        Ok(index)
    }

    /// Reassembles an index from stored parts.
    pub fn from_parts(
        bwt: RlBwt,
        shortcut: LfShortcut,
        samples: SampledSa,
        text: &[Sym],
    ) -> Result<Self> {
        if text.len() + 1 != bwt.len() {
            return Err(Error::Parse("text length does not match the BWT".into()));
        }
        if samples.rows.len() != samples.values.len() || shortcut.tau() != samples.tau {
            return Err(Error::Parse("inconsistent samples".into()));
        }
        Ok(BwtIndex {
            bwt,
            shortcut,
            samples,
            lce: DynamicLce::from_text(&internal_text(text)),
        })
    }

    pub fn rlbwt(&self) -> &RlBwt {
        &self.bwt
    }

    pub fn shortcut(&self) -> &LfShortcut {
        &self.shortcut
    }

    pub fn samples(&self) -> &SampledSa {
        &self.samples
    }

    pub fn tau(&self) -> usize {
        self.shortcut.tau()
    }

    /// Length of `X$`.
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }

    /// The indexed text without the sentinel.
    pub fn text(&self) -> Vec<Sym> {
        let t = self.lce.text();
        t[..t.len() - 1].iter().map(|&c| c - 1).collect()
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(())
    }

    pub fn lf(&self, i: usize) -> Result<usize> {
        self.bwt.lf(i)
    }

    pub fn lf_pow(&self, i: usize) -> Result<usize> {
        self.shortcut.lf_pow(i)
    }

    /// `SA[i]`, 1-based; `SA[1] = n` is the sentinel suffix.
    pub fn sa(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.sa_unchecked(i))
    }

    fn sa_unchecked(&self, i: usize) -> usize {
        let n = self.len();
        let mut row = i;
        for steps in 0..=n {
            if let Some(v) = self.samples.get(row) {
                return (v + steps - 1) % n + 1;
            }
            row = self.bwt.lf_unchecked(row);
        }
        unreachable!("every row reaches a sample within τ steps")
    }

    /// Longest common prefix of the suffixes of `X$` at 1-based `p`, `q`.
    pub fn lce(&self, p: usize, q: usize) -> Result<usize> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.lce.lce(p - 1, q - 1))
    }

    fn suffix_cmp(&self, p: usize, q: usize) -> Ordering {
        if p == q {
            return Ordering::Equal;
        }
        // the sentinel is unique, so the first mismatch exists
        let l = self.lce.lce(p - 1, q - 1);
        self.lce.sym(p - 1 + l).cmp(&self.lce.sym(q - 1 + l))
    }

    /// `ISA[p]`: binary search over rows comparing suffixes by LCE.
    pub fn isa(&self, p: usize) -> Result<usize> {
        self.check(p)?;
        let (mut lo, mut hi) = (1usize, self.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match self.suffix_cmp(self.sa_unchecked(mid), p) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid - 1,
                Ordering::Equal => return Ok(mid),
            }
        }
        Ok(lo)
    }

    /// Largest `k` such that `LF^j([s..e])` stays a single run for all
    /// `j < k`, together with `[s′..e′] = LF^k([s..e])`. The interval
    /// `[s′..e′]` then contains a row `p > s′` with `BWT[p−1] ≠ BWT[p]`,
    /// unless the chain ran into the start of the text first.
    ///
    /// Each probe of `k` checks `e′ − s′ = e − s` and `LCP([s′..e′]) ≥ k` with
    /// `s′ = ISA[SA[s]−k]`, `e′ = ISA[SA[e]−k]`; exponential search finds the
    /// largest `k` passing.
    pub fn find_run_boundary_pullback(&self, s: usize, e: usize) -> Result<(usize, usize, usize)> {
        self.check(s)?;
        self.check(e)?;
        if s > e {
            return precondition(format!("empty interval [{s}..{e}]"));
        }
        let (ps, pe) = (self.sa_unchecked(s), self.sa_unchecked(e));
        let max_k = ps.min(pe) - 1;
        let image = |k: usize| -> (usize, usize) {
            let s2 = self.isa(ps - k).expect("in range");
            let e2 = self.isa(pe - k).expect("in range");
            (s2, e2)
        };
        let k = gallop_max(max_k, |k| {
            if k == 0 {
                return true;
            }
            let (s2, e2) = image(k);
            e2 >= s2 && e2 - s2 == e - s && self.lce.lce(ps - k - 1, pe - k - 1) >= k
        });
        let (s2, e2) = if k == 0 { (s, e) } else { image(k) };
        Ok((k, s2, e2))
    }

    /// Row range `[sp, ep]` of suffixes prefixed by `pattern`.
    pub fn range(&self, pattern: &[Sym]) -> Result<Option<(usize, usize)>> {
        if pattern.is_empty() {
            return precondition("empty pattern");
        }
        let mut range = (1usize, self.len());
        for &c in pattern.iter().rev() {
            match self.bwt.backward_step(encode(c), range.0, range.1) {
                Some(r) => range = r,
                None => return Ok(None),
            }
        }
        Ok(Some(range))
    }

    pub fn count(&self, pattern: &[Sym]) -> Result<usize> {
        Ok(self.range(pattern)?.map_or(0, |(sp, ep)| ep - sp + 1))
    }

    /// Sorted 1-based text positions of all occurrences.
    pub fn locate(&self, pattern: &[Sym]) -> Result<Vec<usize>> {
        let Some((sp, ep)) = self.range(pattern)? else {
            return Ok(Vec::new());
        };
        let mut out = crate::par::map((sp..=ep).collect(), |row| self.sa_unchecked(row));
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_tau_is_a_power_of_two() {
        assert_eq!(default_tau(100, 100), 1);
        assert_eq!(default_tau(100, 25), 2);
        assert_eq!(default_tau(100, 10), 4);
        assert_eq!(default_tau(1000, 10), 16);
    }

    #[test]
    fn banana_queries() {
        let t: Vec<Sym> = b"banana".iter().map(|&b| b as Sym).collect();
        let idx = BwtIndex::with_tau(&t, 2).unwrap();
        let p: Vec<Sym> = b"ana".iter().map(|&b| b as Sym).collect();
        assert_eq!(idx.count(&p).unwrap(), 2);
        assert_eq!(idx.locate(&p).unwrap(), vec![2, 4]);
        assert_eq!(idx.sa(1).unwrap(), 7);
        assert_eq!(idx.locate(&t).unwrap(), vec![1]);
        assert_eq!(idx.count(&[b'z' as Sym]).unwrap(), 0);
        assert_eq!(idx.text(), t);
    }
}
