//! `LF^τ` in one interval lookup.
//!
//! Level 0 is the run partition: within a run, LF is an order-preserving
//! shift. Level `ℓ+1` pulls the level-`ℓ` partition back through
//! `LF^{2^ℓ}`: each level-`ℓ` run is split where its image crosses a
//! level-`ℓ` run boundary, and each piece gets a fresh symbol naming the pair
//! (own symbol, symbol of the image's run). Adjacent pieces with the same
//! fresh symbol are merged; equal symbols mean equal preceding strings of
//! length `2^{ℓ+1}`, so the shift stays order preserving across the merge.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::rlbwt::RlBwt;
use crate::error::{precondition, Error, Result};

/// One partition of `[1..n]` into maximal intervals of constant symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    /// 1-based interval starts, increasing, the first one 1.
    pub starts: Vec<usize>,
    /// `LF^{2^ℓ}` of each interval start.
    pub maps: Vec<usize>,
    /// Replacement symbol of each interval.
    pub syms: Vec<u32>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    fn index_of(&self, i: usize) -> usize {
        self.starts.partition_point(|&s| s <= i) - 1
    }

    fn end(&self, k: usize, n: usize) -> usize {
        self.starts.get(k + 1).map_or(n, |&s| s - 1)
    }

    #[inline]
    fn apply(&self, i: usize) -> usize {
        let k = self.index_of(i);
        self.maps[k] + (i - self.starts[k])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LfShortcut {
    n: usize,
    tau: usize,
    levels: Vec<Level>,
}

impl LfShortcut {
    /// Levels `0..=log₂ τ`.
    pub fn build(bwt: &RlBwt, tau: usize) -> Result<Self> {
        if !tau.is_power_of_two() {
            return precondition(format!("tau = {tau} must be a power of two"));
        }
        let n = bwt.len();
        let mut level = Level {
            starts: bwt.run_starts().to_vec(),
            maps: bwt
                .run_starts()
                .iter()
                .map(|&s| bwt.lf_unchecked(s))
                .collect(),
            syms: bwt.internal_runs().iter().map(|r| r.0).collect(),
        };
        let mut levels = Vec::with_capacity(tau.trailing_zeros() as usize + 1);
        for _ in 0..tau.trailing_zeros() {
            let next = pull_back(&level, n);
            levels.push(level);
            level = next;
        }
        levels.push(level);
        Ok(LfShortcut { n, tau, levels })
    }

    /// Reassembles a shortcut from stored levels, checking their shape.
    pub fn from_levels(n: usize, tau: usize, levels: Vec<Level>) -> Result<Self> {
        if !tau.is_power_of_two() || levels.len() != tau.trailing_zeros() as usize + 1 {
            return Err(Error::Parse(format!(
                "{} levels do not match tau = {tau}",
                levels.len()
            )));
        }
        for l in &levels {
            let ok = l.starts.first() == Some(&1)
                && l.starts.windows(2).all(|w| w[0] < w[1])
                && l.starts.last().is_some_and(|&s| s <= n)
                && l.maps.len() == l.len()
                && l.syms.len() == l.len();
            if !ok {
                return Err(Error::Parse("malformed shortcut level".into()));
            }
        }
        Ok(LfShortcut { n, tau, levels })
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Interval count of every level.
    pub fn interval_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Level::len).collect()
    }

    /// `LF^τ[i]`.
    pub fn lf_pow(&self, i: usize) -> Result<usize> {
        self.lf_pow_level(i, self.levels.len() - 1)
    }

    /// `LF^{2^ℓ}[i]`.
    pub fn lf_pow_level(&self, i: usize, level: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfRange {
                index: i,
                len: self.n,
            });
        }
        let l = self
            .levels
            .get(level)
            .ok_or_else(|| Error::Precondition(format!("no level {level}")))?;
        Ok(l.apply(i))
    }
}

fn pull_back(level: &Level, n: usize) -> Level {
    let mut fresh: HashMap<(u32, u32), u32> = HashMap::new();
    let mut out = Level {
        starts: Vec::new(),
        maps: Vec::new(),
        syms: Vec::new(),
    };
    let mut last_end = 0usize;
    for k in 0..level.len() {
        let (s, e, m) = (level.starts[k], level.end(k, n), level.maps[k]);
        let img_end = m + (e - s);
        let mut j = level.index_of(m);
        let mut a = m;
        while a <= img_end {
            let b = level.end(j, n).min(img_end);
            let next_id = fresh.len() as u32;
            let sym = *fresh
                .entry((level.syms[k], level.syms[j]))
                .or_insert(next_id);
            let start = s + (a - m);
            let map = level.maps[j] + (a - level.starts[j]);
            if out.syms.last() == Some(&sym) {
                debug_assert_eq!(
                    *out.maps.last().unwrap() + (start - out.starts.last().unwrap()),
                    map,
                    "merged interval must keep a single shift"
                );
            } else {
                out.starts.push(start);
                out.maps.push(map);
                out.syms.push(sym);
            }
            last_end = start + (b - a);
            a = b + 1;
            j += 1;
        }
    }
    debug_assert_eq!(last_end, n);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle_sim::Sym;

    #[test]
    fn tau_one_is_plain_lf() {
        let b = RlBwt::from_text(&[1, 0, 1, 1, 0 as Sym]);
        let s = LfShortcut::build(&b, 1).unwrap();
        assert_eq!(s.levels().len(), 1);
        for i in 1..=b.len() {
            assert_eq!(s.lf_pow(i).unwrap(), b.lf(i).unwrap());
        }
        assert!(LfShortcut::build(&b, 3).is_err());
    }
}
