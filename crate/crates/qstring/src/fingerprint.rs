//! Rolling-fingerprint longest-common-extension structure over an append-only
//! text. Fingerprints are polynomial hashes modulo two independent primes;
//! extension lengths are found by galloping plus binary search on fingerprint
//! equality.

use std::cmp::Ordering;
use std::sync::OnceLock;

use crate::oracle_sim::Sym;

const M1: u64 = (1 << 61) - 1;
const M2: u64 = (1 << 31) - 1;
const B1: u64 = 0x1f3d_5b79_a3c1_9e27 % M1;
const B2: u64 = 1_000_003;

#[inline]
fn mul1(a: u64, b: u64) -> u64 {
    let p = (a as u128) * (b as u128);
    let lo = (p as u64) & M1;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= M1 {
        s - M1
    } else {
        s
    }
}

#[inline]
fn mul2(a: u64, b: u64) -> u64 {
    (a * b) % M2
}

/// `QSTRING_DEBUG_LCE=1` turns on naive cross-checks of every answer.
pub fn debug_checks_enabled() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| std::env::var("QSTRING_DEBUG_LCE").is_ok_and(|v| v == "1"))
}

/// Prefix fingerprints of a symbol sequence.
#[derive(Debug, Clone)]
pub struct PrefixHashes {
    h1: Vec<u64>,
    h2: Vec<u64>,
    p1: Vec<u64>,
    p2: Vec<u64>,
}

impl Default for PrefixHashes {
    fn default() -> Self {
        PrefixHashes {
            h1: vec![0],
            h2: vec![0],
            p1: vec![1],
            p2: vec![1],
        }
    }
}

impl PrefixHashes {
    pub fn from_slice(s: &[Sym]) -> Self {
        let mut h = PrefixHashes::default();
        h.reserve(s.len());
        for &c in s {
            h.push(c);
        }
        h
    }

    fn reserve(&mut self, extra: usize) {
        self.h1.reserve(extra);
        self.h2.reserve(extra);
        self.p1.reserve(extra);
        self.p2.reserve(extra);
    }

    #[inline]
    pub fn push(&mut self, c: Sym) {
        let v = c as u64 + 1;
        let n = self.h1.len() - 1;
        let a = mul1(self.h1[n], B1) + v % M1;
        self.h1.push(if a >= M1 { a - M1 } else { a });
        self.h2.push((mul2(self.h2[n], B2) + v % M2) % M2);
        self.p1.push(mul1(self.p1[n], B1));
        self.p2.push(mul2(self.p2[n], B2));
    }

    pub fn len(&self) -> usize {
        self.h1.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Fingerprint of `s[a..b)`.
    #[inline]
    pub fn hash(&self, a: usize, b: usize) -> (u64, u64) {
        let l = b - a;
        let x = mul1(self.h1[a], self.p1[l]);
        let f1 = if self.h1[b] >= x {
            self.h1[b] - x
        } else {
            self.h1[b] + M1 - x
        };
        let y = mul2(self.h2[a], self.p2[l]);
        let f2 = (self.h2[b] + M2 - y) % M2;
        (f1, f2)
    }
}

/// Largest `l ≤ max` with `eq(l)`, where `eq` is monotone (true then false)
/// and `eq(0)` holds.
#[inline]
fn gallop(max: usize, eq: impl Fn(usize) -> bool) -> usize {
    if max == 0 {
        return 0;
    }
    let mut lo = 0usize;
    let mut step = 1usize;
    let mut hi;
    loop {
        let cand = (lo + step).min(max);
        if eq(cand) {
            lo = cand;
            if cand == max {
                return max;
            }
            step *= 2;
        } else {
            hi = cand - 1;
            break;
        }
    }
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if eq(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Append-only text with LCE / longest-common-suffix queries.
#[derive(Debug, Clone, Default)]
pub struct DynamicLce {
    text: Vec<Sym>,
    fp: PrefixHashes,
}

impl DynamicLce {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_text(s: &[Sym]) -> Self {
        let mut d = DynamicLce::new();
        d.text.reserve(s.len());
        d.fp.reserve(s.len());
        for &c in s {
            d.push(c);
        }
        d
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn text(&self) -> &[Sym] {
        &self.text
    }

    #[inline]
    pub fn sym(&self, i: usize) -> Sym {
        self.text[i]
    }

    pub fn push(&mut self, c: Sym) {
        self.text.push(c);
        self.fp.push(c);
    }

    /// Appends `text[src..src+len)`; the source may overlap the new tail.
    pub fn push_copy(&mut self, src: usize, len: usize) {
        for t in 0..len {
            let c = self.text[src + t];
            self.push(c);
        }
    }

    /// Fingerprint of `text[a..b)`.
    #[inline]
    pub fn hash(&self, a: usize, b: usize) -> (u64, u64) {
        self.fp.hash(a, b)
    }

    /// Longest common prefix of `text[a..]` and `text[b..]`.
    pub fn lce(&self, a: usize, b: usize) -> usize {
        let n = self.text.len();
        let max = (n - a).min(n - b);
        let r = if a == b {
            max
        } else {
            gallop(max, |l| {
                self.text[a + l - 1] == self.text[b + l - 1]
                    && self.hash(a, a + l) == self.hash(b, b + l)
            })
        };
        if debug_checks_enabled() {
            let naive = (0..max)
                .take_while(|&t| self.text[a + t] == self.text[b + t])
                .count();
            assert_eq!(r, naive, "fingerprint LCE disagrees with naive scan");
        }
        r
    }

    /// Longest common suffix of the prefixes `text[..p)` and `text[..q)`.
    pub fn lcs(&self, p: usize, q: usize) -> usize {
        let max = p.min(q);
        let r = if p == q {
            max
        } else {
            gallop(max, |l| {
                self.text[p - l] == self.text[q - l] && self.hash(p - l, p) == self.hash(q - l, q)
            })
        };
        if debug_checks_enabled() {
            let naive = (1..=max)
                .take_while(|&t| self.text[p - t] == self.text[q - t])
                .count();
            assert_eq!(
                r, naive,
                "fingerprint suffix extension disagrees with naive scan"
            );
        }
        r
    }

    /// Longest common suffix of `text[..p)` and `pat[..e)`, where `ph` holds
    /// the prefix fingerprints of `pat`.
    pub fn lcs_with(&self, p: usize, pat: &[Sym], ph: &PrefixHashes, e: usize) -> usize {
        let max = p.min(e);
        let r = gallop(max, |l| {
            self.text[p - l] == pat[e - l] && self.hash(p - l, p) == ph.hash(e - l, e)
        });
        if debug_checks_enabled() {
            let naive = (1..=max)
                .take_while(|&t| self.text[p - t] == pat[e - t])
                .count();
            assert_eq!(
                r, naive,
                "fingerprint pattern extension disagrees with naive scan"
            );
        }
        r
    }

    /// Co-lexicographic order of the prefixes `text[..p)` and `text[..q)`
    /// (compare right to left; a proper suffix sorts first).
    pub fn colex_cmp(&self, p: usize, q: usize) -> Ordering {
        if p == q {
            return Ordering::Equal;
        }
        let c = self.lcs(p, q);
        if c == p.min(q) {
            p.cmp(&q)
        } else {
            self.text[p - c - 1].cmp(&self.text[q - c - 1])
        }
    }

    /// Co-lex order of `text[..p)` against the pattern `pat[..e)`, looking only
    /// at the last `e` symbols: `Equal` means the pattern is a suffix.
    pub fn colex_cmp_pattern(
        &self,
        p: usize,
        pat: &[Sym],
        ph: &PrefixHashes,
        e: usize,
    ) -> Ordering {
        let c = self.lcs_with(p, pat, ph, e);
        if c == e {
            Ordering::Equal
        } else if c == p {
            Ordering::Less
        } else {
            self.text[p - c - 1].cmp(&pat[e - c - 1])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lce_and_lcs_match_naive() {
        let s: Vec<Sym> = b"abracadabraabracadabra"
            .iter()
            .map(|&b| b as Sym)
            .collect();
        let d = DynamicLce::from_text(&s);
        for a in 0..s.len() {
            for b in 0..s.len() {
                let naive = s[a..]
                    .iter()
                    .zip(&s[b..])
                    .take_while(|(x, y)| x == y)
                    .count();
                assert_eq!(d.lce(a, b), naive);
                let (p, q) = (a + 1, b + 1);
                let naive = s[..p]
                    .iter()
                    .rev()
                    .zip(s[..q].iter().rev())
                    .take_while(|(x, y)| x == y)
                    .count();
                assert_eq!(d.lcs(p, q), naive);
            }
        }
    }

    #[test]
    fn self_overlapping_copy() {
        let mut d = DynamicLce::new();
        d.push(7);
        d.push_copy(0, 5);
        assert_eq!(d.text(), &[7; 6]);
        assert_eq!(d.lce(0, 1), 5);
    }

    #[test]
    fn colex_order() {
        let s: Vec<Sym> = vec![1, 2, 1, 1, 2];
        let d = DynamicLce::from_text(&s);
        // prefixes: [1], [1,2], [1,2,1], [1,2,1,1], [1,2,1,1,2]
        assert_eq!(d.colex_cmp(1, 3), Ordering::Less); // "1" is a suffix of "121"
        assert_eq!(d.colex_cmp(2, 3), Ordering::Greater); // ends in 2 vs 1
        assert_eq!(d.colex_cmp(4, 3), Ordering::Less); // "1211" vs "121": ..11 < ..21
        let pat = vec![1, 2];
        let ph = PrefixHashes::from_slice(&pat);
        assert_eq!(d.colex_cmp_pattern(5, &pat, &ph, 2), Ordering::Equal);
        assert_eq!(d.colex_cmp_pattern(1, &pat, &ph, 2), Ordering::Less);
    }
}
