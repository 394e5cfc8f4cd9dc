//! Lempel–Ziv factorizations: shared phrase types, the greedy classical
//! parsers, the oracle-driven non-overlapping parser, conversion to LZ77 and
//! the JSON-lines encoding.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fingerprint::DynamicLce;
use crate::oracle_sim::{rightmost_mismatch, OracleText, Sym};
use crate::pool::SortedBlocks;
use crate::suffix::{inverse, lcp_array, suffix_array, OccurrenceIndex};

/// One phrase. `src` is the 1-based start of the copied source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phrase {
    Literal(Sym),
    Copy { src: usize, len: usize },
}

impl Phrase {
    pub fn len(&self) -> usize {
        match self {
            Phrase::Literal(_) => 1,
            Phrase::Copy { len, .. } => *len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorizationKind {
    Lz77,
    NonOverlapping,
    LzEnd,
    LzEndTau(usize),
}

impl FactorizationKind {
    pub fn name(&self) -> &'static str {
        match self {
            FactorizationKind::Lz77 => "lz77",
            FactorizationKind::NonOverlapping => "nolz77",
            FactorizationKind::LzEnd => "lzend",
            FactorizationKind::LzEndTau(_) => "lzend-tau",
        }
    }

    pub fn tau(&self) -> Option<usize> {
        match self {
            FactorizationKind::LzEndTau(t) => Some(*t),
            _ => None,
        }
    }

    fn from_parts(name: &str, tau: Option<usize>) -> Result<Self> {
        Ok(match (name, tau) {
            ("lz77", None) => FactorizationKind::Lz77,
            ("nolz77", None) => FactorizationKind::NonOverlapping,
            ("lzend", None) => FactorizationKind::LzEnd,
            ("lzend-tau", Some(t)) if t >= 1 => FactorizationKind::LzEndTau(t),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown factorization kind {name:?} with tau {tau:?}"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub kind: FactorizationKind,
    pub phrases: Vec<Phrase>,
    pub n: usize,
}

#[derive(Serialize, Deserialize)]
struct Header {
    kind: String,
    tau: Option<usize>,
    n: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum Line {
    Lit { lit: Sym },
    Copy { src: usize, len: usize },
}

impl Factorization {
    pub fn new(kind: FactorizationKind, phrases: Vec<Phrase>) -> Self {
        let n = phrases.iter().map(Phrase::len).sum();
        Factorization { kind, phrases, n }
    }

    /// Number of phrases.
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// 1-based end position of every phrase.
    pub fn phrase_ends(&self) -> Vec<usize> {
        let mut pos = 0;
        self.phrases
            .iter()
            .map(|p| {
                pos += p.len();
                pos
            })
            .collect()
    }

    /// Expands the phrases, checking that every source starts before its
    /// phrase and that the lengths add up to `n`.
    pub fn decompress(&self) -> Result<Vec<Sym>> {
        let mut out: Vec<Sym> = Vec::with_capacity(self.n);
        for (k, p) in self.phrases.iter().enumerate() {
            match *p {
                Phrase::Literal(c) => out.push(c),
                Phrase::Copy { src, len } => {
                    let pos = out.len() + 1;
                    if len == 0 {
                        return Err(Error::InvalidFactorization(format!(
                            "phrase {k} has length 0"
                        )));
                    }
                    if src == 0 || src >= pos {
                        return Err(Error::InvalidFactorization(format!(
                            "phrase {k} at position {pos} copies from {src}"
                        )));
                    }
                    for t in 0..len {
                        let c = out[src - 1 + t];
                        out.push(c);
                    }
                }
            }
        }
        if out.len() != self.n {
            return Err(Error::InvalidFactorization(format!(
                "phrases cover {} symbols, header says {}",
                out.len(),
                self.n
            )));
        }
        Ok(out)
    }

    /// Checks the source restrictions specific to `kind` (non-overlap, or
    /// sources ending at eligible positions).
    pub fn check_kind(&self) -> Result<()> {
        let text = self.decompress()?;
        let mut ends: HashSet<usize> = HashSet::new();
        let mut pos = 1usize;
        for (k, p) in self.phrases.iter().enumerate() {
            if let Phrase::Copy { src, len } = *p {
                let end = src + len - 1;
                let ok = match self.kind {
                    FactorizationKind::Lz77 => true,
                    FactorizationKind::NonOverlapping => end < pos,
                    FactorizationKind::LzEnd => end < pos && ends.contains(&end),
                    FactorizationKind::LzEndTau(t) => {
                        end < pos && (ends.contains(&end) || end % t == 1 % t)
                    }
                };
                if !ok {
                    return Err(Error::InvalidFactorization(format!(
                        "phrase {k} source ending at {end} not allowed for {}",
                        self.kind.name()
                    )));
                }
            }
            if let Phrase::Literal(c) = *p {
                if text[..pos - 1].contains(&c) {
                    return Err(Error::InvalidFactorization(format!(
                        "phrase {k} is a literal of a repeated symbol"
                    )));
                }
            }
            pos += p.len();
            ends.insert(pos - 1);
        }
        Ok(())
    }

    /// Classical pair notation: `(c,0)` for literals, `(src,len)` otherwise.
    pub fn pairs_string(&self, render: impl Fn(Sym) -> String) -> String {
        self.phrases
            .iter()
            .map(|p| match *p {
                Phrase::Literal(c) => format!("({},0)", render(c)),
                Phrase::Copy { src, len } => format!("({src},{len})"),
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        let header = Header {
            kind: self.kind.name().to_string(),
            tau: self.kind.tau(),
            n: self.n,
        };
        writeln!(out, "{}", serde_json::to_string(&header)?)?;
        for p in &self.phrases {
            let line = match *p {
                Phrase::Literal(lit) => Line::Lit { lit },
                Phrase::Copy { src, len } => Line::Copy { src, len },
            };
            writeln!(out, "{}", serde_json::to_string(&line)?)?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header: Header = match lines.next() {
            Some(l) => serde_json::from_str(&l?)?,
            None => return Err(Error::Parse("missing factorization header".into())),
        };
        let kind = FactorizationKind::from_parts(&header.kind, header.tau)?;
        let mut phrases = Vec::new();
        for l in lines {
            let l = l?;
            if l.trim().is_empty() {
                continue;
            }
            phrases.push(match serde_json::from_str::<Line>(&l)? {
                Line::Lit { lit } => Phrase::Literal(lit),
                Line::Copy { src, len } => Phrase::Copy { src, len },
            });
        }
        let f = Factorization {
            kind,
            phrases,
            n: header.n,
        };
        f.decompress()?;
        Ok(f)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pairs_string(|c| c.to_string()))
    }
}

/// Largest `l` in `0..=max` with `ok(l)`, for `ok` true on a prefix of lengths.
pub(crate) fn gallop_max(max: usize, mut ok: impl FnMut(usize) -> bool) -> usize {
    let mut lo = 0usize;
    let mut step = 1usize;
    let mut hi = max;
    while lo < max {
        let cand = (lo + step).min(max);
        if ok(cand) {
            lo = cand;
            step *= 2;
        } else {
            hi = cand - 1;
            break;
        }
    }
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn lz77_with_index(text: &[Sym], idx: &OccurrenceIndex) -> Factorization {
    let n = text.len();
    let mut phrases = Vec::new();
    let mut s = 1usize;
    while s <= n {
        let len = gallop_max(n - s + 1, |l| idx.leftmost_occurrence(s, l) < s);
        if len == 0 {
            phrases.push(Phrase::Literal(text[s - 1]));
            s += 1;
        } else {
            let src = idx
                .rightmost_before(s, len, s)
                .expect("an earlier occurrence exists");
            phrases.push(Phrase::Copy { src, len });
            s += len;
        }
    }
    Factorization::new(FactorizationKind::Lz77, phrases)
}

/// Greedy LZ77 with self-overlapping sources. Among sources of maximal
/// length the rightmost (closest) one is reported.
pub fn lz77_greedy(text: &[Sym]) -> Factorization {
    if text.len() <= SHORT_TEXT {
        return lz77_short(text);
    }
    lz77_with_index(text, &OccurrenceIndex::new(text))
}

/// Below this length a direct quadratic scan beats building the index.
const SHORT_TEXT: usize = 32;

fn lz77_short(text: &[Sym]) -> Factorization {
    let n = text.len();
    let mut phrases = Vec::new();
    let mut s = 0usize;
    while s < n {
        let mut best = (0usize, 0usize);
        for src in (0..s).rev() {
            let l = (0..n - s)
                .take_while(|&t| text[src + t] == text[s + t])
                .count();
            if l > best.0 {
                best = (l, src);
            }
        }
        if best.0 == 0 {
            phrases.push(Phrase::Literal(text[s]));
            s += 1;
        } else {
            phrases.push(Phrase::Copy {
                src: best.1 + 1,
                len: best.0,
            });
            s += best.0;
        }
    }
    Factorization::new(FactorizationKind::Lz77, phrases)
}

/// Leftmost 1-based occurrence of the fragment `text[pos..pos+len)`.
pub fn leftmost_occurrence(index: &OccurrenceIndex, pos: usize, len: usize) -> usize {
    index.leftmost_occurrence(pos, len)
}

/// Re-parses any factorization into greedy LZ77 without touching an oracle:
/// the text is expanded from the phrases and each LZ77 phrase length is found
/// by galloping over leftmost-occurrence queries.
pub fn convert_to_lz77(f: &Factorization) -> Result<Factorization> {
    let text = f.decompress()?;
    Ok(lz77_greedy(&text))
}

/// Greedy parse whose sources must end at an earlier phrase end or, when
/// `tau` is given, at any position `≡ 1 (mod tau)`; all source ends precede
/// the phrase. Ties go to the smallest source end. Classical (text known).
pub fn greedy_end_parse(text: &[Sym], tau: Option<usize>) -> Vec<Phrase> {
    let n = text.len();
    let full = DynamicLce::from_text(text);
    let occ = OccurrenceIndex::new(text);
    let mut pool = SortedBlocks::new();
    let mut seen: HashSet<Sym> = HashSet::new();
    let mut phrases = Vec::new();
    let mut s = 1usize;
    while s <= n {
        let c = text[s - 1];
        let (phrase, e) = if seen.insert(c) {
            (Phrase::Literal(c), s)
        } else {
            let lim = gallop_max((n - s + 1).min(s - 1), |l| {
                occ.leftmost_occurrence(s, l) + l <= s
            });
            let mut chosen = None;
            for h in (s..s + lim).rev() {
                let l = h - s + 1;
                let cmp = |q: usize| {
                    if full.lcs(q, h) >= l {
                        Ordering::Equal
                    } else {
                        full.colex_cmp(q, h)
                    }
                };
                let lo = pool.partition_point(|q| cmp(q) == Ordering::Less);
                let hi = pool.partition_point(|q| cmp(q) != Ordering::Greater);
                if lo < hi {
                    let q = pool.range(lo, hi).min().unwrap();
                    chosen = Some((
                        Phrase::Copy {
                            src: q - l + 1,
                            len: l,
                        },
                        h,
                    ));
                    break;
                }
            }
            chosen.expect("a length-one source always exists")
        };
        phrases.push(phrase);
        for q in s..=e {
            let eligible = q == e || tau.is_some_and(|t| q % t == 1 % t);
            if eligible {
                pool.insert_by(q, |a, b| full.colex_cmp(a, b));
            }
        }
        s = e + 1;
    }
    phrases
}

/// LZ-End: every source ends at an earlier phrase end.
pub fn lz_end_classical(text: &[Sym]) -> Factorization {
    Factorization::new(FactorizationKind::LzEnd, greedy_end_parse(text, None))
}

/// Symbols read so far during an oracle-driven parse; repeated reads of a
/// known position are free.
pub(crate) struct ReadCache {
    known: Vec<Option<Sym>>,
}

impl ReadCache {
    pub(crate) fn new(n: usize) -> Self {
        ReadCache {
            known: vec![None; n + 1],
        }
    }

    pub(crate) fn read(&mut self, o: &OracleText, i: usize) -> Sym {
        match self.known[i] {
            Some(c) => c,
            None => {
                let c = o.read(i).expect("position inside the text");
                self.known[i] = Some(c);
                c
            }
        }
    }
}

/// Order of the known prefix `X[1..q]` against the unknown pattern
/// `X[s..s+l)`, restricted to the last `l` symbols (`Equal`: the pattern is
/// a suffix of the prefix). One rightmost-mismatch search plus at most one
/// read.
pub(crate) fn colex_vs_pattern(
    o: &OracleText,
    known: &DynamicLce,
    cache: &mut ReadCache,
    q: usize,
    s: usize,
    l: usize,
) -> Ordering {
    let m = q.min(l);
    if m == 0 {
        return if l == 0 {
            Ordering::Equal
        } else {
            Ordering::Less
        };
    }
    let pat = o.view(s + l - m, m).expect("pattern inside text");
    let src = o.view(q - m + 1, m).expect("prefix inside text");
    match rightmost_mismatch(&pat, &src).expect("equal lengths") {
        None => {
            if q >= l {
                Ordering::Equal
            } else {
                Ordering::Less
            }
        }
        Some(p) => {
            let mine = known.sym(q - m + p - 1);
            let theirs = cache.read(o, s + l - m + p - 1);
            mine.cmp(&theirs)
        }
    }
}

/// Non-overlapping LZ77 computed through the oracle: galloping over the
/// phrase length, each probe a binary search over the co-lex sorted earlier
/// prefixes with rightmost-mismatch comparisons. Ties go to the smallest
/// source end.
pub fn non_overlapping_lz77_oracle(o: &OracleText) -> Factorization {
    let n = o.len();
    let mut known = DynamicLce::new();
    let mut pool = SortedBlocks::new();
    let mut seen: HashSet<Sym> = HashSet::new();
    let mut cache = ReadCache::new(n);
    let mut phrases = Vec::new();
    let mut s = 1usize;
    while s <= n {
        let c = cache.read(o, s);
        if seen.insert(c) {
            phrases.push(Phrase::Literal(c));
            known.push(c);
            pool.insert_by(s, |a, b| known.colex_cmp(a, b));
            s += 1;
            continue;
        }
        let mut probe = |l: usize| -> Option<usize> {
            let (mut lo, mut hi) = (0usize, pool.len());
            while lo < hi {
                let mid = (lo + hi) / 2;
                let q = pool.get(mid);
                match colex_vs_pattern(o, &known, &mut cache, q, s, l) {
                    Ordering::Equal => return Some(q),
                    Ordering::Less => lo = mid + 1,
                    Ordering::Greater => hi = mid,
                }
            }
            None
        };
        let max = (n - s + 1).min(s - 1);
        let mut best = (0usize, 0usize);
        let len = gallop_max(max, |l| match probe(l) {
            Some(q) => {
                best = best.max((l, q));
                true
            }
            None => false,
        });
        debug_assert_eq!(best.0, len);
        let anchor = best.1;
        // all sources of the chosen length are now known classically
        let cmp = |q: usize| {
            if known.lcs(q, anchor) >= len {
                Ordering::Equal
            } else {
                known.colex_cmp(q, anchor)
            }
        };
        let lo = pool.partition_point(|q| cmp(q) == Ordering::Less);
        let hi = pool.partition_point(|q| cmp(q) != Ordering::Greater);
        let q = pool.range(lo, hi).min().expect("anchor is in range");
        let src = q + 1 - len;
        phrases.push(Phrase::Copy { src, len });
        known.push_copy(src - 1, len);
        for p in s..s + len {
            pool.insert_by(p, |a, b| known.colex_cmp(a, b));
        }
        s += len;
    }
    Factorization::new(FactorizationKind::NonOverlapping, phrases)
}

/// Substring complexity `δ = max_q d_q / q`, kept as the maximizing pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubstringComplexity {
    pub distinct: usize,
    pub q: usize,
}

impl SubstringComplexity {
    pub fn value(&self) -> f64 {
        if self.q == 0 {
            0.0
        } else {
            self.distinct as f64 / self.q as f64
        }
    }

    /// `δ ≤ z`, decided exactly.
    pub fn at_most(&self, z: usize) -> bool {
        self.distinct <= z * self.q.max(1)
    }
}

pub fn substring_complexity(text: &[Sym]) -> SubstringComplexity {
    let n = text.len();
    if n == 0 {
        return SubstringComplexity { distinct: 0, q: 1 };
    }
    let sa = suffix_array(text);
    let isa = inverse(&sa);
    let lcp = lcp_array(text, &sa, &isa);
    // d_q = (n - q + 1) - #{r : lcp[r] >= q}
    let mut ge = vec![0usize; n + 2];
    for &l in &lcp[1..] {
        ge[l] += 1;
    }
    for q in (0..=n).rev() {
        ge[q] += ge[q + 1];
    }
    let mut best = SubstringComplexity { distinct: 0, q: 1 };
    for q in 1..=n {
        let d = (n - q + 1) - ge[q];
        if d * best.q > best.distinct * q {
            best = SubstringComplexity { distinct: d, q };
        }
    }
    best
}
