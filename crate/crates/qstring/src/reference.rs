//! Brute-force reference implementations. Deliberately naive and independent
//! of the rest of the crate; used by tests and by the verification suites.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::lz_core::Phrase;
use crate::oracle_sim::Sym;

/// Greedy LZ77, quadratic scan per phrase; ties go to the rightmost source.
pub fn lz77(text: &[Sym]) -> Vec<Phrase> {
    let n = text.len();
    let mut out = Vec::new();
    let mut s = 0usize;
    while s < n {
        let mut best = (0usize, 0usize);
        for src in 0..s {
            let l = (0..n - s)
                .take_while(|&t| text[src + t] == text[s + t])
                .count();
            if l > 0 && l >= best.0 {
                best = (l, src);
            }
        }
        if best.0 == 0 {
            out.push(Phrase::Literal(text[s]));
            s += 1;
        } else {
            out.push(Phrase::Copy {
                src: best.1 + 1,
                len: best.0,
            });
            s += best.0;
        }
    }
    out
}

/// Greedy parse with sources ending strictly before the phrase at a
/// previous phrase end, or at any `q ≡ 1 (mod tau)` when `tau` is given, or
/// anywhere when `any_end` is set (non-overlapping LZ77). Longest phrase,
/// then smallest source end.
fn end_restricted(text: &[Sym], tau: Option<usize>, any_end: bool) -> Vec<Phrase> {
    let n = text.len();
    let mut out = Vec::new();
    let mut ends: HashSet<usize> = HashSet::new();
    let mut s = 1usize;
    while s <= n {
        let fresh = !text[..s - 1].contains(&text[s - 1]);
        let mut chosen = None;
        if !fresh {
            'outer: for h in (s..=n).rev() {
                let l = h - s + 1;
                for q in l..s {
                    let eligible =
                        any_end || ends.contains(&q) || tau.is_some_and(|t| q % t == 1 % t);
                    if eligible && text[q - l..q] == text[s - 1..h] {
                        chosen = Some((
                            Phrase::Copy {
                                src: q - l + 1,
                                len: l,
                            },
                            h,
                        ));
                        break 'outer;
                    }
                }
            }
        }
        let (p, e) = chosen.unwrap_or((Phrase::Literal(text[s - 1]), s));
        out.push(p);
        ends.insert(e);
        s = e + 1;
    }
    out
}

pub fn lz_end(text: &[Sym]) -> Vec<Phrase> {
    end_restricted(text, None, false)
}

pub fn lz_end_tau(text: &[Sym], tau: usize) -> Vec<Phrase> {
    end_restricted(text, Some(tau), false)
}

pub fn non_overlapping_lz77(text: &[Sym]) -> Vec<Phrase> {
    end_restricted(text, None, true)
}

/// Number of distinct substrings of each length, maximised ratio `d_q / q`.
pub fn substring_complexity(text: &[Sym]) -> f64 {
    let n = text.len();
    (1..=n)
        .map(|q| {
            let set: HashSet<&[Sym]> = text.windows(q).collect();
            set.len() as f64 / q as f64
        })
        .fold(0.0, f64::max)
}

/// Levenshtein distance by the full dynamic program.
pub fn edit_distance(x: &[Sym], y: &[Sym]) -> usize {
    let mut prev: Vec<usize> = (0..=y.len()).collect();
    let mut cur = vec![0usize; y.len() + 1];
    for i in 1..=x.len() {
        cur[0] = i;
        for j in 1..=y.len() {
            let sub = prev[j - 1] + usize::from(x[i - 1] != y[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[y.len()]
}

/// Full DP table: `t[i][j] = ed(x[..i], y[..j])`.
pub fn edit_distance_table(x: &[Sym], y: &[Sym]) -> Vec<Vec<usize>> {
    let mut t = vec![vec![0usize; y.len() + 1]; x.len() + 1];
    for (j, c) in t[0].iter_mut().enumerate() {
        *c = j;
    }
    for i in 1..=x.len() {
        t[i][0] = i;
        for j in 1..=y.len() {
            let sub = t[i - 1][j - 1] + usize::from(x[i - 1] != y[j - 1]);
            t[i][j] = sub.min(t[i - 1][j] + 1).min(t[i][j - 1] + 1);
        }
    }
    t
}

/// Anchor tables: `(fwd, bwd)` with `fwd[a][b] = ed(x[..a], y[..b])` and
/// `bwd[a][b] = ed(x[a..], y[b..])`. A pair is an anchor iff the sum equals
/// `ed(x, y)`.
pub fn anchor_tables(x: &[Sym], y: &[Sym]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let fwd = edit_distance_table(x, y);
    let rx: Vec<Sym> = x.iter().rev().copied().collect();
    let ry: Vec<Sym> = y.iter().rev().copied().collect();
    let rev = edit_distance_table(&rx, &ry);
    let bwd = (0..=x.len())
        .map(|a| {
            (0..=y.len())
                .map(|b| rev[x.len() - a][y.len() - b])
                .collect()
        })
        .collect();
    (fwd, bwd)
}

/// Whether `(a, b)` lies on an optimal alignment of `x` and `y`.
pub fn is_edit_anchor(x: &[Sym], y: &[Sym], (a, b): (usize, usize)) -> bool {
    edit_distance(&x[..a], &y[..b]) + edit_distance(&x[a..], &y[b..]) == edit_distance(x, y)
}

/// Suffix array of `text` followed by a sentinel smaller than every symbol;
/// 1-based positions, the sentinel suffix being `n+1`.
pub fn suffix_array_with_sentinel(text: &[Sym]) -> Vec<usize> {
    let n = text.len();
    let mut sa: Vec<usize> = (1..=n + 1).collect();
    let key = |p: usize| -> Vec<u64> {
        let mut k: Vec<u64> = text[p - 1..].iter().map(|&c| c as u64 + 1).collect();
        k.push(0);
        k
    };
    sa.sort_by_key(|&p| key(p));
    sa
}

/// BWT of `text$` with `None` standing for the sentinel.
pub fn bwt_with_sentinel(text: &[Sym]) -> Vec<Option<Sym>> {
    suffix_array_with_sentinel(text)
        .into_iter()
        .map(|p| if p == 1 { None } else { Some(text[p - 2]) })
        .collect()
}

pub fn occurrences(text: &[Sym], pat: &[Sym]) -> Vec<usize> {
    if pat.is_empty() {
        return (1..=text.len() + 1).collect();
    }
    if pat.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pat.len())
        .filter(|&i| text[i..i + pat.len()] == *pat)
        .map(|i| i + 1)
        .collect()
}

/// Duval's algorithm: 1-based start of every Lyndon factor.
pub fn duval(text: &[Sym]) -> Vec<usize> {
    let n = text.len();
    let mut starts = Vec::new();
    let mut i = 0usize;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && text[k] <= text[j] {
            if text[k] < text[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            starts.push(i + 1);
            i += j - k;
        }
    }
    starts
}

/// Length of a longest common substring.
pub fn longest_common_substring(a: &[Sym], b: &[Sym]) -> usize {
    let mut best = 0;
    let mut prev = vec![0usize; b.len() + 1];
    for i in 1..=a.len() {
        let mut cur = vec![0usize; b.len() + 1];
        for j in 1..=b.len() {
            if a[i - 1] == b[j - 1] {
                cur[j] = prev[j - 1] + 1;
                best = best.max(cur[j]);
            }
        }
        prev = cur;
    }
    best
}

/// Maximal unique matches as `(pos_in_a, pos_in_b, len)`, 1-based, sorted.
pub fn maximal_unique_matches(a: &[Sym], b: &[Sym]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for l in 1..=a.len().min(b.len()) {
        let mut ca: HashMap<&[Sym], Vec<usize>> = HashMap::new();
        for i in 0..=a.len() - l {
            ca.entry(&a[i..i + l]).or_default().push(i);
        }
        let mut cb: HashMap<&[Sym], Vec<usize>> = HashMap::new();
        for j in 0..=b.len() - l {
            cb.entry(&b[j..j + l]).or_default().push(j);
        }
        for (w, pa) in &ca {
            if pa.len() != 1 {
                continue;
            }
            let Some(pb) = cb.get(w) else { continue };
            if pb.len() != 1 {
                continue;
            }
            let (i, j) = (pa[0], pb[0]);
            let left = i > 0 && j > 0 && a[i - 1] == b[j - 1];
            let right = i + l < a.len() && j + l < b.len() && a[i + l] == b[j + l];
            if !left && !right {
                out.push((i + 1, j + 1, l));
            }
        }
    }
    out.sort();
    out
}

/// Frequency of every distinct q-gram.
pub fn qgram_counts(text: &[Sym], q: usize) -> BTreeMap<Vec<Sym>, usize> {
    let mut m = BTreeMap::new();
    if q == 0 || q > text.len() {
        return m;
    }
    for w in text.windows(q) {
        *m.entry(w.to_vec()).or_insert(0) += 1;
    }
    m
}
