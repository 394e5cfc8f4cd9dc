//! LZ-End+τ through the oracle.
//!
//! Phrase `i` starting at `s` is the longest `X[s..h]` that occurs ending at
//! some `q < s` where `q` is an earlier phrase end or `q ≡ 1 (mod τ)`; a fresh
//! symbol becomes a literal. Such `X[s..h]` are *potential factors*. The
//! eligible prefixes `X[1..q]` are kept co-lex sorted in a [`PrefixPool`]
//! over a fingerprint LCE structure of the processed text, so comparisons
//! among them cost no queries.
//!
//! The phrase end is located by galloping over `j`, testing the τ-far
//! property (some potential factor ends in `[max(s, j−τ)..j]`, monotone in
//! `j`). The window symbols are read directly; the part left of the window is
//! matched with rightmost-mismatch Grover searches during a binary search.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::fingerprint::{DynamicLce, PrefixHashes};
use crate::lz_core::{
    colex_vs_pattern, gallop_max, greedy_end_parse, Factorization, FactorizationKind, Phrase,
    ReadCache,
};
use crate::oracle_sim::{OracleText, Sym};

/// How the part of a candidate left of the τ-window is matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Read every symbol of the phrase and the following τ symbols.
    Linear,
    /// One binary search per window end `h`.
    PerWindow,
    /// One binary search over the merged candidate lists of all window ends.
    #[default]
    Merged,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Linear => "linear",
            Strategy::PerWindow => "per-window",
            Strategy::Merged => "merged",
        }
    }
}

/// Co-lex sorted prefix ends `q` (standing for `X[1..q]`).
#[derive(Debug, Clone, Default)]
pub struct PrefixPool {
    entries: Vec<usize>,
}

impl PrefixPool {
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn insert(&mut self, q: usize, known: &DynamicLce) {
        let at = self
            .entries
            .partition_point(|&x| known.colex_cmp(x, q) == Ordering::Less);
        let dup = at < self.entries.len() && self.entries[at] == q;
        debug_assert!(!dup, "prefix end {q} inserted twice");
        if !dup {
            self.entries.insert(at, q);
        }
    }

    /// Ranks `lo..hi` of the entries whose prefix ends with `pat[..e)`.
    fn pattern_range(
        &self,
        known: &DynamicLce,
        pat: &[Sym],
        ph: &PrefixHashes,
        e: usize,
    ) -> (usize, usize) {
        let lo = self
            .entries
            .partition_point(|&q| known.colex_cmp_pattern(q, pat, ph, e) == Ordering::Less);
        let hi = lo
            + self.entries[lo..]
                .partition_point(|&q| known.colex_cmp_pattern(q, pat, ph, e) == Ordering::Equal);
        (lo, hi)
    }
}

/// Candidate list of one window end: pool ranks `lo..hi`, each entry read
/// with its last `d` symbols removed.
#[derive(Debug, Clone, Copy)]
struct Shifted {
    h: usize,
    lo: usize,
    hi: usize,
    d: usize,
}

/// k-th smallest (0-based, co-lex) element of the union of sorted lists, by
/// weighted-median partitioning.
fn kth_of_merged(pool: &[usize], lists: &[Shifted], mut k: usize, known: &DynamicLce) -> usize {
    let elem = |l: &Shifted, t: usize| pool[t] - l.d;
    let mut a: Vec<usize> = lists.iter().map(|l| l.lo).collect();
    let mut b: Vec<usize> = lists.iter().map(|l| l.hi).collect();
    loop {
        let mut meds: Vec<(usize, usize)> = (0..lists.len())
            .filter(|&i| a[i] < b[i])
            .map(|i| (elem(&lists[i], a[i] + (b[i] - a[i]) / 2), b[i] - a[i]))
            .collect();
        debug_assert!(!meds.is_empty(), "rank beyond merged size");
        if meds.len() == 1 {
            let i = (0..lists.len()).find(|&i| a[i] < b[i]).unwrap();
            return elem(&lists[i], a[i] + k);
        }
        meds.sort_by(|x, y| known.colex_cmp(x.0, y.0));
        let total: usize = meds.iter().map(|m| m.1).sum();
        let mut acc = 0;
        let mut pivot = meds[0].0;
        for &(m, w) in &meds {
            acc += w;
            if 2 * acc >= total {
                pivot = m;
                break;
            }
        }
        let mut lt = vec![0usize; lists.len()];
        let mut le = vec![0usize; lists.len()];
        for i in 0..lists.len() {
            let slice = &pool[a[i]..b[i]];
            let d = lists[i].d;
            lt[i] = slice.partition_point(|&q| known.colex_cmp(q - d, pivot) == Ordering::Less);
            le[i] = lt[i]
                + slice[lt[i]..]
                    .partition_point(|&q| known.colex_cmp(q - d, pivot) == Ordering::Equal);
        }
        let below: usize = lt.iter().sum();
        let equal: usize = le.iter().zip(&lt).map(|(x, y)| x - y).sum();
        if k < below {
            for i in 0..lists.len() {
                b[i] = a[i] + lt[i];
            }
        } else if k < below + equal {
            return pivot;
        } else {
            k -= below + equal;
            for i in 0..lists.len() {
                a[i] += le[i];
            }
        }
    }
}

/// Incremental LZ-End+τ parser over an oracle.
pub struct TauParser<'a> {
    o: &'a OracleText,
    tau: usize,
    strategy: Strategy,
    known: DynamicLce,
    pool: PrefixPool,
    seen: HashSet<Sym>,
    cache: ReadCache,
    phrases: Vec<Phrase>,
}

impl<'a> TauParser<'a> {
    pub fn new(o: &'a OracleText, tau: usize, strategy: Strategy) -> Self {
        assert!(tau >= 1, "tau must be positive");
        TauParser {
            o,
            tau,
            strategy,
            known: DynamicLce::new(),
            pool: PrefixPool::default(),
            seen: HashSet::new(),
            cache: ReadCache::new(o.len()),
            phrases: Vec::new(),
        }
    }

    pub fn is_done(&self) -> bool {
        self.known.len() == self.o.len()
    }

    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    pub fn pool(&self) -> &PrefixPool {
        &self.pool
    }

    pub fn into_factorization(self) -> Factorization {
        Factorization::new(FactorizationKind::LzEndTau(self.tau), self.phrases)
    }

    /// Parses the next phrase; `None` once the text is exhausted.
    pub fn step(&mut self) -> Option<Phrase> {
        if self.is_done() {
            return None;
        }
        let s = self.known.len() + 1;
        let c = self.cache.read(self.o, s);
        let (phrase, e) = if self.seen.insert(c) {
            (Phrase::Literal(c), s)
        } else {
            let (h, q) = match self.strategy {
                Strategy::Linear => self.linear_phrase(s),
                _ => self.windowed_phrase(s),
            };
            let len = h - s + 1;
            (
                Phrase::Copy {
                    src: q + 1 - len,
                    len,
                },
                h,
            )
        };
        match phrase {
            Phrase::Literal(c) => self.known.push(c),
            Phrase::Copy { src, len } => self.known.push_copy(src - 1, len),
        }
        for q in s..=e {
            if q == e || q % self.tau == 1 % self.tau {
                self.pool.insert(q, &self.known);
            }
        }
        self.phrases.push(phrase);
        Some(phrase)
    }

    /// Smallest eligible source end among pool ranks `lo..hi`.
    fn min_end(&self, lo: usize, hi: usize) -> usize {
        *self.pool.entries[lo..hi]
            .iter()
            .min()
            .expect("non-empty range")
    }

    fn linear_phrase(&mut self, s: usize) -> (usize, usize) {
        let n = self.o.len();
        let mut pat: Vec<Sym> = Vec::new();
        let mut ph = PrefixHashes::default();
        let mut best = None;
        let mut h = s;
        while h <= n {
            let c = self.cache.read(self.o, h);
            pat.push(c);
            ph.push(c);
            let (lo, hi) = self.pool.pattern_range(&self.known, &pat, &ph, pat.len());
            if lo < hi {
                best = Some((h, self.min_end(lo, hi)));
            }
            match best {
                Some((b, _)) if h >= b + self.tau => break,
                _ => {}
            }
            h += 1;
        }
        best.expect("a length-one source always exists")
    }

    fn windowed_phrase(&mut self, s: usize) -> (usize, usize) {
        let n = self.o.len();
        let mut best = (s, 0usize, 0usize);
        let span = gallop_max(n - s, |t| match self.tau_far(s, s + t) {
            Some((h, q)) => {
                best = best.max((s + t, h, q));
                true
            }
            None => false,
        });
        if span == 0 {
            return self.tau_far(s, s).expect("length-one phrase");
        }
        debug_assert_eq!(best.0, s + span);
        (best.1, best.2)
    }

    /// The τ-far test for window end `j`: the largest potential factor end in
    /// `[max(s, j−τ)..j]` with its smallest eligible source end.
    fn tau_far(&mut self, s: usize, j: usize) -> Option<(usize, usize)> {
        let w = s.max(j.saturating_sub(self.tau));
        let win: Vec<Sym> = (w..=j).map(|i| self.cache.read(self.o, i)).collect();
        let wh = PrefixHashes::from_slice(&win);
        let lists: Vec<Shifted> = (w..=j)
            .map(|h| {
                let d = h - w + 1;
                let (lo, hi) = self.pool.pattern_range(&self.known, &win, &wh, d);
                Shifted { h, lo, hi, d }
            })
            .filter(|l| l.lo < l.hi)
            .collect();
        if w == s {
            let l = lists.last()?;
            return Some((l.h, self.min_end(l.lo, l.hi)));
        }
        let len = w - s;
        let hit = match self.strategy {
            Strategy::Merged => self.search_merged(&lists, s, len),
            _ => lists
                .iter()
                .rev()
                .find_map(|l| self.search_merged(std::slice::from_ref(l), s, len)),
        }?;
        // X[s..w) is now known to equal the text ending at `hit`; finish classically.
        let known = &self.known;
        for l in lists.iter().rev() {
            let slice = &self.pool.entries[l.lo..l.hi];
            let cmp = |q: usize| {
                let m = q - l.d;
                if known.lcs(m, hit) >= len {
                    Ordering::Equal
                } else {
                    known.colex_cmp(m, hit)
                }
            };
            let lo = slice.partition_point(|&q| cmp(q) == Ordering::Less);
            let hi = lo + slice[lo..].partition_point(|&q| cmp(q) == Ordering::Equal);
            if lo < hi {
                let q = *slice[lo..hi].iter().min().unwrap();
                return Some((l.h, q));
            }
        }
        unreachable!("the matched candidate belongs to some list")
    }

    /// Binary search over the merged lists for a shifted prefix ending with
    /// the unknown `X[s..s+len)`.
    fn search_merged(&mut self, lists: &[Shifted], s: usize, len: usize) -> Option<usize> {
        let total: usize = lists.iter().map(|l| l.hi - l.lo).sum();
        let (mut lo, mut hi) = (0usize, total);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let m = kth_of_merged(&self.pool.entries, lists, mid, &self.known);
            match colex_vs_pattern(self.o, &self.known, &mut self.cache, m, s, len) {
                Ordering::Equal => return Some(m),
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
            }
        }
        None
    }
}

/// LZ-End+τ for a fixed τ; `None` if more than `limit` phrases are needed.
pub fn build_with_tau(
    o: &OracleText,
    tau: usize,
    strategy: Strategy,
    limit: Option<usize>,
) -> Option<Factorization> {
    let mut p = TauParser::new(o, tau, strategy);
    while p.step().is_some() {
        if limit.is_some_and(|l| p.phrases().len() > l) {
            return None;
        }
    }
    Some(p.into_factorization())
}

#[derive(Debug, Clone)]
pub struct BuildConfig {
    pub strategy: Strategy,
    /// Give up (no factorization) once more phrases than this are needed.
    pub abort_above: Option<usize>,
    /// Charge each restart round under its own ledger scope `roundN`.
    pub scope_rounds: bool,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            strategy: Strategy::Merged,
            abort_above: None,
            scope_rounds: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundStats {
    pub z_guess: usize,
    pub tau: usize,
    pub queries: u64,
    pub completed: bool,
}

#[derive(Debug, Clone)]
pub struct BuildReport {
    pub factorization: Option<Factorization>,
    pub rounds: Vec<RoundStats>,
}

/// `τ = ⌈√(n / z_guess)⌉`.
pub fn tau_for(n: usize, z_guess: usize) -> usize {
    let mut t = ((n as f64) / (z_guess as f64)).sqrt().ceil() as usize;
    while t > 1 && (t - 1) * (t - 1) * z_guess >= n {
        t -= 1;
    }
    while t * t * z_guess < n {
        t += 1;
    }
    t.max(1)
}

/// LZ-End+τ without knowing z: start with a guess of one phrase, use
/// `τ = ⌈√(n/z_guess)⌉`, and restart with the guess doubled whenever the
/// parse needs more phrases than guessed.
pub fn build(o: &OracleText, cfg: &BuildConfig) -> BuildReport {
    let n = o.len();
    let mut rounds = Vec::new();
    if n == 0 {
        return BuildReport {
            factorization: Some(Factorization::new(
                FactorizationKind::LzEndTau(1),
                Vec::new(),
            )),
            rounds,
        };
    }
    let ledger = o.ledger();
    let mut z_guess = 1usize;
    loop {
        let tau = tau_for(n, z_guess);
        if cfg.scope_rounds {
            ledger.set_scope(&format!("round{}", rounds.len() + 1));
        }
        let before = ledger.total();
        let limit = match cfg.abort_above {
            Some(a) => z_guess.min(a),
            None => z_guess,
        };
        let f = build_with_tau(o, tau, cfg.strategy, Some(limit));
        rounds.push(RoundStats {
            z_guess,
            tau,
            queries: ledger.total() - before,
            completed: f.is_some(),
        });
        if f.is_some() || cfg.abort_above.is_some_and(|a| z_guess >= a) {
            if cfg.scope_rounds {
                ledger.set_scope("");
            }
            return BuildReport {
                factorization: f,
                rounds,
            };
        }
        z_guess *= 2;
    }
}

/// LZ-End+τ computed classically from the known text.
pub fn lz_end_tau_classical(text: &[Sym], tau: usize) -> Factorization {
    Factorization::new(
        FactorizationKind::LzEndTau(tau),
        greedy_end_parse(text, Some(tau)),
    )
}
