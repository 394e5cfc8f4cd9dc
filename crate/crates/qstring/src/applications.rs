//! Problems solved on top of the BWT index: longest common substring,
//! maximal unique matches, Lyndon factorization and q-gram frequencies, plus
//! the strings used by the query lower bounds.

use std::fmt::Write as _;

use crate::bwt_index::{BwtIndex, RlBwt};
use crate::error::Result;
use crate::lz_core::gallop_max;
use crate::oracle_sim::{grover_find, Ledger, OracleText, Sym};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatchKind {
    Lcs,
    Mum,
}

/// A match `s1[start_in_s1..start_in_s1+length) = s2[start_in_s2..…)`,
/// 1-based; both starts are 0 for an empty match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchReport {
    pub kind: MatchKind,
    pub start_in_s1: usize,
    pub start_in_s2: usize,
    pub length: usize,
}

impl MatchReport {
    pub fn to_tsv(&self) -> String {
        let kind = match self.kind {
            MatchKind::Lcs => "lcs",
            MatchKind::Mum => "mum",
        };
        format!(
            "{kind}\t{}\t{}\t{}",
            self.start_in_s1, self.start_in_s2, self.length
        )
    }
}

/// Index of `s1 # s2` with a separator `#` smaller than every symbol (but
/// larger than the index's own sentinel).
struct Joint {
    index: BwtIndex,
    n1: usize,
    n2: usize,
}

enum Side {
    First(usize),
    Second(usize),
    Neither,
}

impl Joint {
    fn new(s1: &[Sym], s2: &[Sym]) -> Result<Self> {
        let text: Vec<Sym> = s1
            .iter()
            .map(|&c| c + 1)
            .chain(std::iter::once(0))
            .chain(s2.iter().map(|&c| c + 1))
            .collect();
        Ok(Joint {
            index: BwtIndex::new(&text)?,
            n1: s1.len(),
            n2: s2.len(),
        })
    }

    /// Which string a joint position falls in, with its position there.
    fn side(&self, p: usize) -> Side {
        if (1..=self.n1).contains(&p) {
            Side::First(p)
        } else if (self.n1 + 2..=self.n1 + self.n2 + 1).contains(&p) {
            Side::Second(p - self.n1 - 1)
        } else {
            Side::Neither
        }
    }

    fn sa(&self, row: usize) -> usize {
        self.index.sa(row).expect("row in range")
    }

    fn lce_rows(&self, a: usize, b: usize) -> usize {
        self.index.lce(self.sa(a), self.sa(b)).expect("in range")
    }

    /// `(p1, p2)` when rows `i`, `i+1` hold suffixes of different strings.
    fn cross_pair(&self, i: usize) -> Option<(usize, usize)> {
        match (self.side(self.sa(i)), self.side(self.sa(i + 1))) {
            (Side::First(a), Side::Second(b)) | (Side::Second(b), Side::First(a)) => Some((a, b)),
            _ => None,
        }
    }

    /// Rows adjacent across a BWT run boundary: `(i, i+1)` with
    /// `BWT[i] ≠ BWT[i+1]`.
    fn boundary_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.index.rlbwt().run_starts()[1..].iter().map(|&p| p - 1)
    }
}

/// A longest common substring, found at adjacent SA rows across a BWT run
/// boundary. Among all longest ones, the leftmost in `s1` is reported, with
/// its leftmost occurrence in `s2`.
pub fn longest_common_substring(s1: &[Sym], s2: &[Sym]) -> Result<MatchReport> {
    let empty = MatchReport {
        kind: MatchKind::Lcs,
        start_in_s1: 0,
        start_in_s2: 0,
        length: 0,
    };
    if s1.is_empty() || s2.is_empty() {
        return Ok(empty);
    }
    let j = Joint::new(s1, s2)?;
    let mut best = 0usize;
    let mut rows = Vec::new();
    for i in j.boundary_rows() {
        if j.cross_pair(i).is_none() {
            continue;
        }
        let l = j.lce_rows(i, i + 1);
        if l > best {
            best = l;
            rows.clear();
        }
        if l == best && l > 0 {
            rows.push(i);
        }
    }
    if best == 0 {
        return Ok(empty);
    }
    // widen each candidate to the full block of rows sharing its length-best
    // prefix and take the leftmost positions there
    let last = j.index.len();
    let mut out: Option<MatchReport> = None;
    for i in rows {
        let lo = i - gallop_max(i - 1, |d| j.lce_rows(i - d, i) >= best);
        let hi = i + gallop_max(last - i, |d| j.lce_rows(i, i + d) >= best);
        let (mut a, mut b) = (usize::MAX, usize::MAX);
        for row in lo..=hi {
            match j.side(j.sa(row)) {
                Side::First(p) => a = a.min(p),
                Side::Second(p) => b = b.min(p),
                Side::Neither => {}
            }
        }
        let cand = MatchReport {
            kind: MatchKind::Lcs,
            start_in_s1: a,
            start_in_s2: b,
            length: best,
        };
        if out.is_none_or(|o| (a, b) < (o.start_in_s1, o.start_in_s2)) {
            out = Some(cand);
        }
    }
    Ok(out.expect("a candidate exists when best > 0"))
}

/// All maximal unique matches: rows `i`, `i+1` across a BWT run boundary,
/// holding suffixes of different strings, whose LCE beats the LCE with each
/// existing neighbour row (a missing neighbour counts as 0). Sorted by
/// position in `s1`.
pub fn maximal_unique_matches(s1: &[Sym], s2: &[Sym]) -> Result<Vec<MatchReport>> {
    if s1.is_empty() || s2.is_empty() {
        return Ok(Vec::new());
    }
    let j = Joint::new(s1, s2)?;
    let n = j.index.len();
    let mut out = Vec::new();
    for i in j.boundary_rows() {
        let Some((a, b)) = j.cross_pair(i) else {
            continue;
        };
        let l = j.lce_rows(i, i + 1);
        let left = if i > 1 { j.lce_rows(i - 1, i) } else { 0 };
        let right = if i + 1 < n {
            j.lce_rows(i + 1, i + 2)
        } else {
            0
        };
        if l > left.max(right) {
            out.push(MatchReport {
                kind: MatchKind::Mum,
                start_in_s1: a,
                start_in_s2: b,
                length: l,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// Start positions (1-based) of the Lyndon factors: the prefix minima of
/// ISA, each found by a Grover search over a doubling window. Search costs
/// are charged to `ledger`.
pub fn lyndon_factorization(index: &BwtIndex, ledger: &Ledger) -> Result<Vec<usize>> {
    let n = index.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut starts = vec![1];
    let mut cur = 1usize;
    let mut cur_rank = index.isa(1)?;
    loop {
        let mut width = 1usize;
        let next = loop {
            let hi = (cur + width).min(n);
            if hi <= cur {
                break None;
            }
            let found = grover_find(ledger, cur + 1, hi, |x| {
                index.isa(x).expect("in range") < cur_rank
            })?;
            if found.is_some() || hi == n {
                break found;
            }
            width *= 2;
        };
        match next {
            Some(x) => {
                starts.push(x);
                cur = x;
                cur_rank = index.isa(x)?;
            }
            None => return Ok(starts),
        }
    }
}

/// One distinct q-gram: `text[position..position+q)`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QGram {
    pub position: usize,
    pub frequency: usize,
}

/// Distinct q-grams in lexicographic order: blocks of SA rows whose suffixes
/// share `q` symbols, each block's end found by exponential search.
pub fn qgram_frequencies(index: &BwtIndex, q: usize) -> Result<Vec<QGram>> {
    let n = index.len() - 1;
    if q == 0 || q > n {
        return crate::error::precondition(format!("q = {q} outside 1..={n}"));
    }
    let rows = index.len();
    let mut out = Vec::new();
    let mut i = 1usize;
    while i <= rows {
        let p = index.sa(i)?;
        if n + 1 - p < q {
            i += 1;
            continue;
        }
        let ext = gallop_max(rows - i, |d| {
            index
                .lce(p, index.sa(i + d).expect("in range"))
                .expect("in range")
                >= q
        });
        out.push(QGram {
            position: p,
            frequency: ext + 1,
        });
        i += ext + 1;
    }
    Ok(out)
}

pub fn qgrams_to_tsv(text: &[Sym], q: usize, grams: &[QGram]) -> String {
    let mut s = String::new();
    for g in grams {
        let gram: Vec<String> = text[g.position - 1..g.position - 1 + q]
            .iter()
            .map(|c| c.to_string())
            .collect();
        writeln!(s, "{}\t{}\t{}", g.position, gram.join(","), g.frequency)
            .expect("writing to a string");
    }
    s
}

/// Runs of the BWT once the sentinel is deleted and its neighbours merged:
/// the run count of the sentinel-free BWT of a text.
pub fn runs_without_sentinel(bwt: &RlBwt) -> usize {
    let mut count = 0;
    let mut last = None;
    for (c, _) in bwt.runs() {
        if c.is_some() && c != last {
            count += 1;
            last = c;
        }
    }
    count
}

/// `f(1) f(2) … f(n)` as a 0/1 string.
pub fn indicator_string(f: &[bool]) -> Vec<Sym> {
    f.iter().map(|&b| Sym::from(b)).collect()
}

/// Symbol codes of the threshold string: `$ ↦ 0`, `0 ↦ 1`, `i ↦ i + 1`.
pub const THRESHOLD_DOLLAR: Sym = 0;
pub const THRESHOLD_ZERO: Sym = 1;

/// Symbol `i` (1-based) of `0^{2n} $ (0 s(f(1),1)) … (0 s(f(n),n)) 0`,
/// where `s(f(i), i)` is `i` if `f(i)` holds and 0 otherwise. Costs one
/// probe of `f` at most.
pub fn threshold_symbol(n: usize, i: usize, f: impl Fn(usize) -> bool) -> Sym {
    assert!(
        (1..=4 * n + 2).contains(&i),
        "position {i} outside 1..={}",
        4 * n + 2
    );
    if i <= 2 * n || i % 2 == 0 {
        THRESHOLD_ZERO
    } else if i == 2 * n + 1 {
        THRESHOLD_DOLLAR
    } else {
        let k = (i - (2 * n + 1)) / 2;
        if f(k) {
            k as Sym + 1
        } else {
            THRESHOLD_ZERO
        }
    }
}

/// The length-`(4n+2)` threshold string of `f` over `[1..n]`, behind an
/// oracle on `ledger`.
pub fn threshold_string(f: &[bool], ledger: Ledger) -> OracleText {
    let n = f.len();
    let text = (1..=4 * n + 2)
        .map(|i| threshold_symbol(n, i, |k| f[k - 1]))
        .collect();
    OracleText::new(text, ledger)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Vec<Sym> {
        t.bytes().map(Sym::from).collect()
    }

    #[test]
    fn lcs_example() {
        let m = longest_common_substring(&s("abcde"), &s("cdefg")).unwrap();
        assert_eq!((m.start_in_s1, m.start_in_s2, m.length), (3, 1, 3));
        assert_eq!(
            longest_common_substring(&s("ab"), &s("cd")).unwrap().length,
            0
        );
        assert_eq!(longest_common_substring(&[], &s("cd")).unwrap().length, 0);
    }

    #[test]
    fn banana_lyndon_and_qgrams() {
        let idx = BwtIndex::new(&s("banana")).unwrap();
        assert_eq!(
            lyndon_factorization(&idx, &Ledger::new(1)).unwrap(),
            vec![1, 2, 4, 6]
        );
        let abab = BwtIndex::new(&s("abab")).unwrap();
        let g = qgram_frequencies(&abab, 2).unwrap();
        assert_eq!(
            g.iter().map(|g| g.frequency).collect::<Vec<_>>(),
            vec![2, 1]
        );
        assert_eq!(
            qgrams_to_tsv(&s("abab"), 2, &g),
            "3\t97,98\t2\n2\t98,97\t1\n"
        );
    }

    #[test]
    fn threshold_layout() {
        let t = threshold_string(&[false, true], Ledger::new(1));
        let v: Vec<Sym> = (1..=t.len()).map(|i| t.read(i).unwrap()).collect();
        assert_eq!(v, vec![1, 1, 1, 1, 0, 1, 1, 1, 3, 1]);
    }
}
