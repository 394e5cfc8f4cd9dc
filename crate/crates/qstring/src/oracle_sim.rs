//! Query-model text access.
//!
//! An [`OracleText`] hides its symbols behind [`OracleText::read`], which
//! charges one query per call to a shared [`Ledger`]. Quantum subroutines
//! (Grover search and the primitives built on it) are simulated classically:
//! they look at the data for free and charge the query count the quantum
//! routine would have paid.

use std::cell::RefCell;
use std::io::Write;
use std::rc::Rc;

use crate::error::{precondition, Error, Result};

/// Text symbol. Byte inputs are widened; `0` is reserved as the BWT sentinel
/// once a text is shifted for indexing.
pub type Sym = u32;

pub const TAG_READ: &str = "read";
pub const TAG_STRUCTURAL: &str = "grover.structural";
pub const TAG_PREDICATE: &str = "grover.predicate";

/// Query counts, total and per tag. Tags can be grouped under a named scope
/// (e.g. one scope per restart round of a build).
#[derive(Debug, Clone)]
pub struct QueryLedger {
    total: u64,
    rows: Vec<(usize, &'static str, u64)>,
    scopes: Vec<String>,
    scope: usize,
    repetition_factor: u64,
}

impl QueryLedger {
    pub fn new(repetition_factor: u64) -> Self {
        QueryLedger {
            total: 0,
            rows: Vec::new(),
            scopes: vec![String::new()],
            scope: 0,
            repetition_factor: repetition_factor.max(1),
        }
    }

    /// Repetition factor `⌈c_rep · log₂ n⌉` (at least 1) for an input of length `n`.
    pub fn repetition_for(n: usize, c_rep: f64) -> u64 {
        let lg = (n.max(2) as f64).log2();
        ((c_rep * lg).ceil() as u64).max(1)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn repetition_factor(&self) -> u64 {
        self.repetition_factor
    }

    /// Sum of a tag across all scopes.
    pub fn count(&self, tag: &str) -> u64 {
        self.rows.iter().filter(|r| r.1 == tag).map(|r| r.2).sum()
    }

    /// Sum of every tag charged under the named scope.
    pub fn scope_total(&self, scope: &str) -> u64 {
        match self.scopes.iter().position(|s| s == scope) {
            Some(idx) => self.rows.iter().filter(|r| r.0 == idx).map(|r| r.2).sum(),
            None => 0,
        }
    }

    pub fn charge(&mut self, tag: &'static str, amount: u64) {
        if amount == 0 {
            return;
        }
        self.total += amount;
        let scope = self.scope;
        match self.rows.iter_mut().find(|r| r.0 == scope && r.1 == tag) {
            Some(row) => row.2 += amount,
            None => self.rows.push((scope, tag, amount)),
        }
    }

    /// Subsequent charges are recorded as `name/tag`. An empty name resets.
    pub fn set_scope(&mut self, name: &str) {
        self.scope = match self.scopes.iter().position(|s| s == name) {
            Some(idx) => idx,
            None => {
                self.scopes.push(name.to_string());
                self.scopes.len() - 1
            }
        };
    }

    /// `(tag, count)` rows in first-charge order; scoped tags read `scope/tag`.
    pub fn rows(&self) -> Vec<(String, u64)> {
        self.rows
            .iter()
            .map(|&(scope, tag, count)| {
                let key = if scope == 0 {
                    tag.to_string()
                } else {
                    format!("{}/{}", self.scopes[scope], tag)
                };
                (key, count)
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["tag", "count"])?;
        for (tag, count) in self.rows() {
            w.write_record([tag, count.to_string()])?;
        }
        w.write_record(["total".to_string(), self.total.to_string()])?;
        w.flush()?;
        Ok(())
    }
}

/// Shared handle to a [`QueryLedger`]. One ledger per run; cases executed in
/// parallel each own theirs.
#[derive(Debug, Clone)]
pub struct Ledger(Rc<RefCell<QueryLedger>>);

impl Default for Ledger {
    fn default() -> Self {
        Ledger::new(1)
    }
}

impl Ledger {
    pub fn new(repetition_factor: u64) -> Self {
        Ledger(Rc::new(RefCell::new(QueryLedger::new(repetition_factor))))
    }

    /// Ledger whose repetition factor is `⌈c_rep · log₂ n⌉`.
    pub fn for_input(n: usize, c_rep: f64) -> Self {
        Ledger::new(QueryLedger::repetition_for(n, c_rep))
    }

    pub fn charge(&self, tag: &'static str, amount: u64) {
        self.0.borrow_mut().charge(tag, amount);
    }

    pub fn total(&self) -> u64 {
        self.0.borrow().total()
    }

    pub fn count(&self, tag: &str) -> u64 {
        self.0.borrow().count(tag)
    }

    pub fn repetition_factor(&self) -> u64 {
        self.0.borrow().repetition_factor()
    }

    pub fn set_scope(&self, name: &str) {
        self.0.borrow_mut().set_scope(name);
    }

    pub fn snapshot(&self) -> QueryLedger {
        self.0.borrow().clone()
    }
}

/// Read-only view of a symbol sequence. Positions are 1-based. A view can be
/// a sub-range of the underlying data and can be read right to left.
#[derive(Debug, Clone)]
pub struct OracleText {
    data: Rc<[Sym]>,
    start: usize,
    len: usize,
    reversed: bool,
    ledger: Ledger,
}

impl OracleText {
    pub fn new(data: Vec<Sym>, ledger: Ledger) -> Self {
        let len = data.len();
        OracleText {
            data: data.into(),
            start: 0,
            len,
            reversed: false,
            ledger,
        }
    }

    pub fn from_bytes(bytes: &[u8], ledger: Ledger) -> Self {
        OracleText::new(bytes.iter().map(|&b| b as Sym).collect(), ledger)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn ledger(&self) -> &Ledger {
        &self.ledger
    }

    /// Same view, charged to a different ledger.
    pub fn with_ledger(&self, ledger: Ledger) -> Self {
        OracleText {
            ledger,
            ..self.clone()
        }
    }

    /// The `len` symbols starting at (1-based) position `from` of this view.
    pub fn view(&self, from: usize, len: usize) -> Result<OracleText> {
        if len > 0 && (from == 0 || from + len - 1 > self.len) {
            return Err(Error::OutOfRange {
                index: from + len.saturating_sub(1),
                len: self.len,
            });
        }
        if len == 0 {
            return Ok(OracleText {
                len: 0,
                ..self.clone()
            });
        }
        let start = if self.reversed {
            self.start + self.len - (from + len - 1)
        } else {
            self.start + from - 1
        };
        Ok(OracleText {
            start,
            len,
            ..self.clone()
        })
    }

    /// Fragment `X(lo..hi]` in 0-based half-open boundary notation.
    pub fn fragment(&self, lo: usize, hi: usize) -> Result<OracleText> {
        if lo > hi {
            return precondition(format!("fragment bounds {lo} > {hi}"));
        }
        self.view(lo + 1, hi - lo)
    }

    pub fn reversed(&self) -> OracleText {
        OracleText {
            reversed: !self.reversed,
            ..self.clone()
        }
    }

    #[inline]
    fn locate(&self, i: usize) -> usize {
        if self.reversed {
            self.start + self.len - i
        } else {
            self.start + i - 1
        }
    }

    /// Symbol at 1-based position `i`; charges one query.
    pub fn read(&self, i: usize) -> Result<Sym> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len,
            });
        }
        self.ledger.charge(TAG_READ, 1);
        Ok(self.data[self.locate(i)])
    }

    /// Uncharged access used inside simulated quantum subroutines, which
    /// charge their own cost.
    #[inline]
    pub(crate) fn peek(&self, i: usize) -> Sym {
        debug_assert!(i >= 1 && i <= self.len);
        self.data[self.locate(i)]
    }

    /// The whole view without charging. Only for reference checks and for
    /// materialising texts the caller already owns.
    pub fn reveal_uncharged(&self) -> Vec<Sym> {
        (1..=self.len).map(|i| self.peek(i)).collect()
    }
}

fn isqrt_ceil(m: usize) -> u64 {
    if m == 0 {
        return 0;
    }
    let mut r = (m as f64).sqrt() as u64;
    while r * r < m as u64 {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= m as u64 {
        r -= 1;
    }
    r
}

/// Structural charge of one Grover search over `m` candidates.
pub fn grover_charge(ledger: &Ledger, m: usize) -> u64 {
    isqrt_ceil(m) * ledger.repetition_factor()
}

/// Leftmost index in `lo..=hi` satisfying `pred`, or `None`.
///
/// Charges `⌈√m⌉ · repetition_factor` structural queries. The predicate is
/// evaluated classically; if it reads an oracle it must do so uncharged and
/// declare its per-evaluation cost through [`grover_find_costed`].
pub fn grover_find(
    ledger: &Ledger,
    lo: usize,
    hi: usize,
    pred: impl FnMut(usize) -> bool,
) -> Result<Option<usize>> {
    grover_find_costed(ledger, lo, hi, 0, pred)
}

/// [`grover_find`] whose predicate costs `queries_per_eval` oracle queries per
/// evaluation; those are charged once per Grover iteration under the
/// predicate tag.
pub fn grover_find_costed(
    ledger: &Ledger,
    lo: usize,
    hi: usize,
    queries_per_eval: u64,
    mut pred: impl FnMut(usize) -> bool,
) -> Result<Option<usize>> {
    if lo > hi {
        return precondition(format!("grover_find over empty range {lo}..={hi}"));
    }
    let iterations = grover_charge(ledger, hi - lo + 1);
    ledger.charge(TAG_STRUCTURAL, iterations);
    ledger.charge(TAG_PREDICATE, iterations * queries_per_eval);
    Ok((lo..=hi).find(|&i| pred(i)))
}

/// Whether two views hold the same symbols. Different lengths compare
/// unequal at no charge; equal length `ℓ` costs one Grover search over `ℓ`.
pub fn fragments_equal(a: &OracleText, b: &OracleText) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let mismatch =
        grover_find(a.ledger(), 1, a.len(), |i| a.peek(i) != b.peek(i)).expect("non-empty range");
    mismatch.is_none()
}

/// Longest common prefix of two views, by binary search over
/// [`fragments_equal`].
pub fn oracle_lcp(a: &OracleText, b: &OracleText) -> usize {
    let (mut lo, mut hi) = (0usize, a.len().min(b.len()));
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        let pa = a.view(1, mid).expect("within bounds");
        let pb = b.view(1, mid).expect("within bounds");
        if fragments_equal(&pa, &pb) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Longest common suffix of two views.
pub fn oracle_lcs(a: &OracleText, b: &OracleText) -> usize {
    oracle_lcp(&a.reversed(), &b.reversed())
}

/// Largest 1-based `p` with `a[p] ≠ b[p]`, or `None` when the views match.
///
/// Grover searches over windows of the last 1, 2, 4, … positions (indexed
/// right to left, so the leftmost hit is the rightmost mismatch); the cost is
/// `O(√(ℓ − p + 1))` when a mismatch exists and `O(√ℓ)` otherwise.
pub fn rightmost_mismatch(a: &OracleText, b: &OracleText) -> Result<Option<usize>> {
    if a.len() != b.len() {
        return precondition(format!(
            "rightmost_mismatch on lengths {} and {}",
            a.len(),
            b.len()
        ));
    }
    let len = a.len();
    let mut width = 1usize;
    while len > 0 {
        let w = width.min(len);
        let hit = grover_find(a.ledger(), 1, w, |t| {
            a.peek(len - t + 1) != b.peek(len - t + 1)
        })?;
        if let Some(t) = hit {
            return Ok(Some(len - t + 1));
        }
        if w == len {
            break;
        }
        width *= 2;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> OracleText {
        OracleText::from_bytes(s.as_bytes(), Ledger::new(1))
    }

    #[test]
    fn reads_charge_one_each() {
        let t = text("abc");
        assert_eq!(t.read(2).unwrap(), b'b' as Sym);
        assert_eq!(t.read(3).unwrap(), b'c' as Sym);
        assert_eq!(t.ledger().total(), 2);
        assert!(matches!(t.read(4), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.read(0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn reversed_and_sub_views_compose() {
        let t = text("abcdef");
        let r = t.reversed();
        assert_eq!(r.read(1).unwrap(), b'f' as Sym);
        let v = r.view(2, 3).unwrap(); // "edc"
        assert_eq!(
            v.reveal_uncharged(),
            vec![b'e' as Sym, b'd' as Sym, b'c' as Sym]
        );
        let back = v.reversed(); // "cde"
        assert_eq!(back.read(1).unwrap(), b'c' as Sym);
        let f = t.fragment(1, 4).unwrap();
        assert_eq!(
            f.reveal_uncharged(),
            vec![b'b' as Sym, b'c' as Sym, b'd' as Sym]
        );
    }

    #[test]
    fn grover_charges() {
        let l = Ledger::new(1);
        assert_eq!(grover_find(&l, 1, 16, |i| i == 7).unwrap(), Some(7));
        assert_eq!(l.total(), 4);
        let l = Ledger::new(1);
        assert_eq!(grover_find(&l, 1, 9, |_| false).unwrap(), None);
        assert_eq!(l.total(), 3);
        assert!(grover_find(&l, 5, 4, |_| true).is_err());
        let l = Ledger::new(2);
        grover_find_costed(&l, 1, 16, 3, |_| true).unwrap();
        assert_eq!(l.count(TAG_STRUCTURAL), 8);
        assert_eq!(l.count(TAG_PREDICATE), 24);
    }

    #[test]
    fn equality_charges() {
        let l = Ledger::new(1);
        let a = OracleText::new(vec![1; 100], l.clone());
        let b = OracleText::new(vec![1; 100], l.clone());
        assert!(fragments_equal(&a, &b));
        assert_eq!(l.total(), 10);
        let c = OracleText::new(vec![1; 99], l.clone());
        assert!(!fragments_equal(&a, &c));
        assert_eq!(l.total(), 10);
    }

    #[test]
    fn mismatch_and_extensions() {
        let a = text("abca");
        let b = text("abba");
        assert_eq!(rightmost_mismatch(&a, &b).unwrap(), Some(3));
        assert_eq!(rightmost_mismatch(&a, &a.clone()).unwrap(), None);
        assert!(rightmost_mismatch(&a, &text("ab")).is_err());
        assert_eq!(oracle_lcp(&text("abcx"), &text("abcy")), 3);
        assert_eq!(oracle_lcs(&text("xbca"), &text("ybca")), 3);
        assert_eq!(oracle_lcp(&text(""), &text("a")), 0);
    }

    #[test]
    fn scoped_rows() {
        let l = Ledger::new(1);
        l.charge(TAG_READ, 2);
        l.set_scope("round1");
        l.charge(TAG_READ, 3);
        let snap = l.snapshot();
        assert_eq!(
            snap.rows(),
            vec![("read".to_string(), 2), ("round1/read".to_string(), 3)]
        );
        assert_eq!(snap.count(TAG_READ), 5);
        assert_eq!(snap.scope_total("round1"), 3);
    }
}
