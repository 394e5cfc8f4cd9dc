//! Finding and testing edit anchors inside a compressible window.
//!
//! Around a split position `x`, the window `X(i..j]` extends as far as the
//! LZ77 size of each side (the left side read backwards) stays within
//! `6k + 2`. When `ed(X, Y) ≤ k`, a pair `(x, y)` is an anchor of the whole
//! instance exactly when it is an anchor of the window instance, so both
//! operations only need the LZ factorizations of window fragments.

use super::lv::lz_edit_distance;
use super::script::EditScript;
use super::tokens::ceil_log2;
use crate::lz_core::{convert_to_lz77, gallop_max, lz77_greedy, Factorization};
use crate::lz_end_tau::{build, BuildConfig};
use crate::oracle_sim::OracleText;

/// Window parameters derived from a threshold `k` and the global length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowBounds {
    /// `6k + 2`: LZ size allowed on each side of the split.
    pub lz_bound: usize,
    /// Phrase count above which an LZ-End+τ build gives up:
    /// `8·(6k+2)·⌈log₂ n⌉²`.
    pub abort_above: usize,
}

impl WindowBounds {
    pub fn new(k: u64, n: usize) -> Self {
        let lz_bound = usize::try_from(k)
            .unwrap_or(usize::MAX)
            .saturating_mul(6)
            .saturating_add(2);
        let log = ceil_log2(n.max(2)) as usize;
        WindowBounds {
            lz_bound,
            abort_above: lz_bound.saturating_mul(8).saturating_mul(log * log),
        }
    }
}

/// Cap for the compressed edit distance computations.
fn cap_of(k: u64) -> usize {
    usize::try_from(k).unwrap_or(usize::MAX)
}

/// LZ factorization of an oracle fragment, or `None` when its size provably
/// exceeds what a window admits.
///
/// A fragment no longer than `6k + 2` is read symbol by symbol: its length
/// `ℓ` is at most `√((6k+2)·ℓ)`, within the query budget of an LZ build.
/// Longer fragments go through the LZ-End+τ builder with an abort cap.
pub fn retrieve_lz(o: &OracleText, wb: &WindowBounds) -> Option<Factorization> {
    if o.len() <= wb.lz_bound {
        let text: Vec<_> = (1..=o.len())
            .map(|i| o.read(i).expect("in range"))
            .collect();
        return Some(lz77_greedy(&text));
    }
    let cfg = BuildConfig {
        abort_above: Some(wb.abort_above),
        scope_rounds: false,
        ..BuildConfig::default()
    };
    build(o, &cfg).factorization
}

/// Whether `|LZ(o)| ≤ 6k + 2`. Free when the fragment is short enough.
pub fn lz_size_at_most(o: &OracleText, wb: &WindowBounds) -> bool {
    if o.len() <= wb.lz_bound {
        return true;
    }
    let cfg = BuildConfig {
        abort_above: Some(wb.abort_above),
        scope_rounds: false,
        ..BuildConfig::default()
    };
    match build(o, &cfg).factorization {
        None => false,
        Some(f) => convert_to_lz77(&f).expect("builder output is valid").len() <= wb.lz_bound,
    }
}

/// Extremal `(i, j)` with `i ∈ [0..x]` minimal such that
/// `|LZ(rev X(i..x])| ≤ 6k+2` and `j ∈ [x..|X|]` maximal such that
/// `|LZ(X(x..j])| ≤ 6k+2`.
pub fn compressible_window(ox: &OracleText, x: usize, wb: &WindowBounds) -> (usize, usize) {
    let n = ox.len();
    assert!(x <= n, "split {x} beyond length {n}");
    // LZ size is monotone under extension, and lengths up to 6k+2 always pass
    let left_known = x.min(wb.lz_bound);
    let left = left_known
        + gallop_max(x - left_known, |e| {
            let len = left_known + e;
            lz_size_at_most(&ox.fragment(x - len, x).expect("in range").reversed(), wb)
        });
    let right_known = (n - x).min(wb.lz_bound);
    let right = right_known
        + gallop_max(n - x - right_known, |e| {
            let len = right_known + e;
            lz_size_at_most(&ox.fragment(x, x + len).expect("in range"), wb)
        });
    (x - left, x + right)
}

/// The `Y` fragment paired with window `X(i..j]`: `Y(i..j+|Y|−|X|]`, clamped
/// into `[0..|Y|]`.
pub fn paired_range(i: usize, j: usize, x_len: usize, y_len: usize) -> (usize, usize) {
    let lo = i.min(y_len);
    let hi =
        (j as isize + y_len as isize - x_len as isize).clamp(lo as isize, y_len as isize) as usize;
    (lo, hi)
}

fn window_distance(
    ox: &OracleText,
    oy: &OracleText,
    (xl, xr): (usize, usize),
    (yl, yr): (usize, usize),
    wb: &WindowBounds,
    k: u64,
) -> Option<(usize, EditScript)> {
    let fx = retrieve_lz(&ox.fragment(xl, xr).expect("in range"), wb)?;
    let fy = retrieve_lz(&oy.fragment(yl, yr).expect("in range"), wb)?;
    lz_edit_distance(&fx, &fy, Some(cap_of(k))).expect("factorizations are valid")
}

/// A `y` such that `(x, y)` is a `k`-edit anchor of `X, Y`: an anchor
/// whenever `ed(X, Y) ≤ k`. Returns 0 when the window instance shows the
/// distance exceeds `k`.
pub fn find_anchor(ox: &OracleText, oy: &OracleText, k: u64, x: usize, n: usize) -> usize {
    let wb = WindowBounds::new(k, n);
    let (i, j) = compressible_window(ox, x, &wb);
    let (yi, yj) = paired_range(i, j, ox.len(), oy.len());
    match window_distance(ox, oy, (i, j), (yi, yj), &wb, k) {
        None => 0,
        Some((_, script)) => yi + script.y_at(x - i),
    }
}

/// Whether `(x, y)` is an edit anchor of `X, Y`; exact whenever
/// `ed(X, Y) ≤ k`, arbitrary otherwise.
pub fn is_anchor(
    ox: &OracleText,
    oy: &OracleText,
    k: u64,
    (x, y): (usize, usize),
    n: usize,
) -> bool {
    let wb = WindowBounds::new(k, n);
    let (i, j) = compressible_window(ox, x, &wb);
    let (yi, yj) = paired_range(i, j, ox.len(), oy.len());
    if y < yi || y > yj {
        return false;
    }
    let whole = window_distance(ox, oy, (i, j), (yi, yj), &wb, k);
    let left = window_distance(ox, oy, (i, x), (yi, y), &wb, k);
    let right = window_distance(ox, oy, (x, j), (y, yj), &wb, k);
    match (whole, left, right) {
        (Some((dw, _)), Some((dl, _)), Some((dr, _))) => dl + dr == dw,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle_sim::{Ledger, Sym};

    fn oracle(t: &[Sym]) -> OracleText {
        OracleText::new(t.to_vec(), Ledger::new(1))
    }

    #[test]
    fn unary_text_window_is_everything() {
        let t = vec![3 as Sym; 300];
        for x in [0, 1, 150, 300] {
            assert_eq!(
                compressible_window(&oracle(&t), x, &WindowBounds::new(0, 300)),
                (0, 300)
            );
        }
    }

    #[test]
    fn paired_range_clamps() {
        assert_eq!(paired_range(2, 8, 10, 12), (2, 10));
        assert_eq!(paired_range(5, 6, 10, 3), (3, 3));
        assert_eq!(paired_range(0, 10, 10, 4), (0, 4));
    }

    #[test]
    fn identical_strings_anchor_on_the_diagonal() {
        let t: Vec<Sym> = (0..40).map(|i| (i * 7 % 5) as Sym).collect();
        for x in 0..=40 {
            assert_eq!(find_anchor(&oracle(&t), &oracle(&t), 1, x, 40), x);
            assert!(is_anchor(&oracle(&t), &oracle(&t), 1, (x, x), 40));
        }
    }
}
