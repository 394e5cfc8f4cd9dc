//! Classical suffix-array machinery: construction by prefix doubling, Kasai
//! LCP, sparse-table range minima, and an occurrence index answering
//! leftmost / rightmost-before queries for text fragments.

use crate::oracle_sim::Sym;

/// Suffix array of `s` (0-based start positions) by prefix doubling.
pub fn suffix_array(s: &[Sym]) -> Vec<usize> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = {
        let mut sorted: Vec<Sym> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        s.iter().map(|c| sorted.binary_search(c).unwrap()).collect()
    };
    let mut tmp = vec![0usize; n];
    let mut k = 1usize;
    loop {
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 || k >= n {
            break;
        }
        k *= 2;
    }
    sa
}

pub fn inverse(sa: &[usize]) -> Vec<usize> {
    let mut isa = vec![0usize; sa.len()];
    for (r, &p) in sa.iter().enumerate() {
        isa[p] = r;
    }
    isa
}

/// Kasai: `lcp[r]` = LCP of suffixes `sa[r-1]` and `sa[r]`; `lcp[0] = 0`.
pub fn lcp_array(s: &[Sym], sa: &[usize], isa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = isa[i];
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1];
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Range-minimum sparse table.
#[derive(Debug, Clone)]
pub struct SparseMin {
    levels: Vec<Vec<usize>>,
}

impl SparseMin {
    pub fn new(values: &[usize]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut w = 1usize;
        while 2 * w <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<usize> = (0..=values.len() - 2 * w)
                .map(|i| prev[i].min(prev[i + w]))
                .collect();
            levels.push(next);
            w *= 2;
        }
        SparseMin { levels }
    }

    /// Minimum over `lo..=hi`.
    pub fn min(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        self.levels[k][lo].min(self.levels[k][hi + 1 - (1 << k)])
    }
}

/// Segment tree of sorted SA values for predecessor queries on SA ranges.
#[derive(Debug, Clone)]
struct MergeSortTree {
    size: usize,
    nodes: Vec<Vec<usize>>,
}

impl MergeSortTree {
    fn new(values: &[usize]) -> Self {
        let size = values.len().next_power_of_two().max(1);
        let mut nodes = vec![Vec::new(); 2 * size];
        for (i, &v) in values.iter().enumerate() {
            nodes[size + i] = vec![v];
        }
        for i in (1..size).rev() {
            let (a, b) = (&nodes[2 * i], &nodes[2 * i + 1]);
            let mut m = Vec::with_capacity(a.len() + b.len());
            let (mut x, mut y) = (0, 0);
            while x < a.len() || y < b.len() {
                if y == b.len() || (x < a.len() && a[x] <= b[y]) {
                    m.push(a[x]);
                    x += 1;
                } else {
                    m.push(b[y]);
                    y += 1;
                }
            }
            nodes[i] = m;
        }
        MergeSortTree { size, nodes }
    }

    /// Largest value `< bound` among positions `lo..=hi`.
    fn max_below(&self, lo: usize, hi: usize, bound: usize) -> Option<usize> {
        let pick = |node: &Vec<usize>| {
            let k = node.partition_point(|&v| v < bound);
            (k > 0).then(|| node[k - 1])
        };
        let (mut l, mut r) = (lo + self.size, hi + self.size + 1);
        let mut best: Option<usize> = None;
        while l < r {
            if l & 1 == 1 {
                best = best.max(pick(&self.nodes[l]));
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.max(pick(&self.nodes[r]));
            }
            l >>= 1;
            r >>= 1;
        }
        best
    }
}

/// Suffix array, inverse, LCP and range structures over a fixed text.
/// Public positions are 1-based.
#[derive(Debug, Clone)]
pub struct OccurrenceIndex {
    n: usize,
    sa: Vec<usize>,
    isa: Vec<usize>,
    lcp_min: SparseMin,
    sa_min: SparseMin,
    sa_tree: MergeSortTree,
}

impl OccurrenceIndex {
    pub fn new(text: &[Sym]) -> Self {
        let sa = suffix_array(text);
        let isa = inverse(&sa);
        let lcp = lcp_array(text, &sa, &isa);
        OccurrenceIndex {
            n: text.len(),
            lcp_min: SparseMin::new(&lcp),
            sa_min: SparseMin::new(&sa),
            sa_tree: MergeSortTree::new(&sa),
            sa,
            isa,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// 0-based suffix array.
    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    /// SA rank interval of suffixes starting with the fragment at 0-based
    /// `pos` of length `len ≥ 1`.
    fn interval(&self, pos: usize, len: usize) -> (usize, usize) {
        let r = self.isa[pos];
        // extend left while lcp[l] >= len
        let (mut lo, mut hi) = (0usize, r);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.lcp_min.min(mid + 1, r) >= len {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let left = lo;
        let (mut lo, mut hi) = (r, self.n - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.lcp_min.min(r + 1, mid) >= len {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        (left, lo)
    }

    /// Leftmost 1-based start of an occurrence of `X[pos..pos+len)` (1-based
    /// `pos`, `len ≥ 1`).
    pub fn leftmost_occurrence(&self, pos: usize, len: usize) -> usize {
        let (l, r) = self.interval(pos - 1, len);
        self.sa_min.min(l, r) + 1
    }

    /// Rightmost 1-based start `< bound` of an occurrence of `X[pos..pos+len)`.
    pub fn rightmost_before(&self, pos: usize, len: usize, bound: usize) -> Option<usize> {
        let (l, r) = self.interval(pos - 1, len);
        self.sa_tree
            .max_below(l, r, bound.saturating_sub(1))
            .map(|p| p + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sa(s: &[Sym]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..s.len()).collect();
        sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
        sa
    }

    #[test]
    fn doubling_matches_naive_sort() {
        let mut seed = 12345u64;
        for n in 0..60 {
            for sigma in [1u32, 2, 3, 7] {
                let s: Vec<Sym> = (0..n)
                    .map(|_| {
                        seed = seed
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        ((seed >> 33) % sigma as u64) as Sym
                    })
                    .collect();
                assert_eq!(suffix_array(&s), naive_sa(&s));
            }
        }
    }

    #[test]
    fn leftmost_and_rightmost() {
        let s: Vec<Sym> = b"abcabc".iter().map(|&b| b as Sym).collect();
        let idx = OccurrenceIndex::new(&s);
        assert_eq!(idx.leftmost_occurrence(4, 3), 1);
        assert_eq!(idx.leftmost_occurrence(5, 1), 2);
        assert_eq!(idx.rightmost_before(4, 1, 4), Some(1));
        assert_eq!(idx.rightmost_before(5, 2, 5), Some(2));
        assert_eq!(idx.rightmost_before(1, 3, 1), None);
    }
}
