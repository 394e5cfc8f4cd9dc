//! Sorted sequence with cheap middle insertion (blocked list), ordered by a
//! caller-supplied comparator. Used for co-lex sorted prefix pools.

use std::cmp::Ordering;

const BLOCK: usize = 128;

#[derive(Debug, Clone, Default)]
pub struct SortedBlocks {
    blocks: Vec<Vec<usize>>,
    len: usize,
}

impl SortedBlocks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Inserts `v` at its sorted place. Returns `false` (and leaves the
    /// sequence unchanged) if an element comparing equal is present.
    pub fn insert_by(&mut self, v: usize, mut cmp: impl FnMut(usize, usize) -> Ordering) -> bool {
        if self.blocks.is_empty() {
            self.blocks.push(vec![v]);
            self.len = 1;
            return true;
        }
        // first block whose last element is >= v
        let b = self
            .blocks
            .partition_point(|blk| cmp(*blk.last().unwrap(), v) == Ordering::Less)
            .min(self.blocks.len() - 1);
        let blk = &mut self.blocks[b];
        let mut dup = false;
        let at = blk.partition_point(|&x| match cmp(x, v) {
            Ordering::Less => true,
            Ordering::Equal => {
                dup = true;
                false
            }
            Ordering::Greater => false,
        });
        if dup || (at < blk.len() && cmp(blk[at], v) == Ordering::Equal) {
            return false;
        }
        blk.insert(at, v);
        self.len += 1;
        if blk.len() > 2 * BLOCK {
            let tail = blk.split_off(BLOCK);
            self.blocks.insert(b + 1, tail);
        }
        true
    }

    /// Element of the given 0-based rank.
    pub fn get(&self, mut rank: usize) -> usize {
        for blk in &self.blocks {
            if rank < blk.len() {
                return blk[rank];
            }
            rank -= blk.len();
        }
        panic!("rank out of range");
    }

    /// Number of leading elements satisfying `pred` (which must be monotone:
    /// true then false).
    pub fn partition_point(&self, mut pred: impl FnMut(usize) -> bool) -> usize {
        let mut before = 0usize;
        for blk in &self.blocks {
            if pred(*blk.last().unwrap()) {
                before += blk.len();
            } else {
                return before + blk.partition_point(|&x| pred(x));
            }
        }
        before
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().flat_map(|b| b.iter().copied())
    }

    /// Elements of ranks `lo..hi`.
    pub fn range(&self, lo: usize, hi: usize) -> impl Iterator<Item = usize> + '_ {
        self.iter().skip(lo).take(hi.saturating_sub(lo))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order_and_rejects_duplicates() {
        let mut s = SortedBlocks::new();
        let mut x = 7usize;
        let mut reference = Vec::new();
        for _ in 0..2000 {
            x = (x * 7919 + 13) % 10007;
            let fresh = !reference.contains(&x);
            assert_eq!(s.insert_by(x, |a, b| a.cmp(&b)), fresh);
            if fresh {
                reference.push(x);
            }
        }
        reference.sort();
        assert_eq!(s.iter().collect::<Vec<_>>(), reference);
        assert_eq!(s.len(), reference.len());
        assert_eq!(s.get(100), reference[100]);
        assert_eq!(
            s.partition_point(|v| v < 5000),
            reference.partition_point(|&v| v < 5000)
        );
    }
}
